#pragma once

#include <stdexcept>
#include <string>

namespace migrana {

// Input errors are caller mistakes (bad files, bad config, degenerate
// networks); Solve errors are failures of an otherwise well-posed
// computation (non-convergence). The CLI maps them to exit codes 1 and 2.
enum class ErrorKind { Input, Solve };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error input_error(const std::string& message) {
    return Error(ErrorKind::Input, message);
}

inline Error solve_error(const std::string& message) {
    return Error(ErrorKind::Solve, message);
}

}  // namespace migrana
