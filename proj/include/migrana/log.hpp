#pragma once

#include <iostream>
#include <sstream>
#include <string>

namespace migrana::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3 };

// Level comes from the MIGRANA_LOG environment variable (debug|info|warn|error),
// default warn. Resolved once per process.
Level threshold();

void write(Level level, const std::string& message);

template <typename... Args>
void emit(Level level, Args&&... args) {
    if (level < threshold()) return;
    std::ostringstream out;
    (out << ... << args);
    write(level, out.str());
}

template <typename... Args> void debug(Args&&... args) { emit(Level::Debug, std::forward<Args>(args)...); }
template <typename... Args> void info(Args&&... args)  { emit(Level::Info, std::forward<Args>(args)...); }
template <typename... Args> void warn(Args&&... args)  { emit(Level::Warn, std::forward<Args>(args)...); }
template <typename... Args> void error(Args&&... args) { emit(Level::Error, std::forward<Args>(args)...); }

}  // namespace migrana::log
