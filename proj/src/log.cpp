#include "migrana/log.hpp"

#include <cstdlib>

namespace migrana::log {

static Level parse_level(const char* text) {
    if (!text) return Level::Warn;
    std::string value(text);
    if (value == "debug") return Level::Debug;
    if (value == "info") return Level::Info;
    if (value == "warn") return Level::Warn;
    if (value == "error") return Level::Error;
    return Level::Warn;
}

Level threshold() {
    static const Level level = parse_level(std::getenv("MIGRANA_LOG"));
    return level;
}

void write(Level level, const std::string& message) {
    static const char* names[] = {"debug", "info", "warn", "error"};
    std::cerr << "[" << names[static_cast<int>(level)] << "] " << message << "\n";
}

}  // namespace migrana::log
