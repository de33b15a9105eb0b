#include "revsum/log.hpp"

namespace revsum {

namespace {
LogLevel g_level = LogLevel::info;

const char* level_tag(LogLevel level) {
    switch (level) {
        case LogLevel::debug: return "debug";
        case LogLevel::info: return "info";
        case LogLevel::warn: return "warn";
        case LogLevel::error: return "error";
    }
    return "?";
}
}  // namespace

void set_log_level(LogLevel level) { g_level = level; }

LogLevel log_level() { return g_level; }

void log_message(LogLevel level, const std::string& text) {
    if (static_cast<int>(level) < static_cast<int>(g_level)) return;
    std::fprintf(stderr, "[%s] %s\n", level_tag(level), text.c_str());
}

}  // namespace revsum
