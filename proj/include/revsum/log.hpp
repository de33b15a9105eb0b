#pragma once

#include <cstdio>
#include <string>

namespace revsum {

// All diagnostics go to stderr; stdout is reserved for data.
enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

void set_log_level(LogLevel level);
LogLevel log_level();

void log_message(LogLevel level, const std::string& text);

inline void log_debug(const std::string& text) { log_message(LogLevel::debug, text); }
inline void log_info(const std::string& text) { log_message(LogLevel::info, text); }
inline void log_warn(const std::string& text) { log_message(LogLevel::warn, text); }
inline void log_error(const std::string& text) { log_message(LogLevel::error, text); }

}  // namespace revsum
