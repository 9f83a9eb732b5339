#pragma once

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

// Stderr diagnostics, gated by the LOCALE_MERGE_LOG environment variable
// (error | info | debug, default error).

namespace locmerge {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("LOCALE_MERGE_LOG");
        if (!env) return LogLevel::Error;
        const std::string value(env);
        if (value == "debug") return LogLevel::Debug;
        if (value == "info") return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

template <typename... Parts>
inline void log_msg(LogLevel level, Parts&&... parts) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    std::ostringstream os;
    (os << ... << parts);
    const char* tag = level == LogLevel::Error ? "error" : level == LogLevel::Info ? "info" : "debug";
    std::fprintf(stderr, "[locmerge %s] %s\n", tag, os.str().c_str());
}

} // namespace locmerge
