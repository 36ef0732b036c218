#pragma once

#include <functional>
#include <string_view>

namespace tabsel {

enum class LogLevel { kDebug, kInfo, kWarning, kError };

using LogSink = std::function<void(LogLevel, std::string_view)>;

// Replaces the process-wide sink. The default writes warnings and errors to
// stderr; passing an empty function silences the library.
void set_log_sink(LogSink sink);

void log(LogLevel level, std::string_view message);

}  // namespace tabsel
