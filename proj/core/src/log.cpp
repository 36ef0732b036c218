#include "tabsel/log.hpp"

#include <iostream>
#include <mutex>

namespace tabsel {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& sink() {
  static LogSink s = [](LogLevel level, std::string_view message) {
    if (level < LogLevel::kWarning) return;
    std::cerr << (level == LogLevel::kError ? "error: " : "warning: ") << message << '\n';
  };
  return s;
}

}  // namespace

void set_log_sink(LogSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void log(LogLevel level, std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(level, message);
}

}  // namespace tabsel
