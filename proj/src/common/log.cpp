#include "cyberops/common/log.hpp"

#include <iostream>
#include <mutex>

namespace cyberops {
namespace {

std::mutex g_mutex;
LogLevel g_level = LogLevel::Info;
LogSink g_sink;

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    case LogLevel::Error: return "error";
  }
  return "?";
}

}  // namespace

void set_log_level(LogLevel level) {
  std::lock_guard lock(g_mutex);
  g_level = level;
}

LogLevel log_level() {
  std::lock_guard lock(g_mutex);
  return g_level;
}

void set_log_sink(LogSink sink) {
  std::lock_guard lock(g_mutex);
  g_sink = std::move(sink);
}

void log_message(LogLevel level, const std::string& message) {
  std::lock_guard lock(g_mutex);
  if (level < g_level) return;
  if (g_sink) {
    g_sink(level, message);
    return;
  }
  std::cerr << "[" << level_tag(level) << "] " << message << "\n";
}

}  // namespace cyberops
