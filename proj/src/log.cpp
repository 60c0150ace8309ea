#include "turnpike/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace turnpike {

static LogLevel parse_level() {
  const char* env = std::getenv("TURNPIKE_LOG");
  if (env == nullptr) return LogLevel::warn;
  std::string s(env);
  if (s == "error") return LogLevel::error;
  if (s == "warn" || s == "warning") return LogLevel::warn;
  if (s == "info") return LogLevel::info;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::warn;
}

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_message(LogLevel level, std::string_view message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[turnpike %s] %.*s\n", names[static_cast<int>(level)],
               static_cast<int>(message.size()), message.data());
}

}  // namespace turnpike
