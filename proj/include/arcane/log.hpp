#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

// Minimal stderr logger. Verbosity comes from the ARCANE_LOG environment
// variable: off, error, warn (default), info, debug.

namespace arcane::logging {

enum class Level { kOff = 0, kError = 1, kWarn = 2, kInfo = 3, kDebug = 4 };

inline Level threshold() {
  static const Level lvl = [] {
    const char* env = std::getenv("ARCANE_LOG");
    if (env == nullptr) return Level::kWarn;
    const std::string v(env);
    if (v == "off" || v == "none" || v == "0") return Level::kOff;
    if (v == "error") return Level::kError;
    if (v == "warn" || v == "warning") return Level::kWarn;
    if (v == "info") return Level::kInfo;
    if (v == "debug") return Level::kDebug;
    return Level::kWarn;
  }();
  return lvl;
}

inline void emit(Level lvl, const char* tag, const std::string& msg) {
  if (static_cast<int>(lvl) > static_cast<int>(threshold())) return;
  static std::mutex mu;
  const std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[arcane] " << tag << ": " << msg << '\n';
}

inline void error(const std::string& msg) { emit(Level::kError, "error", msg); }
inline void warn(const std::string& msg) { emit(Level::kWarn, "warn", msg); }
inline void info(const std::string& msg) { emit(Level::kInfo, "info", msg); }
inline void debug(const std::string& msg) { emit(Level::kDebug, "debug", msg); }

}  // namespace arcane::logging
