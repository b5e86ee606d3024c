#pragma once
#include <cstdlib>
#include <iostream>
#include <string>

namespace ftspan {

// Opt-in stderr diagnostics, enabled by setting FTSPAN_LOG to anything
// non-empty. Kept deliberately dumb: no levels, no timestamps, so output is
// stable across runs and safe to diff.
inline bool log_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("FTSPAN_LOG");
    return v != nullptr && v[0] != '\0';
  }();
  return on;
}

inline void log_line(const std::string& s) {
  if (log_enabled()) std::cerr << "[ftspan] " << s << "\n";
}

}  // namespace ftspan
