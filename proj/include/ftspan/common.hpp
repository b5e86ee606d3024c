#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ftspan {

// Bad input or bad run configuration. CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant of the construction failed. This is a bug, never a
// data problem. CLI maps this to exit code 3.
struct construction_error : std::runtime_error {
  explicit construction_error(const std::string& msg) : std::runtime_error(msg) {}
};

// All threshold comparisons against scale-derived bounds (net radii, friend
// radii, edge-weight caps) go through this relative tolerance.
inline constexpr double kRelTol = 1e-9;

// a <= b, allowing b a relative slack of kRelTol. b is a nonnegative scale.
inline bool le_tol(double a, double b) { return a <= b + b * kRelTol; }

// Deterministic 64-bit generator (splitmix64). We do not use std
// distributions anywhere: their output is implementation-defined and the
// artifact promises byte-identical runs for a fixed seed.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed + 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double real() { return double(next() >> 11) * 0x1.0p-53; }
  // uniform integer in [0, m)
  uint64_t below(uint64_t m) { return next() % m; }
};

}  // namespace ftspan
