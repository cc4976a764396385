#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ffr {

// Thrown when a floating-point spectral quantity fails to round back to an
// integer within the hard residual gate (1e-3). Signals that q^d has outgrown
// double precision for the requested computation, never silently accepted.
class numerical_failure : public std::runtime_error {
 public:
  explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kIntegerResidualGate = 1e-3;

// Grid budget: q^d for any dense enumeration is capped by FFR_MAX_GRID
// (default 10^6).
inline std::uint64_t max_grid_cells() {
  if (const char* env = std::getenv("FFR_MAX_GRID")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::uint64_t>(v);
  }
  return 1000000;
}

// SplitMix64. Fully specified here so that seeded experiments replay
// byte-for-byte on any platform; std::uniform_int_distribution is not
// portable across standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n) by rejection; n must be positive
  std::uint64_t bounded(std::uint64_t n) {
    std::uint64_t threshold = -n % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

// stable seed derivation for trial replay
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (0x632be59bd9b4e019ULL * (b + 1)));
  return g.next();
}

}  // namespace ffr
