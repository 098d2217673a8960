#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace l1lab {

using cplx = std::complex<double>;

inline constexpr double kTau = 2.0 * std::numbers::pi;

// Argument outside a documented domain (bad N, non-fundamental d, ...).
class DomainError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured budget (sieve memory, character-modulus cap, ...) was exceeded.
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// e(x) = exp(2 pi i x), argument reduced mod 1 first to avoid large-angle error.
inline cplx unit_phase(double x) {
  const double r = x - std::floor(x);
  return {std::cos(kTau * r), std::sin(kTau * r)};
}

// Deterministic 64-bit generator; all seeded randomness in the tool goes
// through this so experiment runs are replayable.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

  int next_sign() { return (next() >> 63) ? -1 : 1; }
};

// Stateless hash of (seed, key); used for per-prime random values so the
// value at p does not depend on evaluation order.
inline uint64_t mix64(uint64_t seed, uint64_t key) {
  SplitMix64 g(seed ^ (key * 0xd1342543de82ef95ull));
  g.next();
  return g.next();
}

}  // namespace l1lab
