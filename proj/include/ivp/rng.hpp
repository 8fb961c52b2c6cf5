#pragma once

#include <cstdint>

#include "ivp/bigfloat.hpp"

namespace ivp {

/// splitmix64: deterministic across platforms, cheap to fork per work item.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  /// Independent stream for item `k` of a seeded run.
  static Rng fork(std::uint64_t seed, std::uint64_t k) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ull * (k + 1)));
    r.next();
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0,1) as an exact 53-bit dyadic, never zero.
  Real uniform() {
    std::uint64_t u = next() >> 11;
    if (u == 0) u = 1;
    return Real(static_cast<double>(u)) * Real::pow2(-53);
  }

  /// Standard complex Gaussian scaled by `scale` (Box-Muller at working
  /// precision, deterministic through MPFR's correct rounding).
  Complex gaussian(double scale) {
    Real u1 = uniform();
    Real u2 = uniform();
    Real r = (Real(-2) * u1.log()).sqrt() * Real(scale);
    Real theta = Real(2) * Real::pi() * u2;
    return Complex(r * cos(theta), r * sin(theta));
  }

  /// Small random rational with numerator in [-bound, bound] \ {0} and
  /// denominator in [1, den_bound].
  Rat small_rational(long bound = 9, long den_bound = 4) {
    long num = static_cast<long>(next() % (2 * bound)) - bound;
    if (num >= 0) ++num;
    long den = static_cast<long>(next() % den_bound) + 1;
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
};

}  // namespace ivp
