#pragma once

#include "ivp/polynomial.hpp"

namespace ivp {

/// Greatest common divisor over Q[x...], normalized monic under the grevlex
/// natural order; gcd(p, 0) is p normalized, gcd(0, 0) is 0.
///
/// Strategy: per-variable degree bounds are probed through univariate images
/// modulo word-size primes; trivial gcds exit immediately, nontrivial ones are
/// interpolated densely from modular univariate images and certified by exact
/// trial division (with a subresultant PRS fallback).
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// Subresultant polynomial remainder sequence gcd on a chosen main variable,
/// recursing into coefficient contents. Predictable but slow on large inputs;
/// kept as the fallback path and as an independent cross-check for tests.
Polynomial poly_gcd_prs(const Polynomial& a, const Polynomial& b);

/// lcm(a, b) = a*b / gcd, monic.
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);

}  // namespace ivp
