#pragma once

#include <gmpxx.h>

#include <string>

#include "ivp/error.hpp"

namespace ivp {

/// Exact arbitrary-precision rational. All polynomial coefficients and all
/// exact orbit arithmetic use this type; floating point never enters the ring.
using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat& q) { return mpq_sgn(q.get_mpq_t()) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }

/// Parses "p", "-p", or "p/q" with arbitrary-precision parts.
Rat parse_rat(const std::string& text);

/// Canonical "p" or "p/q" form.
std::string rat_to_string(const Rat& q);

}  // namespace ivp
