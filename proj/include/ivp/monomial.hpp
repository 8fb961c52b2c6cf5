#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <vector>

#include "ivp/error.hpp"

namespace ivp {

/// Hard cap on ring size. Largest context in the catalog is the 3-point Toda
/// phase space (6 variables) plus an adjoined eigenvalue symbol and a couple
/// of invariant symbols for elimination experiments.
inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector with cached total degree. Fixed-width so comparisons and
/// hashing touch one cache line.
struct Monomial {
  std::uint32_t total = 0;
  std::array<std::uint16_t, kMaxVars> e{};

  static Monomial one() { return Monomial{}; }

  std::uint16_t operator[](std::size_t i) const { return e[i]; }

  void set(std::size_t i, std::uint32_t v) {
    total += v - e[i];
    if (v > 0xffffu) throw Error("monomial exponent overflow");
    e[i] = static_cast<std::uint16_t>(v);
  }

  bool is_one() const { return total == 0; }

  bool operator==(const Monomial& o) const { return total == o.total && e == o.e; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.total = a.total + b.total;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      std::uint32_t s = std::uint32_t(a.e[i]) + b.e[i];
      if (s > 0xffffu) throw Error("monomial exponent overflow");
      r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }

  /// Componentwise divisibility.
  bool divides(const Monomial& m) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }

  /// Quotient; precondition: divides(m) in the caller's direction.
  static Monomial quotient(const Monomial& num, const Monomial& den) {
    Monomial r;
    r.total = num.total - den.total;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = num.e[i] - den.e[i];
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::uint32_t t = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
      t += r.e[i];
    }
    r.total = t;
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ m.total;
    for (std::size_t i = 0; i < kMaxVars; i += 4) {
      std::uint64_t w;
      static_assert(sizeof(std::uint16_t) * 4 == sizeof(w));
      std::memcpy(&w, &m.e[i], sizeof(w));
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Monomial order: graded reverse lexicographic (default) or lexicographic,
/// over a permutation of the active variables. Total, multiplicative, with 1
/// as the least element.
struct TermOrder {
  enum class Kind { Grevlex, Lex };
  Kind kind = Kind::Grevlex;
  /// perm[i] = variable index that sits at significance position i
  /// (position 0 most significant). Empty means the natural order 0..n-1.
  std::vector<std::uint32_t> perm;

  static TermOrder grevlex() { return TermOrder{}; }
  static TermOrder lex() { return TermOrder{Kind::Lex, {}}; }
  static TermOrder lex_perm(std::vector<std::uint32_t> p) { return TermOrder{Kind::Lex, std::move(p)}; }

  /// Three-way compare under this order: >0 iff a > b.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    if (kind == Kind::Grevlex) {
      if (a.total != b.total) return a.total > b.total ? 1 : -1;
      if (perm.empty()) {
        for (std::size_t i = nvars; i-- > 0;) {
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
        return 0;
      }
      for (std::size_t i = nvars; i-- > 0;) {
        std::uint32_t v = perm[i];
        if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? 1 : -1;
      }
      return 0;
    }
    // Lex.
    for (std::size_t i = 0; i < nvars; ++i) {
      std::uint32_t v = perm.empty() ? std::uint32_t(i) : perm[i];
      if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? 1 : -1;
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    return compare(a, b, nvars) < 0;
  }
};

}  // namespace ivp
