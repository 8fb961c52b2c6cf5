#include "ivp/gcd.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ivp {

namespace {

// ---------------------------------------------------------------------------
// Word-size prime field

struct Zp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  Zp f{n};
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = f.pow(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = f.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
  // ~61-bit primes keep mulmod inside __int128 comfortably.
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t(1) << 60, (std::uint64_t(1) << 61) - 1);
  while (true) {
    std::uint64_t n = dist(rng) | 1;
    if (miller_rabin(n)) return n;
  }
}

// ---------------------------------------------------------------------------
// Integer-coefficient views

struct ZTerm {
  Monomial m;
  const Int* c;
};

std::vector<ZTerm> zview(const Polynomial& p) {
  std::vector<ZTerm> v;
  v.reserve(p.term_count());
  for (const auto& t : p.terms()) v.push_back({t.m, &t.c.get_num()});
  return v;
}

std::uint64_t mod_of(const Int& z, const Zp& f) {
  std::uint64_t r = mpz_fdiv_ui(z.get_mpz_t(), f.p);
  return r;
}

// Dense univariate over Zp, ascending coefficients.
using Uni = std::vector<std::uint64_t>;

void uni_trim(Uni& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

long uni_deg(const Uni& u) { return static_cast<long>(u.size()) - 1; }

Uni uni_gcd(Uni a, Uni b, const Zp& f) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    // a mod b
    std::uint64_t lb_inv = f.inv(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = f.mul(a.back(), lb_inv);
      if (q != 0) {
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = f.sub(a[off + i], f.mul(q, b[i]));
      } else {
        a.back() = 0;
      }
      uni_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    std::uint64_t inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
  }
  return a;  // monic or empty
}

// Evaluates the integer poly at `point` (one slot per variable; the slot of
// `keep` is ignored) producing a univariate in `keep`. Power tables per var.
struct Evaluator {
  const Zp& f;
  std::vector<std::vector<std::uint64_t>> pows;  // [var][exp]

  Evaluator(const Zp& field, const Polynomial& a, const Polynomial& b,
            const std::vector<std::uint64_t>& point)
      : f(field) {
    std::size_t nv = a.nvars();
    pows.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      long d = std::max(a.degree(v), b.degree(v));
      if (d < 0) d = 0;
      pows[v].resize(d + 1);
      pows[v][0] = 1;
      for (long k = 1; k <= d; ++k) pows[v][k] = f.mul(pows[v][k - 1], point[v] % f.p);
    }
  }

  Uni univariate(const std::vector<ZTerm>& terms, std::size_t keep, std::size_t nv) const {
    Uni u;
    for (const auto& t : terms) {
      std::uint64_t c = mod_of(*t.c, f);
      if (c == 0) continue;
      for (std::size_t v = 0; v < nv; ++v) {
        if (v == keep || t.m[v] == 0) continue;
        c = f.mul(c, pows[v][t.m[v]]);
      }
      std::size_t e = t.m[keep];
      if (u.size() <= e) u.resize(e + 1, 0);
      u[e] = f.add(u[e], c);
    }
    uni_trim(u);
    return u;
  }
};

// ---------------------------------------------------------------------------
// Sparse multivariate over Zp keyed by monomial (small: interpolation results)

struct MonoLess {
  std::size_t nv;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return TermOrder::grevlex().compare(a, b, nv) < 0;
  }
};

using ZpSparse = std::map<Monomial, std::uint64_t, MonoLess>;

ZpSparse zs_make(std::size_t nv) { return ZpSparse(MonoLess{nv}); }

void zs_add_scaled(ZpSparse& dst, const ZpSparse& src, std::uint64_t s, const Zp& f) {
  for (const auto& [m, c] : src) {
    std::uint64_t v = f.add(dst.count(m) ? dst[m] : 0, f.mul(c, s));
    if (v == 0)
      dst.erase(m);
    else
      dst[m] = v;
  }
}

// Evaluates variable v at alpha, collapsing its exponent.
ZpSparse zs_eval_var(const ZpSparse& p, std::size_t v, std::uint64_t alpha, const Zp& f, std::size_t nv) {
  ZpSparse r = zs_make(nv);
  for (const auto& [m, c] : p) {
    std::uint64_t val = f.mul(c, f.pow(alpha, m[v]));
    Monomial mm = m;
    mm.set(v, 0);
    std::uint64_t acc = f.add(r.count(mm) ? r[mm] : 0, val);
    if (acc == 0)
      r.erase(mm);
    else
      r[mm] = acc;
  }
  return r;
}

// p *= (x_v - alpha)
ZpSparse zs_mul_linear(const ZpSparse& p, std::size_t v, std::uint64_t alpha, const Zp& f, std::size_t nv) {
  ZpSparse r = zs_make(nv);
  for (const auto& [m, c] : p) {
    Monomial up = m;
    up.set(v, m[v] + 1);
    std::uint64_t a = f.add(r.count(up) ? r[up] : 0, c);
    if (a == 0)
      r.erase(up);
    else
      r[up] = a;
    std::uint64_t neg = f.mul(c, f.sub(0, alpha % f.p));
    std::uint64_t b = f.add(r.count(m) ? r[m] : 0, neg);
    if (b == 0)
      r.erase(m);
    else
      r[m] = b;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Degree-bound probes

struct Probe {
  std::vector<long> bound;   // per variable, upper bound for deg_v(gcd) (whp)
  bool trivial() const {
    for (long b : bound)
      if (b > 0) return false;
    return true;
  }
};

// One univariate image gcd degree per variable, repeated `rounds` times with
// independent primes/points; the minimum over rounds is kept. Rounds where the
// image loses leading degree are redrawn.
Probe probe_bounds(const Polynomial& A, const Polynomial& B, std::mt19937_64& rng, int rounds = 3) {
  std::size_t nv = A.nvars();
  auto at = zview(A);
  auto bt = zview(B);
  Probe pr;
  pr.bound.assign(nv, 0);
  std::vector<bool> common(nv);
  for (std::size_t v = 0; v < nv; ++v) common[v] = A.degree(v) > 0 && B.degree(v) > 0;

  for (std::size_t v = 0; v < nv; ++v) {
    if (!common[v]) continue;
    long best = std::min(A.degree(v), B.degree(v));
    for (int round = 0; round < rounds; ++round) {
      Zp f{random_prime(rng)};
      long got = -1;
      for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<std::uint64_t> point(nv);
        for (auto& x : point) x = rng() % (f.p - 2) + 1;
        Evaluator ev(f, A, B, point);
        Uni ua = ev.univariate(at, v, nv);
        Uni ub = ev.univariate(bt, v, nv);
        if (uni_deg(ua) != A.degree(v) || uni_deg(ub) != B.degree(v)) continue;  // lc vanished
        Uni g = uni_gcd(std::move(ua), std::move(ub), f);
        got = uni_deg(g);
        break;
      }
      if (got >= 0) best = std::min(best, got);
    }
    pr.bound[v] = std::max<long>(best, 0);
  }
  return pr;
}

// ---------------------------------------------------------------------------
// Monomial content helpers

Monomial min_exponents(const Polynomial& p) {
  Monomial m;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (first) {
      m = t.m;
      first = false;
      continue;
    }
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (t.m[v] < m.e[v]) m.set(v, t.m[v]);
  }
  return m;
}

Polynomial divide_monomial(const Polynomial& p, const Monomial& m) {
  if (m.is_one()) return p;
  std::vector<Term> ts;
  ts.reserve(p.term_count());
  for (const auto& t : p.terms()) ts.push_back({Monomial::quotient(t.m, m), t.c});
  return Polynomial::from_terms(p.ctx(), std::move(ts));
}

Polynomial lc_in_var(const Polynomial& p, std::size_t v) {
  long d = p.degree(v);
  std::vector<Term> ts;
  for (const auto& t : p.terms()) {
    if (t.m[v] == d) {
      Term s = t;
      s.m.set(v, 0);
      ts.push_back(std::move(s));
    }
  }
  return Polynomial::from_terms(p.ctx(), std::move(ts));
}

// ---------------------------------------------------------------------------
// Tensor-grid modular interpolation of ghat = gamma * G / lc(G)

struct InterpFail {};     // unlucky point/prime; retry
struct DegreeRestart {    // images revealed a smaller main-variable degree
  long new_bound;
};

struct InterpJob {
  const Polynomial& A;
  const Polynomial& B;
  std::vector<ZTerm> at, bt;
  std::size_t main;
  long main_bound;
  const Polynomial& gamma;                 // lc of A in main var
  std::vector<ZTerm> gt;
  std::vector<std::size_t> grid_vars;      // interpolated variables
  std::vector<long> grid_count;            // points per grid var
  std::size_t nv;
  Zp f{0};
  std::mt19937_64* rng = nullptr;

  std::vector<std::uint64_t> assignment;   // current point, one slot per var

  ZpSparse image_at_point() {
    for (int attempt = 0; attempt < 24; ++attempt) {
      Evaluator ev(f, A, B, assignment);
      Uni ua = ev.univariate(at, main, nv);
      Uni ub = ev.univariate(bt, main, nv);
      if (uni_deg(ua) != A.degree(main) || uni_deg(ub) != B.degree(main)) {
        redraw_fixed();
        continue;
      }
      Uni g = uni_gcd(std::move(ua), std::move(ub), f);
      long dg = uni_deg(g);
      if (dg > main_bound) {
        redraw_fixed();
        continue;  // unlucky evaluation picked up extra factors
      }
      if (dg < main_bound) throw DegreeRestart{dg};
      // Scale by gamma(point).
      Uni gv = ev.univariate(gt, main, nv);  // gamma is main-free: degree 0
      std::uint64_t scale = gv.empty() ? 0 : gv[0];
      if (scale == 0) {
        redraw_fixed();
        continue;
      }
      ZpSparse img = zs_make(nv);
      for (std::size_t e = 0; e < g.size(); ++e) {
        if (g[e] == 0) continue;
        Monomial m;
        m.set(main, e);
        img[m] = f.mul(g[e], scale);
      }
      return img;
    }
    throw InterpFail{};
  }

  void redraw_fixed() {
    // Fixed (non-grid, non-main) slots get fresh random values.
    for (std::size_t v = 0; v < nv; ++v) {
      if (v == main) continue;
      if (std::find(grid_vars.begin(), grid_vars.end(), v) != grid_vars.end()) continue;
      assignment[v] = (*rng)() % (f.p - 2) + 1;
    }
  }

  ZpSparse run(std::size_t depth) {
    if (depth == grid_vars.size()) return image_at_point();
    std::size_t v = grid_vars[depth];
    long count = grid_count[depth];
    ZpSparse result = zs_make(nv);
    ZpSparse basis = zs_make(nv);
    basis[Monomial::one()] = 1;
    std::vector<std::uint64_t> nodes;
    for (long i = 0; i <= count; ++i) {
      std::uint64_t alpha;
      for (int tries = 0;; ++tries) {
        alpha = (*rng)() % (f.p - 2) + 1;
        if (std::find(nodes.begin(), nodes.end(), alpha) == nodes.end()) break;
        if (tries > 50) throw InterpFail{};
      }
      assignment[v] = alpha;
      ZpSparse val = run(depth + 1);
      // Newton update: result += basis * (val - result(alpha)) / basis(alpha)
      ZpSparse cur = zs_eval_var(result, v, alpha, f, nv);
      ZpSparse diff = zs_make(nv);
      zs_add_scaled(diff, val, 1, f);
      zs_add_scaled(diff, cur, f.p - 1, f);
      if (!diff.empty()) {
        std::uint64_t denom = 1;
        for (auto n : nodes) denom = f.mul(denom, f.sub(alpha, n));
        std::uint64_t scale = f.inv(denom);
        for (const auto& [bm, bc] : basis) {
          for (const auto& [dm, dc] : diff) {
            Monomial m = bm * dm;
            std::uint64_t add = f.mul(f.mul(bc, dc), scale);
            std::uint64_t acc = f.add(result.count(m) ? result[m] : 0, add);
            if (acc == 0)
              result.erase(m);
            else
              result[m] = acc;
          }
        }
      }
      basis = zs_mul_linear(basis, v, alpha, f, nv);
      nodes.push_back(alpha);
    }
    // One confirmation point: the interpolation must already agree.
    std::uint64_t alpha = (*rng)() % (f.p - 2) + 1;
    assignment[v] = alpha;
    ZpSparse val = run(depth + 1);
    ZpSparse cur = zs_eval_var(result, v, alpha, f, nv);
    if (!(val == cur)) throw InterpFail{};
    return result;
  }
};

// ---------------------------------------------------------------------------

Polynomial fold_gcd(const std::vector<Polynomial>& polys) {
  Polynomial g;
  bool first = true;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (first) {
      g = p;
      first = false;
    } else {
      g = poly_gcd(g, p);
    }
    if (!g.is_zero() && g.is_constant()) break;
  }
  if (first) return Polynomial();
  return g;
}

// Core: both inputs integer-primitive, non-constant, share ctx.
Polynomial gcd_core(Polynomial A, Polynomial B, std::mt19937_64& rng);

Polynomial gcd_dispatch(Polynomial A, Polynomial B, std::mt19937_64& rng) {
  // Monomial content first: keeps leading coefficients honest for probing.
  Monomial ma = min_exponents(A);
  Monomial mb = min_exponents(B);
  Monomial mg;
  for (std::size_t v = 0; v < kMaxVars; ++v) mg.set(v, std::min(ma.e[v], mb.e[v]));
  A = divide_monomial(A, ma);
  B = divide_monomial(B, mb);

  Polynomial g = gcd_core(std::move(A), std::move(B), rng);
  return g.mul_term(mg, Rat(1));
}

Polynomial gcd_core(Polynomial A, Polynomial B, std::mt19937_64& rng) {
  if (A.is_constant() || B.is_constant()) return Polynomial::constant(A.ctx(), Rat(1));
  if (A == B) return A;

  Probe pr = probe_bounds(A, B, rng);
  if (pr.trivial()) return Polynomial::constant(A.ctx(), Rat(1));

  std::size_t nv = A.nvars();

  // One input may simply divide the other.
  auto profile_matches = [&](const Polynomial& p) {
    for (std::size_t v = 0; v < nv; ++v)
      if (std::max<long>(p.degree(v), 0) != pr.bound[v]) return false;
    return true;
  };
  if (profile_matches(A)) {
    if (Polynomial::try_divide(B, A)) return A;
  }
  if (profile_matches(B)) {
    if (Polynomial::try_divide(A, B)) return B;
  }

  // Main variable: largest probed bound (ties: smaller input degree).
  std::size_t main = 0;
  long best = -1;
  for (std::size_t v = 0; v < nv; ++v) {
    if (pr.bound[v] > best) {
      best = pr.bound[v];
      main = v;
    }
  }

  // Content split along the main variable.
  Polynomial contA = fold_gcd(coeffs_in_var(A, main));
  Polynomial contB = fold_gcd(coeffs_in_var(B, main));
  if (!contA.is_constant()) A = Polynomial::try_divide(A, contA)->primitive_part();
  if (!contB.is_constant()) B = Polynomial::try_divide(B, contB)->primitive_part();
  Polynomial contG = poly_gcd(contA, contB);
  if (A.is_constant() || B.is_constant()) return contG;

  Polynomial gamma = lc_in_var(A, main);
  long main_bound = pr.bound[main];

  // CRT accumulator over primes.
  std::map<Monomial, Int, MonoLess> crt((MonoLess{nv}));
  Int modulus = 1;

  for (int prime_round = 0; prime_round < 16; ++prime_round) {
    InterpJob job{A, B, zview(A), zview(B), main, main_bound, gamma, zview(gamma), {},
                  {},   nv,       Zp{random_prime(rng)},      &rng};
    for (std::size_t v = 0; v < nv; ++v) {
      if (v == main) continue;
      long cnt = pr.bound[v] + std::max<long>(gamma.degree(v), 0);
      if (cnt > 0 || (pr.bound[v] == 0 && gamma.degree(v) > 0)) {
        job.grid_vars.push_back(v);
        job.grid_count.push_back(cnt);
      }
    }
    job.assignment.assign(nv, 1);

    ZpSparse ghat;
    try {
      job.redraw_fixed();
      ghat = job.run(0);
    } catch (InterpFail&) {
      continue;
    } catch (DegreeRestart& r) {
      if (r.new_bound <= 0) return contG;
      main_bound = r.new_bound;
      crt.clear();
      modulus = 1;
      continue;
    }

    // CRT-combine this prime's image.
    Int p(static_cast<unsigned long>(job.f.p));
    if (modulus == 1) {
      for (const auto& [m, c] : ghat) crt[m] = Int(static_cast<unsigned long>(c));
      modulus = p;
    } else {
      Int minv;
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t());
      std::vector<Monomial> keys;
      for (const auto& [m, c] : crt) keys.push_back(m);
      for (const auto& [m, c] : ghat)
        if (!crt.count(m)) keys.push_back(m);
      for (const auto& m : keys) {
        Int cur = crt.count(m) ? crt[m] : Int(0);
        Int want = ghat.count(m) ? Int(static_cast<unsigned long>(ghat.at(m))) : Int(0);
        Int delta = ((want - cur) * minv) % p;
        if (delta < 0) delta += p;
        crt[m] = cur + modulus * delta;
      }
      modulus *= p;
    }

    // Symmetric lift and verification.
    Int half = modulus / 2;
    std::vector<Term> terms;
    for (const auto& [m, c] : crt) {
      Int v = c;
      if (v > half) v -= modulus;
      if (v != 0) terms.push_back({m, Rat(v)});
    }
    Polynomial ghat_q = Polynomial::from_terms(A.ctx(), std::move(terms));
    if (ghat_q.is_zero()) continue;
    // Strip the gamma/lc(G) factor: it is exactly the main-variable content.
    Polynomial cont = fold_gcd(coeffs_in_var(ghat_q, main));
    Polynomial cand = cont.is_constant() ? ghat_q : *Polynomial::try_divide(ghat_q, cont);
    cand = cand.primitive_part();
    if (Polynomial::try_divide(A, cand) && Polynomial::try_divide(B, cand)) {
      return contG * cand;
    }
  }
  // Certified interpolation failed (pathological luck or huge coefficients).
  return contG * poly_gcd_prs(A, B);
}

thread_local std::mt19937_64 g_gcd_rng(0x5eed1e55c0ffee11ull);

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return Polynomial(a.ctx());
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  Polynomial x = a, y = b;
  Polynomial::align(x, y);
  if (x.is_constant() || y.is_constant()) return Polynomial::constant(x.ctx(), Rat(1));
  Polynomial px = x.primitive_part(), py = y.primitive_part();
  Polynomial g = gcd_dispatch(px, py, g_gcd_rng);

  // Cofactor probe: guards against a verified-but-proper divisor slipping
  // through an unlucky interpolation.
  if (!g.is_constant()) {
    Polynomial gp = g.primitive_part();
    auto ca = Polynomial::try_divide(px, gp);
    auto cb = Polynomial::try_divide(py, gp);
    if (!ca || !cb) throw Error("poly_gcd: internal divisor verification failed");
    if (!ca->is_constant() && !cb->is_constant()) {
      Probe check = probe_bounds(*ca, *cb, g_gcd_rng, 2);
      if (!check.trivial())
        g = g * gcd_dispatch(ca->primitive_part(), cb->primitive_part(), g_gcd_rng);
    }
  }
  return g.monic();
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ctx());
  Polynomial g = poly_gcd(a, b);
  return (*Polynomial::try_divide(a * b, g)).monic();
}

// ---------------------------------------------------------------------------
// Subresultant PRS fallback

namespace {

// Univariate view: coefficients (polynomials in the remaining variables) by
// main-variable exponent.
struct UniView {
  std::vector<Polynomial> c;  // ascending

  long deg() const { return static_cast<long>(c.size()) - 1; }
  const Polynomial& lc() const { return c.back(); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

UniView to_uniview(const Polynomial& p, std::size_t main) {
  UniView u;
  u.c = coeffs_in_var(p, main);
  u.trim();
  return u;
}

Polynomial from_uniview(const UniView& u, std::size_t main) {
  Polynomial r;
  bool first = true;
  Polynomial xm;
  for (std::size_t e = 0; e < u.c.size(); ++e) {
    if (u.c[e].is_zero()) continue;
    Monomial m;
    m.set(main, e);
    Polynomial part = u.c[e].mul_term(m, Rat(1));
    if (first) {
      r = part;
      first = false;
    } else {
      r = r + part;
    }
  }
  if (first) return Polynomial();
  return r;
}

UniView scale(const UniView& u, const Polynomial& s) {
  UniView r;
  r.c.reserve(u.c.size());
  for (const auto& p : u.c) r.c.push_back(p * s);
  return r;
}

// Pseudo-remainder: lc(B)^(degA-degB+1) * A mod B, with the exact power of
// lc(B) restored when degrees drop by more than one per round.
UniView pseudo_rem(UniView A, const UniView& B) {
  long dB = B.deg();
  long delta = A.deg() - dB;
  long rounds = 0;
  while (!A.c.empty() && A.deg() >= dB) {
    long dA = A.deg();
    Polynomial coef = A.lc();
    for (auto& p : A.c) p = p * B.lc();
    for (long i = 0; i <= dB; ++i) A.c[dA - dB + i] = A.c[dA - dB + i] - coef * B.c[i];
    A.trim();
    ++rounds;
    if (!A.c.empty() && A.deg() >= dA) throw Error("pseudo_rem: no cancellation");
  }
  long extra = delta + 1 - rounds;
  if (extra > 0 && !A.c.empty()) {
    Polynomial mult = B.lc().pow(static_cast<unsigned long>(extra));
    for (auto& p : A.c) p = p * mult;
  }
  return A;
}

Polynomial uniview_content(const UniView& u) { return fold_gcd(u.c); }

}  // namespace

Polynomial poly_gcd_prs(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  Polynomial x = a, y = b;
  Polynomial::align(x, y);
  if (x.is_constant() || y.is_constant()) return Polynomial::constant(x.ctx(), Rat(1));

  // Main variable: any shared variable.
  std::size_t nv = x.nvars();
  std::size_t main = nv;
  for (std::size_t v = 0; v < nv; ++v) {
    if (x.degree(v) > 0 && y.degree(v) > 0) {
      main = v;
      break;
    }
  }
  if (main == nv) return Polynomial::constant(x.ctx(), Rat(1));

  UniView A = to_uniview(x.primitive_part(), main);
  UniView B = to_uniview(y.primitive_part(), main);
  if (A.deg() < B.deg()) std::swap(A, B);

  Polynomial contA = uniview_content(A);
  Polynomial contB = uniview_content(B);
  Polynomial cont = poly_gcd(contA, contB);
  if (!contA.is_constant())
    for (auto& p : A.c) p = *Polynomial::try_divide(p, contA);
  if (!contB.is_constant())
    for (auto& p : B.c) p = *Polynomial::try_divide(p, contB);

  Polynomial one = Polynomial::constant(x.ctx(), Rat(1));
  Polynomial g = one, h = one;
  while (true) {
    long delta = A.deg() - B.deg();
    UniView R = pseudo_rem(A, B);
    if (R.c.empty()) {
      Polynomial pp = from_uniview(B, main).primitive_part();
      return (cont * pp).monic();
    }
    if (R.deg() == 0) return cont.monic();
    Polynomial divisor = g * h.pow(delta);
    A = B;
    UniView next;
    next.c.reserve(R.c.size());
    for (auto& p : R.c) {
      auto q = Polynomial::try_divide(p, divisor);
      if (!q) throw Error("subresultant PRS: inexact division");
      next.c.push_back(std::move(*q));
    }
    B = std::move(next);
    g = A.lc();
    if (delta >= 1) {
      auto q = Polynomial::try_divide(g.pow(delta), h.pow(delta - 1));
      if (!q) throw Error("subresultant PRS: inexact h update");
      h = *q;
    } else {
      h = g.pow(delta) * h.pow(1 - delta);
    }
  }
}

}  // namespace ivp
