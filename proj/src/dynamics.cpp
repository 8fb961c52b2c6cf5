#include "ivp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ivp/polymatrix.hpp"
#include "ivp/rng.hpp"

namespace ivp {

// ---------------------------------------------------------------------------
// Symbolic iteration

IterateResult iterate_symbolic(const RationalMap& map, std::size_t n, const WorkBudget& budget) {
  if (n < 1) throw Error("iterate_symbolic: n must be >= 1");
  IterateResult res;
  // X^(0) = identity on every context variable (state and parameters).
  std::vector<RationalFunction> current;
  for (std::size_t v = 0; v < map.ctx->size(); ++v)
    current.push_back(RationalFunction::variable(map.ctx, v));
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<RationalFunction> next;
    next.reserve(current.size());
    bool over = false;
    for (std::size_t j = 0; j < map.dim; ++j) {
      RationalFunction c =
          compose_quotient(map.components[j].num(), map.components[j].den(), current);
      if (c.num().term_count() + c.den().term_count() > budget.max_terms) over = true;
      next.push_back(std::move(c));
    }
    for (std::size_t v = map.dim; v < map.ctx->size(); ++v)
      next.push_back(RationalFunction::variable(map.ctx, v));
    res.iterates.emplace_back(next.begin(), next.begin() + map.dim);
    current = std::move(next);
    if (over) {
      res.budget_hit = true;
      break;
    }
  }
  return res;
}

DegreeSequence degree_growth(const RationalMap& map, std::size_t n_max, const std::string& var,
                             const WorkBudget& budget) {
  auto vi = map.ctx->index_of(var);
  if (!vi) throw Error("degree_growth: unknown variable " + var);
  IterateResult it = iterate_symbolic(map, n_max, budget);
  DegreeSequence seq;
  seq.map_descriptor = map.descriptor;
  seq.watched = var;
  seq.budget_hit = it.budget_hit;
  for (const auto& iterate : it.iterates) {
    const Polynomial& num = iterate[0].num();
    long d = num.degree(*vi);
    seq.degrees.push_back(d == Polynomial::kDegNegInf ? 0 : d);
    seq.term_counts.push_back(num.terms_with_var(*vi));
  }
  return seq;
}

EntropyEstimate entropy_estimate(const DegreeSequence& seq, std::size_t window_lo,
                                 std::size_t window_hi) {
  if (window_hi == 0) window_hi = seq.degrees.size();
  window_lo = std::max<std::size_t>(window_lo, 2);
  EntropyEstimate est;
  est.window_lo = window_lo;
  est.window_hi = window_hi;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = window_lo; n <= window_hi && n <= seq.degrees.size(); ++n) {
    long D = seq.degrees[n - 1];
    if (D > 0) pts.emplace_back(double(n), std::log(double(D)));
  }
  if (pts.size() < 3) throw Error("entropy_estimate: need at least 3 entries with n >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double k = double(pts.size());
  est.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  for (std::size_t i = 0; i + 1 < seq.degrees.size(); ++i) {
    if (seq.degrees[i] > 0) est.ratios.push_back(double(seq.degrees[i + 1]) / double(seq.degrees[i]));
  }
  return est;
}

// ---------------------------------------------------------------------------
// Jacobians

JacobianMatrix jacobian(const RationalMap& map) {
  JacobianMatrix J(map.dim, std::vector<RationalFunction>(map.dim));
  for (std::size_t i = 0; i < map.dim; ++i)
    for (std::size_t j = 0; j < map.dim; ++j) J[i][j] = map.components[i].derivative(j);
  return J;
}

RationalFunction jacobian_det(const RationalMap& map) { return rf_det(jacobian(map)); }

namespace {

CMat eval_jacobian(const JacobianMatrix& J, const CVec& x) {
  std::size_t d = J.size();
  CMat m(d, CVec(d, Complex(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = J[i][j].eval_t<Complex>(x);
  return m;
}

CMat mat_mul(const CMat& a, const CMat& b) {
  std::size_t n = a.size();
  CMat r(n, CVec(n, Complex(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  return r;
}

Real orbit_residual(const RationalMap& map, const CVec& x0, std::size_t n, CVec* end = nullptr) {
  CVec x = x0;
  for (std::size_t s = 0; s < n; ++s) x = map.step(x);
  Real r(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Real d = (x[i] - x0[i]).abs();
    if (d > r) r = d;
  }
  if (end) *end = x;
  return r;
}

std::string classify(const Real& absl, const Real& band) {
  Real dist = absl - Real(1);
  if (dist.abs() < band) return "neutral";
  return dist.sgn() < 0 ? "attractive" : "repulsive";
}

}  // namespace

CMat orbit_jacobian(const RationalMap& map, const CVec& x0, std::size_t n) {
  JacobianMatrix J = jacobian(map);
  CVec x = x0;
  CMat M;
  for (std::size_t s = 0; s < n; ++s) {
    CMat Jx = eval_jacobian(J, x);
    M = (s == 0) ? Jx : mat_mul(Jx, M);
    x = map.step(x);
  }
  return M;
}

OrbitReport multipliers_at(const RationalMap& map, const CVec& x0, std::size_t n,
                           mpfr_prec_t precision, double neutral_band, double tol_in) {
  Real::PrecGuard guard(precision);
  OrbitReport rep;
  rep.point = x0;
  rep.period = n;
  rep.precision_bits = precision;

  Real rin = orbit_residual(map, x0, n);
  if (!(rin < Real(tol_in))) throw Error("multipliers_at: point is not period-n to tol_in");

  JacobianMatrix J = jacobian(map);
  CVec x = x0;
  CMat M;
  for (std::size_t s = 0; s < n; ++s) {
    CMat Jx = eval_jacobian(J, x);
    M = (s == 0) ? Jx : mat_mul(Jx, M);
    x = map.step(x);
  }
  rep.residual = orbit_residual(map, x0, n);

  CVec cp = char_poly(M);  // det(lambda I - M)
  rep.multipliers = poly_roots(cp);
  std::sort(rep.multipliers.begin(), rep.multipliers.end(), [](const Complex& a, const Complex& b) {
    if (!(a.re == b.re)) return a.re < b.re;
    return a.im < b.im;
  });
  Real band(neutral_band);
  for (const auto& l : rep.multipliers) rep.classes.push_back(classify(l.abs(), band));
  return rep;
}

// ---------------------------------------------------------------------------
// Newton search

namespace {

struct NewtonOutcome {
  bool converged = false;
  CVec x;
  Real residual;
};

// One damped Newton run on G(x) = F^n(x) - x.
NewtonOutcome newton_run(const RationalMap& map, const JacobianMatrix& J, CVec x, std::size_t n,
                         const SearchConfig& cfg) {
  std::size_t d = map.dim;
  Real target = Real::pow10(-30);
  Real rank_tol = Real::pow2(-long(Real::working_prec()) / 3);

  auto G_of = [&](const CVec& p, CMat* Mout) -> std::optional<CVec> {
    try {
      CVec cur = p;
      CMat M;
      for (std::size_t s = 0; s < n; ++s) {
        if (Mout) {
          CMat Jx = eval_jacobian(J, cur);
          M = (s == 0) ? Jx : mat_mul(Jx, M);
        }
        cur = map.step(cur);
      }
      if (Mout) *Mout = std::move(M);
      CVec g(d);
      for (std::size_t i = 0; i < d; ++i) g[i] = cur[i] - p[i];
      return g;
    } catch (SingularityHit&) {
      return std::nullopt;
    }
  };

  auto norm = [&](const CVec& v) { return max_abs(v); };

  CMat M;
  auto g0 = G_of(x, &M);
  if (!g0) return {};
  Real gn = norm(*g0);

  for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
    if (gn < target) return {true, x, gn};
    // Solve (M - I) delta = -G.
    CMat A = M;
    for (std::size_t i = 0; i < d; ++i) A[i][i] = A[i][i] - Complex(1);
    CVec rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = -(*g0)[i];
    CVec delta;
    if (!solve_linear(A, rhs, delta, rank_tol)) return {};

    // Step halving on residual increase.
    Real alpha(1);
    bool moved = false;
    for (int h = 0; h <= cfg.max_halvings; ++h) {
      CVec trial(d);
      for (std::size_t i = 0; i < d; ++i) trial[i] = x[i] + delta[i] * Complex(alpha);
      CMat Mt;
      auto gt = G_of(trial, &Mt);
      if (gt) {
        Real gtn = norm(*gt);
        if (gtn < gn) {
          x = std::move(trial);
          g0 = std::move(gt);
          gn = gtn;
          M = std::move(Mt);
          moved = true;
          break;
        }
      }
      alpha = alpha * Real(0.5);
    }
    if (!moved) return {false, x, gn};
  }
  if (gn < target) return {true, x, gn};
  return {false, x, gn};
}

}  // namespace

std::vector<OrbitReport> newton_periodic_search(const RationalMap& map, const SearchConfig& cfg) {
  if (cfg.period < 1) throw Error("newton_periodic_search: period must be >= 1");
  std::size_t d = map.dim;
  JacobianMatrix J = jacobian(map);

  std::vector<std::optional<CVec>> slots(cfg.starts);
  std::size_t nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<std::size_t>(nthreads, cfg.starts ? cfg.starts : 1);

  auto worker = [&](std::size_t tid) {
    Real::PrecGuard guard(cfg.precision);
    for (std::size_t k = tid; k < cfg.starts; k += nthreads) {
      Rng rng = Rng::fork(cfg.seed, k);
      CVec x0;
      for (std::size_t i = 0; i < d; ++i) x0.push_back(rng.gaussian(cfg.start_scale));
      NewtonOutcome out = newton_run(map, J, std::move(x0), cfg.period, cfg);
      if (out.converged) slots[k] = std::move(out.x);
    }
  };
  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  // Refine at doubled precision, then dedup and filter deterministically.
  Real::PrecGuard guard(2 * cfg.precision);
  Real dedup_radius = Real::pow10(-10);
  Real div_tol = Real::pow10(-20);
  Real keep_tol = Real::pow10(-25);

  std::vector<CVec> accepted;
  for (std::size_t k = 0; k < cfg.starts; ++k) {
    if (!slots[k]) continue;
    NewtonOutcome ref = newton_run(map, J, *slots[k], cfg.period, cfg);
    if (!ref.converged || !(ref.residual < keep_tol)) continue;
    CVec& x = ref.x;

    // Minimal period: discard when a proper divisor already closes the orbit.
    bool divisor = false;
    for (std::size_t m = 1; m < cfg.period; ++m) {
      if (cfg.period % m != 0) continue;
      try {
        if (orbit_residual(map, x, m) < div_tol) {
          divisor = true;
          break;
        }
      } catch (SingularityHit&) {
      }
    }
    if (divisor) continue;

    bool dup = false;
    for (const auto& y : accepted) {
      Real dist(0);
      for (std::size_t i = 0; i < d; ++i) {
        Real c = (x[i] - y[i]).abs();
        if (c > dist) dist = c;
      }
      if (dist < dedup_radius) {
        dup = true;
        break;
      }
    }
    if (!dup) accepted.push_back(std::move(x));
  }

  std::sort(accepted.begin(), accepted.end(), [](const CVec& a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(a[i].re == b[i].re)) return a[i].re < b[i].re;
      if (!(a[i].im == b[i].im)) return a[i].im < b[i].im;
    }
    return false;
  });

  std::vector<OrbitReport> reports;
  for (auto& x : accepted) reports.push_back(multipliers_at(map, x, cfg.period, 2 * cfg.precision));
  return reports;
}

// ---------------------------------------------------------------------------
// Special orbits

SpecialOrbit special_orbit_check(const Rat& t) {
  RationalMap lv = build_lv3(Rat(0));
  SpecialOrbit so;
  std::vector<Rat> p0{Rat(1), Rat(1), t};
  if (t == 1) {
    // On the diagonal line every point is fixed.
    auto p1 = lv.step(p0);
    so.ok = (p1 == p0);
    so.period = 1;
    so.orbit = {p0, p1};
    return so;
  }
  std::vector<Rat> expect1{t, Rat(1), Rat(1)};
  std::vector<Rat> expect2{Rat(1), t, Rat(1)};
  auto p1 = lv.step(p0);   // may throw SingularityHit (e.g. t = 0)
  auto p2 = lv.step(p1);
  auto p3 = lv.step(p2);
  so.ok = (p1 == expect1) && (p2 == expect2) && (p3 == p0);
  so.period = 3;
  so.orbit = {p0, p1, p2, p3};
  return so;
}

}  // namespace ivp
