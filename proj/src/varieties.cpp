#include "ivp/varieties.hpp"

#include <algorithm>

#include "ivp/poly_io.hpp"
#include "ivp/polymatrix.hpp"
#include "ivp/rng.hpp"

namespace ivp {

// ---------------------------------------------------------------------------
// Catalog

namespace {

VarietySpec make_spec(std::string map_id, std::size_t period, RationalMap map,
                      std::vector<std::pair<std::string, std::string>> symbols,
                      std::vector<std::string> gens, std::size_t p_invariants) {
  VarietySpec spec;
  spec.map_id = std::move(map_id);
  spec.period = period;
  spec.map = std::move(map);
  std::vector<std::string> names;
  for (auto& [n, e] : symbols) names.push_back(n);
  spec.hctx = VarContext::make(names);
  std::vector<Polynomial> subst;
  for (auto& [n, e] : symbols) {
    Polynomial h = parse_poly(e, spec.map.ctx);
    spec.hsubst.emplace_back(n, h);
    subst.push_back(h);
  }
  for (auto& g : gens) {
    Polynomial gh = parse_poly(g, spec.hctx);
    spec.generators.push_back(gh);
    spec.composed.push_back(Polynomial::substitute(gh, subst));
  }
  spec.expected_codim = spec.map.dim - p_invariants;
  if (spec.generators.size() != spec.expected_codim)
    throw Error("variety catalog: generator count disagrees with d - p");
  return spec;
}

const char* kGamma5 =
    "r^3*s^4 - r^3*s^2 - 6*r^4*s^5 + 10*r^3*s^6 + 3*s^5*r + s^6 + s^5 + 3*r^4*s^4"
    " - 3*r^5*s^3 - 6*r^4*s^3 - r^6*s^3 + 3*r^5*s^4 + s^4 + 21*s^4*r^2 + 6*s^4*r"
    " + r^3*s^7 + s^7 + 27*s^5*r^2 - 3*s^6*r - r^3*s^5 + 21*r^2*s^6 - 10*r^3*s^3"
    " - 6*r*s^7 + s^8";

}  // namespace

std::vector<std::pair<std::string, std::size_t>> gamma_catalog_keys() {
  return {{"lv3", 2}, {"lv3", 3}, {"lv3", 4}, {"lv3", 5}, {"lv4", 2},
          {"lv4", 3}, {"pv", 2},  {"pv", 3},  {"lv5", 2},  {"toda3", 2},
          {"toda3", 3}};
}

VarietySpec gamma_catalog(const std::string& map_id, std::size_t period) {
  if (map_id == "lv3") {
    std::vector<std::pair<std::string, std::string>> sym = {{"r", "x*y*z"},
                                                            {"s", "(1-x)(1-y)(1-z)"}};
    RationalMap m = build_lv3(Rat(0));
    switch (period) {
      case 2: return make_spec("lv3", 2, m, sym, {"s+1"}, 2);
      case 3: return make_spec("lv3", 3, m, sym, {"r^2+s^2-r*s+r+s+1"}, 2);
      case 4: return make_spec("lv3", 4, m, sym, {"r^3*s+s^3-3*r*s^2+6*r^2*s+3*r*s-r^3+s"}, 2);
      case 5: return make_spec("lv3", 5, m, sym, {kGamma5}, 2);
      default: break;
    }
  } else if (map_id == "lv4") {
    std::vector<std::pair<std::string, std::string>> sym = {
        {"r", "x1*x2*x3*x4"},
        {"t", "(1-x1-x3)(1-x2-x4)"},
        {"u", "x2*x3*x4+x3*x4*x1+x4*x1*x2+x1*x2*x3-x1*x3-x2*x4"}};
    RationalMap m = build_lv_general(4);
    switch (period) {
      case 2: return make_spec("lv4", 2, m, sym, {"t+1"}, 3);
      case 3:
        return make_spec("lv4", 3, m, sym, {"t^3+t^2*r-t^2*u+t^2-u^2+2*r*t-u+r+t"}, 3);
      default: break;
    }
  } else if (map_id == "pv") {
    std::vector<std::pair<std::string, std::string>> sym = {
        {"r", "x1*x2*x3*x4"},
        {"s", "(1-x1)(1-x2)(1-x3)(1-x4)"},
        {"v", "(1-x2*x4)(1-x1*x3)"}};
    RationalMap m = build_pv();
    switch (period) {
      case 2: return make_spec("pv", 2, m, sym, {"s+v"}, 3);
      case 3: return make_spec("pv", 3, m, sym, {"(s+v)^2-s*(1-r)^2"}, 3);
      default: break;
    }
  } else if (map_id == "lv5") {
    RationalMap m = build_lv_general(5);
    // Invariant symbols follow the printed five-dimensional forms; H1 there
    // is the negative of the Lax-normalized H1.
    Polynomial h1lax = lv_hk_closed_form(5, 1, m.ctx);
    Polynomial h2lax = lv_hk_closed_form(5, 2, m.ctx);
    std::vector<std::pair<std::string, std::string>> sym = {
        {"H1", poly_to_string(-h1lax)}, {"H2", poly_to_string(h2lax)}, {"r", "x1*x2*x3*x4*x5"}};
    if (period == 2) return make_spec("lv5", 2, m, sym, {"H2+3*H1+5", "r+H1+2"}, 3);
  } else if (map_id == "toda3") {
    std::vector<std::pair<std::string, std::string>> sym = {
        {"T1", "I1+I2+I3+V1+V2+V3"},
        {"T2", "I1*I2+I2*I3+I3*I1+V1*V2+V2*V3+V3*V1+I1*V2+I2*V3+I3*V1"},
        {"T3", "I1*I2*I3"},
        {"T3p", "V1*V2*V3"}};
    RationalMap m = build_toda(3);
    switch (period) {
      case 2: return make_spec("toda3", 2, m, sym, {"T2", "T3-T3p"}, 4);
      case 3: return make_spec("toda3", 3, m, sym, {"T1", "T2"}, 4);
      default: break;
    }
  }
  throw Error("gamma_catalog: no printed variety for (" + map_id + ", " + std::to_string(period) +
              ")");
}

// ---------------------------------------------------------------------------
// Membership

namespace {

MembershipReport reduce_membership(const VarietySpec& spec,
                                   const std::vector<Polynomial>& composed,
                                   const WorkBudget& budget) {
  MembershipReport rep;
  rep.map_id = spec.map_id;
  rep.period = spec.period;

  IterateResult it = iterate_symbolic(spec.map, spec.period, budget);
  if (it.budget_hit || it.iterates.size() < spec.period)
    throw BudgetExceeded("membership: iteration budget", 0, it.iterates.size());
  const auto& Xn = it.iterates[spec.period - 1];

  std::vector<Polynomial> basis = composed;
  if (composed.size() > 1) basis = groebner_basis(composed, TermOrder::grevlex(), budget);

  rep.exact = true;
  rep.member = true;
  rep.u_regular = true;
  for (std::size_t j = 0; j < spec.map.dim; ++j) {
    Polynomial xj = Polynomial::variable(spec.map.ctx, j);
    Polynomial numerator = Xn[j].num() - xj * Xn[j].den();
    ReduceResult red = poly_reduce(numerator, basis, TermOrder::grevlex());
    if (!red.remainder.is_zero()) {
      rep.member = false;
      rep.note = "nonzero remainder for component " + std::to_string(j + 1);
      break;
    }
    if (composed.size() == 1) {
      // X_j^n - x_j = (q / den) * gamma with q the division quotient.
      rep.cofactors.emplace_back(red.quotients[0], Xn[j].den());
      Polynomial den_rem = poly_reduce(Xn[j].den(), basis, TermOrder::grevlex()).remainder;
      if (den_rem.is_zero()) rep.u_regular = false;
    }
  }
  return rep;
}

}  // namespace

MembershipReport verify_membership_against(const VarietySpec& spec,
                                           const std::vector<Polynomial>& composed,
                                           const WorkBudget& budget) {
  return reduce_membership(spec, composed, budget);
}

MembershipReport verify_membership(const VarietySpec& spec, const WorkBudget& budget,
                                   mpfr_prec_t precision, std::uint64_t seed) {
  try {
    return reduce_membership(spec, spec.composed, budget);
  } catch (BudgetExceeded& e) {
    // Weaker evidence, clearly labeled: sampled points verified numerically.
    MembershipReport rep;
    rep.map_id = spec.map_id;
    rep.period = spec.period;
    rep.exact = false;
    auto samples = sample_on_variety(spec, 100, precision, seed);
    PeriodVerdict v = verify_period_on_samples(spec, samples, precision, 1e-20);
    rep.samples = v.total;
    rep.samples_ok = v.verified + v.degenerate;
    rep.member = (v.failed == 0 && v.verified > 0);
    rep.note = std::string("budget exhausted (") + e.what() + "); sampling evidence";
    return rep;
  }
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

// Substitution arguments fixing all variables except `solve_vars` at the
// given rationals, keeping the solve variables symbolic.
std::vector<Polynomial> slice_args(const VarCtx& ctx, const std::vector<Rat>& fixed,
                                   const std::vector<std::size_t>& solve_vars) {
  std::vector<Polynomial> args;
  std::size_t fi = 0;
  for (std::size_t v = 0; v < ctx->size(); ++v) {
    if (std::find(solve_vars.begin(), solve_vars.end(), v) != solve_vars.end()) {
      args.push_back(Polynomial::variable(ctx, v));
    } else {
      args.push_back(Polynomial::constant(ctx, fixed[fi++]));
    }
  }
  return args;
}

CVec uni_coeffs_complex(const Polynomial& p, std::size_t var) {
  auto cs = coeffs_in_var(p, var);
  CVec out;
  for (auto& c : cs) {
    if (!c.is_constant()) throw Error("sampling: polynomial not univariate after slicing");
    out.push_back(Complex(c.constant_value()));
  }
  return out;
}

Complex eval_uni(const CVec& c, const Complex& z) {
  Complex acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

// Newton polish on a univariate polynomial.
Complex polish_uni(const CVec& c, Complex z, int iters = 80) {
  CVec d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Complex(long(i)));
  for (int k = 0; k < iters; ++k) {
    Complex f = eval_uni(c, z);
    Complex fp = eval_uni(d, z);
    if (fp.is_zero()) break;
    Complex step = f / fp;
    z = z - step;
    if (step.abs() < Real::pow2(-long(Real::working_prec()) + 8)) break;
  }
  return z;
}

struct TwoGenSlice {
  Polynomial g1, g2;    // over map ctx, active in (v1, v2) only
  std::size_t v1, v2;
};

// 2x2 Newton on both generators.
bool polish_pair(const TwoGenSlice& s, Complex& a, Complex& b, const Real& tol) {
  Polynomial d11 = s.g1.derivative(s.v1), d12 = s.g1.derivative(s.v2);
  Polynomial d21 = s.g2.derivative(s.v1), d22 = s.g2.derivative(s.v2);
  std::size_t nv = s.g1.nvars();
  CVec point(nv, Complex(0));
  for (int k = 0; k < 80; ++k) {
    point[s.v1] = a;
    point[s.v2] = b;
    Complex f1 = s.g1.eval_t<Complex>(point);
    Complex f2 = s.g2.eval_t<Complex>(point);
    if (f1.abs() < tol && f2.abs() < tol) return true;
    Complex j11 = d11.eval_t<Complex>(point), j12 = d12.eval_t<Complex>(point);
    Complex j21 = d21.eval_t<Complex>(point), j22 = d22.eval_t<Complex>(point);
    Complex det = j11 * j22 - j12 * j21;
    if (det.is_zero()) return false;
    Complex da = (f1 * j22 - f2 * j12) / det;
    Complex db = (f2 * j11 - f1 * j21) / det;
    a = a - da;
    b = b - db;
  }
  point[s.v1] = a;
  point[s.v2] = b;
  return s.g1.eval_t<Complex>(point).abs() < tol && s.g2.eval_t<Complex>(point).abs() < tol;
}

// Sylvester resultant of two polynomials w.r.t. `var`; entries univariate in
// the remaining active variable.
Polynomial sylvester_resultant(const Polynomial& f, const Polynomial& g, std::size_t var) {
  auto fc = coeffs_in_var(f, var);
  auto gc = coeffs_in_var(g, var);
  std::size_t m = fc.size() - 1, n = gc.size() - 1;
  if (m == 0 || n == 0) throw Error("resultant: degenerate degree");
  PolyMatrix S(m + n, m + n, f.ctx());
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t k = 0; k <= m; ++k) S.at(row, row + (m - k)) = fc[k];
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t k = 0; k <= n; ++k) S.at(n + row, row + (n - k)) = gc[k];
  return S.det_bareiss();
}

}  // namespace

std::vector<SamplePoint> sample_on_variety(const VarietySpec& spec, std::size_t count,
                                           mpfr_prec_t precision, std::uint64_t seed) {
  Real::PrecGuard guard(precision);
  std::size_t d = spec.map.dim;
  std::size_t k = spec.composed.size();
  if (k != 1 && k != 2) throw Error("sampling supports 1 or 2 generators");
  Real accept = Real::pow10(-30);

  std::vector<SamplePoint> out;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Rng rng = Rng::fork(seed, idx);
    bool found = false;
    for (int attempt = 0; attempt < 60 && !found; ++attempt) {
      std::vector<Rat> fixed;
      for (std::size_t i = 0; i + k < d; ++i) fixed.push_back(rng.small_rational());

      auto finish = [&](const CVec& z, const std::optional<std::vector<Rat>>& exact) {
        CVec full;
        std::size_t fi = 0, zi = 0;
        for (std::size_t v = 0; v < d; ++v) {
          if (v + k >= d)
            full.push_back(z[zi++]);
          else
            full.push_back(Complex(fixed[fi++]));
        }
        for (const auto& g : spec.composed) {
          CVec pt = full;
          pt.resize(spec.map.ctx->size(), Complex(0));
          if (!(g.eval_t<Complex>(pt).abs() < accept)) return false;
        }
        SamplePoint sp;
        sp.z = full;
        if (exact) {
          std::vector<Rat> xq = fixed;
          for (const auto& q : *exact) xq.push_back(q);
          sp.exact = std::move(xq);
        }
        out.push_back(std::move(sp));
        return true;
      };

      if (k == 1) {
        std::size_t v = d - 1;
        Polynomial g = Polynomial::substitute(spec.composed[0], slice_args(spec.map.ctx, fixed, {v}));
        long deg = g.degree(v);
        if (deg <= 0) continue;
        if (deg == 1) {
          auto cs = coeffs_in_var(g, v);
          Rat root = -cs[0].constant_value() / cs[1].constant_value();
          found = finish({Complex(root)}, std::vector<Rat>{root});
          continue;
        }
        CVec cs = uni_coeffs_complex(g, v);
        CVec roots = poly_roots(cs);
        std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
          if (!(a.re == b.re)) return a.re < b.re;
          return a.im < b.im;
        });
        for (auto& r : roots) {
          Complex z = polish_uni(cs, r);
          if (finish({z}, std::nullopt)) {
            found = true;
            break;
          }
        }
      } else {
        std::size_t v1 = d - 2, v2 = d - 1;
        auto args = slice_args(spec.map.ctx, fixed, {v1, v2});
        TwoGenSlice sl{Polynomial::substitute(spec.composed[0], args),
                       Polynomial::substitute(spec.composed[1], args), v1, v2};

        // Prefer a generator linear in one of the solve variables.
        struct LinearRoute {
          const Polynomial *lin, *other;
          std::size_t lin_var, free_var;
        };
        std::optional<LinearRoute> route;
        if (sl.g2.degree(v1) == 1) route = LinearRoute{&sl.g2, &sl.g1, v1, v2};
        else if (sl.g2.degree(v2) == 1) route = LinearRoute{&sl.g2, &sl.g1, v2, v1};
        else if (sl.g1.degree(v1) == 1) route = LinearRoute{&sl.g1, &sl.g2, v1, v2};
        else if (sl.g1.degree(v2) == 1) route = LinearRoute{&sl.g1, &sl.g2, v2, v1};

        Polynomial uni(spec.map.ctx);
        std::size_t uni_var;
        std::optional<std::pair<Polynomial, Polynomial>> lin_expr;  // lin_var = -c0/c1
        if (route) {
          auto cs = coeffs_in_var(*route->lin, route->lin_var);
          // substitution other(lin_var -> -c0/c1): sum_e coeff_e (-c0)^e c1^(deg-e)
          auto oc = coeffs_in_var(*route->other, route->lin_var);
          long od = static_cast<long>(oc.size()) - 1;
          GeoBucket acc(spec.map.ctx, TermOrder::grevlex());
          for (long e = 0; e <= od; ++e) {
            Polynomial term = oc[e] * (-cs[0]).pow(e) * cs[1].pow(od - e);
            acc.add(term);
          }
          uni = acc.finalize();
          uni_var = route->free_var;
          lin_expr = std::make_pair(-cs[0], cs[1]);
        } else {
          uni = sylvester_resultant(sl.g1, sl.g2, v1);
          uni_var = v2;
        }
        if (uni.degree(uni_var) <= 0) continue;

        CVec ucs = uni_coeffs_complex(uni, uni_var);
        CVec roots = poly_roots(ucs);
        std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
          if (!(a.re == b.re)) return a.re < b.re;
          return a.im < b.im;
        });
        std::size_t nv = spec.map.ctx->size();
        for (auto& r : roots) {
          Complex beta = polish_uni(ucs, r);
          CVec cand(nv, Complex(0));
          Complex alpha;
          if (route) {
            cand[route->free_var] = beta;
            Complex c0 = lin_expr->first.eval_t<Complex>(cand);
            Complex c1 = lin_expr->second.eval_t<Complex>(cand);
            if (c1.is_zero()) continue;
            alpha = c0 / c1;
            Complex a = (route->lin_var == v1) ? alpha : beta;
            Complex b = (route->lin_var == v1) ? beta : alpha;
            if (polish_pair(sl, a, b, accept) && finish({a, b}, std::nullopt)) {
              found = true;
              break;
            }
          } else {
            // roots of g1(v1, beta) in v1, matched against g2.
            CVec betavec(nv, Complex(0));
            betavec[v2] = beta;
            auto g1c = coeffs_in_var(sl.g1, v1);
            CVec c1v;
            for (auto& c : g1c) c1v.push_back(c.eval_t<Complex>(betavec));
            CVec r1 = poly_roots(c1v);
            for (auto& a0 : r1) {
              Complex a = a0, b = beta;
              if (polish_pair(sl, a, b, accept) && finish({a, b}, std::nullopt)) {
                found = true;
                break;
              }
            }
            if (found) break;
          }
        }
      }
    }
    if (!found)
      throw Error("sample_on_variety: no solution found for (" + spec.map_id + ", " +
                  std::to_string(spec.period) + ") after bounded retries");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Period verification on samples

PeriodVerdict verify_period_on_samples(const VarietySpec& spec,
                                       const std::vector<SamplePoint>& samples,
                                       mpfr_prec_t precision, double tol) {
  Real::PrecGuard guard(precision);
  Real rtol = Real(tol);
  PeriodVerdict verdict;
  verdict.total = samples.size();
  std::size_t n = spec.period;

  for (const auto& sp : samples) {
    try {
      if (sp.exact) {
        // Fully rational sample: everything is exact arithmetic.
        std::vector<Rat> x = *sp.exact;
        bool on_variety = true;
        std::vector<std::vector<Rat>> orbit{x};
        for (std::size_t s = 0; s < n; ++s) {
          for (const auto& g : spec.composed) {
            std::vector<Rat> pt = orbit.back();
            pt.resize(spec.map.ctx->size(), Rat(0));
            if (!is_zero(g.eval(pt))) on_variety = false;
          }
          orbit.push_back(spec.map.step(orbit.back()));
        }
        bool returns = orbit[n] == orbit[0];
        bool divisor = false;
        for (std::size_t m = 1; m < n; ++m)
          if (n % m == 0 && orbit[m] == orbit[0]) divisor = true;
        if (!returns || !on_variety)
          ++verdict.failed;
        else if (divisor)
          ++verdict.degenerate;
        else
          ++verdict.verified;
        continue;
      }

      CVec x = sp.z;
      std::vector<CVec> orbit{x};
      bool on_variety = true;
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& g : spec.composed) {
          CVec pt = orbit.back();
          pt.resize(spec.map.ctx->size(), Complex(0));
          if (!(g.eval_t<Complex>(pt).abs() < rtol)) on_variety = false;
        }
        orbit.push_back(spec.map.step(orbit.back()));
      }
      Real ret(0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        Real c = (orbit[n][i] - orbit[0][i]).abs();
        if (c > ret) ret = c;
      }
      bool divisor = false;
      for (std::size_t m = 1; m < n; ++m) {
        if (n % m != 0) continue;
        Real dm(0);
        for (std::size_t i = 0; i < x.size(); ++i) {
          Real c = (orbit[m][i] - orbit[0][i]).abs();
          if (c > dm) dm = c;
        }
        if (dm < rtol) divisor = true;
      }
      if (!(ret < rtol) || !on_variety)
        ++verdict.failed;
      else if (divisor)
        ++verdict.degenerate;
      else
        ++verdict.verified;
    } catch (SingularityHit&) {
      ++verdict.discarded;
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Scans

ScanVerdict uncorrelated_scan(const Rat& a, std::size_t n, std::size_t samples,
                              mpfr_prec_t precision, std::uint64_t seed, double fail_threshold) {
  Real::PrecGuard guard(precision);
  VarietySpec surrogate = gamma_catalog("lv3", 2);
  RationalMap deformed = build_lv3(a);
  auto pts = sample_on_variety(surrogate, samples, precision, seed);
  Real thr(fail_threshold);
  ScanVerdict v;
  v.total = pts.size();
  for (const auto& sp : pts) {
    try {
      CVec x = sp.z;
      CVec cur = x;
      for (std::size_t s = 0; s < n; ++s) cur = deformed.step(cur);
      Real res(0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        Real c = (cur[i] - x[i]).abs();
        if (c > res) res = c;
      }
      if (res > thr)
        ++v.failed_periodicity;
      else
        ++v.passed;
    } catch (SingularityHit&) {
      ++v.failed_periodicity;  // a singular orbit certainly does not return
    }
  }
  return v;
}

Complex omega() {
  Real third = Real(2) * Real::pi() / Real(3);
  return Complex(cos(third), sin(third));
}

IsolationScan proposition2_scan(std::size_t n, std::size_t starts, mpfr_prec_t precision,
                                std::uint64_t seed, double tol) {
  VarietySpec spec = gamma_catalog("lv3", n);
  SearchConfig cfg;
  cfg.period = n;
  cfg.starts = starts;
  cfg.precision = precision;
  cfg.seed = seed;
  auto found = newton_periodic_search(spec.map, cfg);

  Real::PrecGuard guard(precision);
  Real rtol = Real(tol);
  IsolationScan scan;
  scan.converged = found.size();
  Complex w = omega();
  Complex w2 = w * w;
  for (const auto& rep : found) {
    CVec pt = rep.point;
    pt.resize(spec.map.ctx->size(), Complex(0));
    if (spec.composed[0].eval_t<Complex>(pt).abs() < rtol) {
      ++scan.on_variety;
      continue;
    }
    bool special = false;
    if (n == 3) {
      // The period-3 lines: two cyclically adjacent coordinates equal to
      // 1, -omega, or -omega^2.
      for (const Complex& c : {Complex(1), -w, -w2}) {
        for (std::size_t i = 0; i < 3; ++i) {
          std::size_t j = (i + 1) % 3;
          if ((rep.point[i] - c).abs() < rtol && (rep.point[j] - c).abs() < rtol) special = true;
        }
      }
    }
    if (special)
      ++scan.on_special_loci;
    else
      ++scan.off_everything;
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Special loci

std::vector<SpecialLocus> special_loci_catalog() {
  std::vector<SpecialLocus> loci;

  auto fixed_line = [](std::string desc, auto maker) {
    SpecialLocus l;
    l.description = std::move(desc);
    l.period = 1;
    l.rational = true;
    l.point_exact = maker;
    return l;
  };
  loci.push_back(fixed_line("x=y=0", [](const Rat& t) { return std::vector<Rat>{Rat(0), Rat(0), t}; }));
  loci.push_back(fixed_line("y=z=0", [](const Rat& t) { return std::vector<Rat>{t, Rat(0), Rat(0)}; }));
  loci.push_back(fixed_line("z=x=0", [](const Rat& t) { return std::vector<Rat>{Rat(0), t, Rat(0)}; }));
  loci.push_back(fixed_line("x=y=z", [](const Rat& t) { return std::vector<Rat>{t, t, t}; }));

  auto cycle_line = [](std::string desc, auto maker) {
    SpecialLocus l;
    l.description = std::move(desc);
    l.period = 3;
    l.rational = true;
    l.point_exact = maker;
    return l;
  };
  loci.push_back(cycle_line("x=y=1", [](const Rat& t) { return std::vector<Rat>{Rat(1), Rat(1), t}; }));
  loci.push_back(cycle_line("y=z=1", [](const Rat& t) { return std::vector<Rat>{t, Rat(1), Rat(1)}; }));
  loci.push_back(cycle_line("z=x=1", [](const Rat& t) { return std::vector<Rat>{Rat(1), t, Rat(1)}; }));

  struct OmegaPos {
    const char* desc;
    int i, j;  // the two coordinates pinned to -omega^k
  };
  for (int power = 1; power <= 2; ++power) {
    for (OmegaPos op : {OmegaPos{"x=y", 0, 1}, OmegaPos{"y=z", 1, 2}, OmegaPos{"z=x", 2, 0}}) {
      SpecialLocus l;
      l.description = std::string(op.desc) + "=-omega" + (power == 2 ? "^2" : "");
      l.period = 3;
      l.rational = false;
      int i = op.i, j = op.j;
      l.point_numeric = [i, j, power](const Complex& z) {
        Complex w = omega();
        Complex val = -(power == 1 ? w : w * w);
        CVec p(3, z);
        p[i] = val;
        p[j] = val;
        return p;
      };
      loci.push_back(std::move(l));
    }
  }
  return loci;
}

}  // namespace ivp
