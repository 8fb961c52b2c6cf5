#include "ivp/maps.hpp"

#include <algorithm>
#include <functional>

#include "ivp/poly_io.hpp"

namespace ivp {

std::vector<RationalFunction> RationalMap::compose_args() const {
  std::vector<RationalFunction> args = components;
  for (std::size_t v = dim; v < ctx->size(); ++v) args.push_back(RationalFunction::variable(ctx, v));
  return args;
}

std::vector<Rat> RationalMap::step(std::span<const Rat> x) const {
  if (has_symbolic_params()) throw Error("numeric step on a map with symbolic parameters");
  if (x.size() != dim) throw Error("map step: point arity mismatch");
  std::vector<Rat> full(x.begin(), x.end());
  std::vector<Rat> out;
  out.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) out.push_back(components[j].eval_t<Rat>(full));
  return out;
}

CVec RationalMap::step(const CVec& x) const {
  if (has_symbolic_params()) throw Error("numeric step on a map with symbolic parameters");
  if (x.size() != dim) throw Error("map step: point arity mismatch");
  CVec out;
  out.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) out.push_back(components[j].eval_t<Complex>(x));
  return out;
}

nlohmann::json RationalMap::descriptor_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["descriptor"] = descriptor;
  j["dimension"] = dim;
  j["variables"] = ctx->names();
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components) {
    comps.push_back({{"num", poly_to_string(c.num())}, {"den", poly_to_string(c.den())}});
  }
  j["components"] = std::move(comps);
  nlohmann::json invs = nlohmann::json::object();
  for (const auto& [n, h] : invariants) invs[n] = h.to_string();
  j["invariants"] = std::move(invs);
  return j;
}

// ---------------------------------------------------------------------------
// 3d Lotka-Volterra with deformation

RationalMap build_lv3(const std::optional<Rat>& a) {
  RationalMap m;
  m.name = "lv3";
  m.dim = 3;
  bool symbolic = !a.has_value();
  m.parameters["a"] = a;
  if (symbolic) {
    m.ctx = VarContext::make({"x", "y", "z", "a"});
    m.descriptor = "lv3(a=sym)";
  } else {
    m.ctx = VarContext::make({"x", "y", "z"});
    m.descriptor = "lv3(a=" + rat_to_string(*a) + ")";
  }
  VarCtx full = VarContext::make({"x", "y", "z", "a"});
  Polynomial fx = parse_poly("x*(1-y+y*z) + a*(1-z+z*x)", full);
  Polynomial gx = parse_poly("1-z+z*x", full);
  Polynomial fy = parse_poly("y*(1-z+z*x) + 2*a*(1-x+x*y)", full);
  Polynomial gy = parse_poly("1-x+x*y", full);
  Polynomial fz = parse_poly("z*(1-x+x*y)", full);
  Polynomial gz = parse_poly("1-y+y*z", full);
  auto bind = [&](const Polynomial& p) {
    if (symbolic) return p;
    std::vector<Polynomial> args;
    for (std::size_t v = 0; v < 3; ++v) args.push_back(Polynomial::variable(m.ctx, v));
    args.push_back(Polynomial::constant(m.ctx, *a));
    return Polynomial::substitute(p, args);
  };
  m.components.emplace_back(bind(fx), bind(gx));
  m.components.emplace_back(bind(fy), bind(gy));
  m.components.emplace_back(bind(fz), bind(gz));
  if (!symbolic && is_zero(*a)) {
    m.invariants.emplace_back("r", RationalFunction(parse_poly("x*y*z", m.ctx)));
    m.invariants.emplace_back("s", RationalFunction(parse_poly("(1-x)(1-y)(1-z)", m.ctx)));
  }
  return m;
}

// ---------------------------------------------------------------------------
// General-d Lotka-Volterra by cyclic elimination

namespace {

std::vector<std::string> lv_names(std::size_t d) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= d; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

}  // namespace

RationalMap build_lv_general(std::size_t d) {
  if (d < 3) throw Error("Lotka-Volterra map needs dimension >= 3");
  RationalMap m;
  m.name = "lv";
  m.descriptor = "lv(d=" + std::to_string(d) + ")";
  m.dim = d;
  m.ctx = VarContext::make(lv_names(d));

  // Extended ring with the unknown first component w.
  auto ext_names = lv_names(d);
  ext_names.push_back("w");
  VarCtx ext = VarContext::make(ext_names);
  std::size_t wi = d;

  auto x = [&](std::size_t j) {  // 1-based, cyclic
    std::size_t idx = ((j - 1) % d + d) % d;
    return Polynomial::variable(ext, idx);
  };
  Polynomial one = Polynomial::constant(ext, Rat(1));
  auto q = [&](std::size_t j) { return x(j) * (one - x(j + 1)); };

  // Propagate X_j = q_j / (1 - X_{j-1}) starting from X_1 = w.
  std::vector<RationalFunction> chain(d + 1);
  chain[1] = RationalFunction::variable(ext, wi);
  RationalFunction rf_one(one);
  for (std::size_t j = 2; j <= d; ++j) chain[j] = RationalFunction(q(j)) / (rf_one - chain[j - 1]);

  // Closing relation: w (1 - X_d) = q_1. The trivial frozen branch
  // X_j = 1 - x_{j+1} always solves the system; divide it out to reach the
  // linear condition for the dynamical branch.
  RationalFunction closing = chain[1] * (rf_one - chain[d]) - RationalFunction(q(1));
  Polynomial consistency = closing.num();
  Polynomial spurious = Polynomial::variable(ext, wi) - (one - x(2));
  auto reduced = Polynomial::try_divide(consistency, spurious);
  if (!reduced) throw Error("lv elimination: frozen branch did not divide the closing relation");
  auto wcoeffs = coeffs_in_var(*reduced, wi);
  if (wcoeffs.size() != 2) throw Error("lv elimination: closing relation is not linear");
  Polynomial x1num = drop_to_ctx(-wcoeffs[0], m.ctx);
  Polynomial x1den = drop_to_ctx(wcoeffs[1], m.ctx);

  // Back-substitute through the chain, now over the plain ring.
  auto xm = [&](std::size_t j) {
    std::size_t idx = ((j - 1) % d + d) % d;
    return Polynomial::variable(m.ctx, idx);
  };
  Polynomial onem = Polynomial::constant(m.ctx, Rat(1));
  RationalFunction rf_onem(onem);
  m.components.resize(d);
  m.components[0] = RationalFunction(x1num, x1den);
  for (std::size_t j = 2; j <= d; ++j) {
    Polynomial qj = xm(j) * (onem - xm(j + 1));
    m.components[j - 1] = RationalFunction(qj) / (rf_onem - m.components[j - 2]);
  }

  for (auto& [nm, h] : lv_invariants(d)) m.invariants.emplace_back(nm, RationalFunction(h));
  return m;
}

Polynomial lv_hk_closed_form(std::size_t d, std::size_t k, const VarCtx& ctx) {
  auto x = [&](std::size_t j) {  // 1-based, cyclic
    return Polynomial::variable(ctx, ((j - 1) % d + d) % d);
  };
  Polynomial one = Polynomial::constant(ctx, Rat(1));
  auto p = [&](std::size_t j) { return x(j) * (one - x(j - 1 == 0 ? d : j - 1)); };

  if (k == 0) {
    Polynomial prod = one;
    for (std::size_t j = 1; j <= d; ++j) prod = prod * p(j);
    return (d % 2 == 0) ? one - prod : one + prod;
  }
  if (k == d) return -one;
  if (k > d / 2) return Polynomial(ctx);

  // Primed sum: all k-subsets of the cycle 1..d with no two members
  // cyclically adjacent.
  Polynomial sum(ctx);
  std::vector<std::size_t> pick;
  auto adjacent = [&](std::size_t a, std::size_t b) {
    std::size_t diff = a > b ? a - b : b - a;
    return diff == 1 || diff == d - 1;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (pick.size() == k) {
      Polynomial prod = one;
      for (auto j : pick) prod = prod * p(j);
      sum += prod;
      return;
    }
    for (std::size_t j = next; j <= d; ++j) {
      bool ok = true;
      for (auto i : pick)
        if (adjacent(i, j)) ok = false;
      if (!ok) continue;
      pick.push_back(j);
      rec(j + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return sum;
}

std::vector<std::pair<std::string, Polynomial>> lv_invariants(std::size_t d) {
  if (d < 3) throw Error("Lotka-Volterra invariants need dimension >= 3");
  VarCtx ctx = VarContext::make(lv_names(d));
  std::vector<std::pair<std::string, Polynomial>> out;
  for (std::size_t k = 1; k <= d / 2; ++k)
    out.emplace_back("H" + std::to_string(k), lv_hk_closed_form(d, k, ctx));
  Polynomial r = Polynomial::constant(ctx, Rat(1));
  for (std::size_t v = 0; v < d; ++v) r = r * Polynomial::variable(ctx, v);
  out.emplace_back("r", r);
  return out;
}

// ---------------------------------------------------------------------------
// Painleve V

RationalMap build_pv() {
  RationalMap m;
  m.name = "pv";
  m.descriptor = "pv";
  m.dim = 4;
  m.ctx = VarContext::make({"x1", "x2", "x3", "x4"});
  auto x = [&](std::size_t j) { return Polynomial::variable(m.ctx, ((j - 1) % 4 + 4) % 4); };
  Polynomial one = Polynomial::constant(m.ctx, Rat(1));
  // N_j = 1 - x_{j+1} + x_{j+1}x_{j+2} - x_{j+1}x_{j+2}x_{j+3}
  auto N = [&](std::size_t j) {
    return one - x(j + 1) + x(j + 1) * x(j + 2) - x(j + 1) * x(j + 2) * x(j + 3);
  };
  for (std::size_t j = 1; j <= 4; ++j) m.components.emplace_back(x(j) * N(j), N(j + 2));

  m.invariants.emplace_back("r", RationalFunction(parse_poly("x1*x2*x3*x4", m.ctx)));
  m.invariants.emplace_back("s", RationalFunction(parse_poly("(1-x1)(1-x2)(1-x3)(1-x4)", m.ctx)));
  m.invariants.emplace_back("v", RationalFunction(parse_poly("(1-x2*x4)(1-x1*x3)", m.ctx)));
  return m;
}

// ---------------------------------------------------------------------------
// 3-point Toda lattice

RationalMap build_toda(std::size_t N) {
  if (N != 3) throw Error("Toda map: only N = 3 is supported");
  RationalMap m;
  m.name = "toda";
  m.descriptor = "toda(N=3)";
  m.dim = 6;
  m.ctx = VarContext::make({"I1", "I2", "I3", "V1", "V2", "V3"});
  Polynomial I1 = parse_poly("I1", m.ctx), I2 = parse_poly("I2", m.ctx), I3 = parse_poly("I3", m.ctx);
  Polynomial V1 = parse_poly("V1", m.ctx), V2 = parse_poly("V2", m.ctx), V3 = parse_poly("V3", m.ctx);
  Polynomial D1 = V3 * V1 + I3 * I1 + I3 * V1;
  Polynomial D2 = I2 * V3 + V2 * V3 + I2 * I3;
  Polynomial D3 = I1 * V2 + I1 * I2 + V1 * V2;
  m.components.emplace_back(I2 * D1, D2);
  m.components.emplace_back(I3 * D3, D1);
  m.components.emplace_back(I1 * D2, D3);
  m.components.emplace_back(V1 * D2, D1);
  m.components.emplace_back(V2 * D1, D3);
  m.components.emplace_back(V3 * D3, D2);

  m.invariants.emplace_back("T1", RationalFunction(I1 + I2 + I3 + V1 + V2 + V3));
  m.invariants.emplace_back(
      "T2", RationalFunction(I1 * I2 + I2 * I3 + I3 * I1 + V1 * V2 + V2 * V3 + V3 * V1 +
                             I1 * V2 + I2 * V3 + I3 * V1));
  m.invariants.emplace_back("T3", RationalFunction(I1 * I2 * I3));
  m.invariants.emplace_back("T3p", RationalFunction(V1 * V2 * V3));
  return m;
}

// ---------------------------------------------------------------------------
// Lotka-Volterra <-> Toda bridge

std::vector<Rat> lv_toda_bridge(std::span<const Rat> x) {
  if (x.size() % 2 != 0) throw Error("bridge: Lotka-Volterra dimension must be even");
  std::size_t N = x.size() / 2;
  std::vector<Rat> out(2 * N);
  for (std::size_t j = 1; j <= N; ++j) {
    const Rat& a = x[2 * j - 2];  // x_{2j-1}
    const Rat& b = x[2 * j - 1];  // x_{2j}
    const Rat& c = x[(2 * j) % x.size()];  // x_{2j+1}, cyclic
    out[j - 1] = (1 - a) * (1 - b);
    out[N + j - 1] = b * c;
  }
  return out;
}

std::vector<RationalFunction> lv_toda_bridge_symbolic(std::size_t d) {
  if (d % 2 != 0) throw Error("bridge: Lotka-Volterra dimension must be even");
  std::size_t N = d / 2;
  VarCtx ctx = VarContext::make(lv_names(d));
  Polynomial one = Polynomial::constant(ctx, Rat(1));
  auto x = [&](std::size_t j) { return Polynomial::variable(ctx, ((j - 1) % d + d) % d); };
  std::vector<RationalFunction> out;
  for (std::size_t j = 1; j <= N; ++j) out.emplace_back((one - x(2 * j - 1)) * (one - x(2 * j)));
  for (std::size_t j = 1; j <= N; ++j) out.emplace_back(x(2 * j) * x(2 * j + 1));
  return out;
}

// ---------------------------------------------------------------------------
// Descriptor grammar: name(key=value,...)

namespace {

struct DescParser {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("map descriptor, position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (start == pos) fail("expected identifier");
    return s.substr(start, pos - start);
  }

  std::string value() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ')') ++pos;
    std::string v = s.substr(start, pos - start);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
    if (v.empty()) fail("expected value");
    return v;
  }
};

}  // namespace

RationalMap parse_map_descriptor(const std::string& text) {
  DescParser p{text};
  std::string name = p.ident();
  std::map<std::string, std::string> kv;
  p.skip_ws();
  if (p.pos < text.size() && text[p.pos] == '(') {
    ++p.pos;
    p.skip_ws();
    if (p.pos < text.size() && text[p.pos] != ')') {
      while (true) {
        std::string key = p.ident();
        p.skip_ws();
        if (p.pos >= text.size() || text[p.pos] != '=') p.fail("expected '='");
        ++p.pos;
        kv[key] = p.value();
        p.skip_ws();
        if (p.pos < text.size() && text[p.pos] == ',') {
          ++p.pos;
          continue;
        }
        break;
      }
    }
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != ')') p.fail("expected ')'");
    ++p.pos;
  }
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");

  auto only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : allowed)
        if (k == a) ok = true;
      if (!ok) throw Error("map descriptor: unknown parameter '" + k + "' for " + name);
    }
  };

  if (name == "lv3") {
    only({"a"});
    if (!kv.count("a")) return build_lv3(Rat(0));
    if (kv["a"] == "sym") return build_lv3(std::nullopt);
    return build_lv3(parse_rat(kv["a"]));
  }
  if (name == "lv") {
    only({"d"});
    if (!kv.count("d")) throw Error("map descriptor: lv needs d, e.g. lv(d=5)");
    long d = std::stol(kv["d"]);
    if (d < 3) throw Error("map descriptor: lv dimension must be >= 3");
    return build_lv_general(static_cast<std::size_t>(d));
  }
  if (name == "pv") {
    only({});
    return build_pv();
  }
  if (name == "toda") {
    only({"N"});
    long N = kv.count("N") ? std::stol(kv["N"]) : 3;
    return build_toda(static_cast<std::size_t>(N));
  }
  throw Error("map descriptor: unknown map '" + name + "'");
}

}  // namespace ivp
