#include "ivp/polynomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

namespace ivp {

// ---------------------------------------------------------------------------
// VarContext

namespace {
std::mutex g_ctx_mutex;
std::map<std::vector<std::string>, std::weak_ptr<const VarContext>>& ctx_registry() {
  static std::map<std::vector<std::string>, std::weak_ptr<const VarContext>> reg;
  return reg;
}
}  // namespace

VarCtx VarContext::make(std::vector<std::string> names) {
  if (names.size() > kMaxVars) throw Error("too many variables in context");
  std::lock_guard<std::mutex> lock(g_ctx_mutex);
  auto& reg = ctx_registry();
  auto it = reg.find(names);
  if (it != reg.end()) {
    if (auto sp = it->second.lock()) return sp;
  }
  auto sp = std::shared_ptr<const VarContext>(new VarContext(names));
  reg[std::move(names)] = sp;
  return sp;
}

VarCtx VarContext::unite(const VarCtx& a, const VarCtx& b) {
  if (a.get() == b.get()) return a;
  std::vector<std::string> names = a->names();
  for (const auto& n : b->names()) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  }
  if (names.size() == a->size()) return a;
  return make(std::move(names));
}

std::optional<std::size_t> VarContext::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::size_t> VarContext::embedding(const VarContext& from) const {
  std::vector<std::size_t> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto idx = index_of(from.name(i));
    if (!idx) throw Error("context embedding: missing variable " + from.name(i));
    map[i] = *idx;
  }
  return map;
}

// ---------------------------------------------------------------------------
// Rat helpers

Rat parse_rat(const std::string& text) {
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw Error("bad rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Polynomial basics

namespace {
const TermOrder kCanonical = TermOrder::grevlex();

struct TermLess {
  std::size_t nvars;
  bool operator()(const Term& a, const Term& b) const {
    return kCanonical.compare(a.m, b.m, nvars) < 0;
  }
};
}  // namespace

Polynomial Polynomial::constant(VarCtx ctx, Rat c) {
  Polynomial p(std::move(ctx));
  if (!ivp::is_zero(c)) p.terms_.push_back({Monomial::one(), std::move(c)});
  return p;
}

Polynomial Polynomial::variable(const VarCtx& ctx, std::size_t var) {
  if (var >= ctx->size()) throw Error("variable index out of range");
  Monomial m;
  m.set(var, 1);
  return monomial(ctx, m, Rat(1));
}

Polynomial Polynomial::monomial(VarCtx ctx, Monomial m, Rat c) {
  Polynomial p(std::move(ctx));
  if (!ivp::is_zero(c)) p.terms_.push_back({m, std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(VarCtx ctx, std::vector<Term> terms) {
  std::size_t nv = ctx->size();
  std::sort(terms.begin(), terms.end(), TermLess{nv});
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c += t.c;
      if (ivp::is_zero(out.back().c)) out.pop_back();
    } else if (!ivp::is_zero(t.c)) {
      out.push_back(std::move(t));
    }
  }
  return from_sorted(std::move(ctx), std::move(out));
}

Rat Polynomial::constant_value() const {
  if (terms_.empty()) return Rat(0);
  return terms_[0].c;
}

long Polynomial::degree(std::size_t var) const {
  if (terms_.empty()) return kDegNegInf;
  long d = 0;
  for (const auto& t : terms_) d = std::max<long>(d, t.m[var]);
  return d;
}

long Polynomial::total_degree() const {
  if (terms_.empty()) return kDegNegInf;
  return static_cast<long>(terms_.back().m.total);
}

std::size_t Polynomial::terms_with_var(std::size_t var) const {
  std::size_t n = 0;
  for (const auto& t : terms_)
    if (t.m[var] > 0) ++n;
  return n;
}

Polynomial Polynomial::with_ctx(const VarCtx& target) const {
  if (target.get() == ctx_.get()) return *this;
  auto map = target->embedding(*ctx_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < ctx_->size(); ++i) m.set(map[i], t.m[i]);
    out.push_back({m, t.c});
  }
  return from_terms(target, std::move(out));
}

void Polynomial::align(Polynomial& a, Polynomial& b) {
  if (a.ctx_.get() == b.ctx_.get()) return;
  VarCtx u = VarContext::unite(a.ctx_, b.ctx_);
  a = a.with_ctx(u);
  b = b.with_ctx(u);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ctx_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, -t.c});
  return r;
}

namespace {
// Two-pointer merge of ascending term sequences with cancellation.
std::vector<Term> merge_terms(std::vector<Term> a, std::vector<Term> b, std::size_t nv) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = kCanonical.compare(a[i].m, b[j].m, nv);
    if (c < 0) {
      out.push_back(std::move(a[i++]));
    } else if (c > 0) {
      out.push_back(std::move(b[j++]));
    } else {
      Rat s = a[i].c + b[j].c;
      if (!ivp::is_zero(s)) out.push_back({a[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(std::move(a[i++]));
  while (j < b.size()) out.push_back(std::move(b[j++]));
  return out;
}
}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  Polynomial::align(x, y);
  return Polynomial::from_sorted(x.ctx_, merge_terms(std::move(x.terms_), std::move(y.terms_), x.nvars()));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Rat& s) {
  if (ivp::is_zero(s)) return Polynomial(a.ctx_);
  Polynomial r(a.ctx_);
  r.terms_.reserve(a.terms_.size());
  for (const auto& t : a.terms_) r.terms_.push_back({t.m, t.c * s});
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rat& c) const {
  if (ivp::is_zero(c)) return Polynomial(ctx_);
  Polynomial r(ctx_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  Polynomial::align(x, y);
  if (x.is_zero() || y.is_zero()) return Polynomial(x.ctx_);
  const Polynomial& small = x.term_count() <= y.term_count() ? x : y;
  const Polynomial& big = x.term_count() <= y.term_count() ? y : x;
  if (small.term_count() == 1)
    return big.mul_term(small.terms_[0].m, small.terms_[0].c);
  GeoBucket acc(x.ctx_, kCanonical);
  for (const auto& t : small.terms()) acc.add_scaled(big.terms(), t.m, t.c);
  return acc.finalize();
}

Polynomial Polynomial::pow(unsigned long n) const {
  Polynomial result = Polynomial::constant(ctx_, Rat(1));
  if (n == 0) return result;
  Polynomial base = *this;
  while (true) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n == 0) break;
    base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (ctx_.get() == o.ctx_.get()) {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
    return true;
  }
  Polynomial x = *this, y = o;
  align(x, y);
  return x == y;
}

Rat Polynomial::eval(std::span<const Rat> point) const { return eval_t<Rat>(point); }

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.m[var] == 0) continue;
    Monomial m = t.m;
    unsigned e = m[var];
    m.set(var, e - 1);
    out.push_back({m, t.c * Rat(e)});
  }
  return from_terms(ctx_, std::move(out));
}

Polynomial Polynomial::substitute(const Polynomial& p, const std::vector<Polynomial>& args) {
  if (args.size() != p.nvars()) throw Error("substitute: arity mismatch");
  VarCtx target = args.empty() ? p.ctx() : args[0].ctx();
  for (const auto& a : args)
    if (a.ctx().get() != target.get()) throw Error("substitute: args must share a context");

  // Incremental power cache per variable.
  std::vector<std::vector<Polynomial>> pows(p.nvars());
  for (std::size_t v = 0; v < p.nvars(); ++v) pows[v].push_back(Polynomial::constant(target, Rat(1)));

  auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
    while (pows[v].size() <= e) pows[v].push_back(pows[v].back() * args[v]);
    return pows[v][e];
  };

  GeoBucket acc(target, kCanonical);
  for (const auto& t : p.terms()) {
    Polynomial prod = Polynomial::constant(target, t.c);
    for (std::size_t v = 0; v < p.nvars(); ++v)
      if (t.m[v]) prod = prod * power(v, t.m[v]);
    acc.add(prod);
  }
  return acc.finalize();
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  Polynomial x = a, y = b;
  align(x, y);
  if (x.is_zero()) return Polynomial(x.ctx_);
  if (y.is_constant()) {
    Rat inv = 1 / y.constant_value();
    return x * inv;
  }
  const Term& blead = y.terms_.back();
  GeoBucket rem(x.ctx_, kCanonical);
  rem.add(x);
  std::vector<Term> quot;  // generated descending
  std::span<const Term> btail(y.terms_.data(), y.terms_.size() - 1);
  Term lead;
  while (rem.pop_leading(lead)) {
    if (!blead.m.divides(lead.m)) return std::nullopt;
    Monomial qm = Monomial::quotient(lead.m, blead.m);
    Rat qc = lead.c / blead.c;
    rem.add_scaled(btail, qm, -qc);
    quot.push_back({qm, std::move(qc)});
  }
  std::reverse(quot.begin(), quot.end());
  return from_sorted(x.ctx_, std::move(quot));
}

Rat Polynomial::content() const {
  if (terms_.empty()) return Rat(0);
  Int num_gcd(0), den_lcm(1);
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.get_den_mpz_t());
  }
  Rat c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Polynomial Polynomial::primitive_part() const {
  if (terms_.empty()) return *this;
  Rat c = content();
  Rat inv = 1 / c;
  return *this * inv;
}

Polynomial Polynomial::monic(const TermOrder& ord) const {
  if (terms_.empty()) return *this;
  const Rat& lc = terms_[leading_index(ord)].c;
  if (is_one(lc)) return *this;
  return *this * (1 / lc);
}

std::size_t Polynomial::leading_index(const TermOrder& ord) const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  if (ord.kind == TermOrder::Kind::Grevlex && ord.perm.empty()) return terms_.size() - 1;
  std::size_t best = 0;
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (ord.compare(terms_[i].m, terms_[best].m, nvars()) > 0) best = i;
  return best;
}

bool Polynomial::well_formed() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (ivp::is_zero(terms_[i].c)) return false;
    if (i + 1 < terms_.size() && kCanonical.compare(terms_[i].m, terms_[i + 1].m, nvars()) >= 0)
      return false;
  }
  return true;
}

std::vector<Polynomial> coeffs_in_var(const Polynomial& p, std::size_t var) {
  long d = p.degree(var);
  if (d == Polynomial::kDegNegInf) d = 0;
  std::vector<std::vector<Term>> buckets(d + 1);
  for (const auto& t : p.terms()) {
    Term s = t;
    std::size_t e = t.m[var];
    s.m.set(var, 0);
    buckets[e].push_back(std::move(s));
  }
  std::vector<Polynomial> out;
  out.reserve(d + 1);
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.ctx(), std::move(b)));
  return out;
}

Polynomial drop_to_ctx(const Polynomial& p, const VarCtx& target) {
  std::vector<std::size_t> map(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    auto idx = target->index_of(p.ctx()->name(i));
    if (!idx) {
      if (p.degree(i) > 0) throw Error("drop_to_ctx: polynomial uses dropped variable " + p.ctx()->name(i));
      map[i] = kMaxVars;  // unused sentinel
    } else {
      map[i] = *idx;
    }
  }
  std::vector<Term> out;
  out.reserve(p.term_count());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (t.m[i]) m.set(map[i], t.m[i]);
    out.push_back({m, t.c});
  }
  return Polynomial::from_terms(target, std::move(out));
}

// ---------------------------------------------------------------------------
// GeoBucket

GeoBucket::GeoBucket(VarCtx ctx, TermOrder ord) : ctx_(std::move(ctx)), ord_(std::move(ord)) {}

std::vector<Term> GeoBucket::merge(std::vector<Term> a, std::vector<Term> b) {
  std::size_t nv = ctx_->size();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord_.compare(a[i].m, b[j].m, nv);
    if (c < 0) {
      out.push_back(std::move(a[i++]));
    } else if (c > 0) {
      out.push_back(std::move(b[j++]));
    } else {
      Rat s = a[i].c + b[j].c;
      if (!ivp::is_zero(s)) out.push_back({a[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(std::move(a[i++]));
  while (j < b.size()) out.push_back(std::move(b[j++]));
  return out;
}

void GeoBucket::place(std::vector<Term> stream) {
  live_ += stream.size();
  // Bucket k holds up to 4^(k+1) terms; overflow cascades upward.
  std::size_t k = 0;
  std::size_t cap = 4;
  while (cap < stream.size()) {
    cap *= 4;
    ++k;
  }
  while (true) {
    if (buckets_.size() <= k) buckets_.resize(k + 1);
    if (buckets_[k].empty()) {
      buckets_[k] = std::move(stream);
      return;
    }
    live_ -= buckets_[k].size() + stream.size();
    stream = merge(std::move(buckets_[k]), std::move(stream));
    live_ += stream.size();
    buckets_[k].clear();
    if (stream.empty()) return;
    if (stream.size() <= cap) {
      buckets_[k] = std::move(stream);
      return;
    }
    cap *= 4;
    ++k;
  }
}

void GeoBucket::add(std::vector<Term> stream) {
  if (stream.empty()) return;
  place(std::move(stream));
}

void GeoBucket::add(const Polynomial& p) {
  Polynomial q = p.ctx().get() == ctx_.get() ? p : p.with_ctx(ctx_);
  std::vector<Term> ts = q.terms();
  if (!(ord_.kind == TermOrder::Kind::Grevlex && ord_.perm.empty())) {
    std::size_t nv = ctx_->size();
    std::sort(ts.begin(), ts.end(),
              [&](const Term& a, const Term& b) { return ord_.compare(a.m, b.m, nv) < 0; });
  }
  add(std::move(ts));
}

void GeoBucket::add_scaled(std::span<const Term> stream, const Monomial& scale_m, const Rat& scale_c) {
  if (stream.empty() || ivp::is_zero(scale_c)) return;
  std::vector<Term> scaled;
  scaled.reserve(stream.size());
  for (const auto& t : stream) scaled.push_back({t.m * scale_m, t.c * scale_c});
  place(std::move(scaled));
}

bool GeoBucket::pop_leading(Term& out) {
  std::size_t nv = ctx_->size();
  while (true) {
    const Monomial* best = nullptr;
    for (auto& b : buckets_) {
      if (b.empty()) continue;
      if (!best || ord_.compare(b.back().m, *best, nv) > 0) best = &b.back().m;
    }
    if (!best) return false;
    Monomial m = *best;
    Rat sum(0);
    for (auto& b : buckets_) {
      if (!b.empty() && b.back().m == m) {
        sum += b.back().c;
        b.pop_back();
        --live_;
      }
    }
    if (!ivp::is_zero(sum)) {
      out.m = m;
      out.c = std::move(sum);
      return true;
    }
  }
}

bool GeoBucket::empty() {
  Term t;
  if (!pop_leading(t)) return true;
  place({std::move(t)});
  return false;
}

Polynomial GeoBucket::finalize() {
  std::vector<Term> all;
  for (auto& b : buckets_) {
    if (b.empty()) continue;
    all = all.empty() ? std::move(b) : merge(std::move(all), std::move(b));
  }
  buckets_.clear();
  live_ = 0;
  if (!(ord_.kind == TermOrder::Kind::Grevlex && ord_.perm.empty())) {
    // Canonical storage is grevlex-natural; re-sort if we merged differently.
    return Polynomial::from_terms(ctx_, std::move(all));
  }
  return Polynomial::from_sorted(ctx_, std::move(all));
}

}  // namespace ivp
