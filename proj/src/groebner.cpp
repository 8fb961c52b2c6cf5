#include "ivp/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace ivp {

WorkBudget WorkBudget::from_env() {
  WorkBudget b;
  if (const char* s = std::getenv("IVPLAB_MAX_TERMS")) b.max_terms = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("IVPLAB_MAX_SPAIRS")) b.max_spairs = std::strtoull(s, nullptr, 10);
  return b;
}

namespace {

// Basis element with terms re-sorted ascending under the active order.
struct Ordered {
  Polynomial original;
  std::vector<Term> terms;  // ascending under ord; leading = back
  const Term& leading() const { return terms.back(); }
  std::span<const Term> tail() const { return {terms.data(), terms.size() - 1}; }
};

Ordered make_ordered(const Polynomial& p, const TermOrder& ord) {
  Ordered o{p, p.terms()};
  std::size_t nv = p.nvars();
  std::sort(o.terms.begin(), o.terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m, nv) < 0; });
  return o;
}

}  // namespace

ReduceResult poly_reduce(const Polynomial& p, const std::vector<Polynomial>& basis,
                         const TermOrder& ord) {
  VarCtx ctx = p.ctx();
  for (const auto& b : basis) {
    if (b.is_zero()) throw Error("poly_reduce: zero basis polynomial");
    ctx = VarContext::unite(ctx, b.ctx());
  }
  std::vector<Ordered> ob;
  ob.reserve(basis.size());
  for (const auto& b : basis) ob.push_back(make_ordered(b.with_ctx(ctx), ord));

  GeoBucket work(ctx, ord);
  work.add(p.with_ctx(ctx));
  std::vector<std::vector<Term>> quot(basis.size());
  std::vector<Term> rem;  // descending under ord

  Term lead;
  while (work.pop_leading(lead)) {
    bool divided = false;
    for (std::size_t i = 0; i < ob.size(); ++i) {
      const Term& bl = ob[i].leading();
      if (bl.m.divides(lead.m)) {
        Monomial qm = Monomial::quotient(lead.m, bl.m);
        Rat qc = lead.c / bl.c;
        work.add_scaled(ob[i].tail(), qm, -qc);
        quot[i].push_back({qm, std::move(qc)});
        divided = true;
        break;
      }
    }
    if (!divided) rem.push_back(std::move(lead));
  }

  ReduceResult res;
  res.quotients.reserve(basis.size());
  for (auto& q : quot) res.quotients.push_back(Polynomial::from_terms(ctx, std::move(q)));
  res.remainder = Polynomial::from_terms(ctx, std::move(rem));
  return res;
}

namespace {

struct Pair {
  Monomial lcm;
  std::size_t i, j;
};

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const TermOrder& ord,
                                       const WorkBudget& budget, GroebnerStats* stats) {
  VarCtx ctx = gens.empty() ? VarContext::make({}) : gens[0].ctx();
  for (const auto& g : gens) ctx = VarContext::unite(ctx, g.ctx());

  std::vector<Ordered> G;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    G.push_back(make_ordered(g.with_ctx(ctx).monic(ord), ord));
  }
  std::size_t nv = ctx->size();

  GroebnerStats local;
  auto bail = [&](const char* what) -> void {
    local.basis_size = G.size();
    if (stats) *stats = local;
    throw BudgetExceeded(what, local.spairs_reduced, local.spairs_considered);
  };

  std::set<std::pair<std::size_t, std::size_t>> done;
  std::vector<Pair> pending;
  auto push_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      pending.push_back({Monomial::lcm(G[i].leading().m, G[j].leading().m), i, j});
  };
  for (std::size_t j = 1; j < G.size(); ++j) push_pairs(j);

  while (!pending.empty()) {
    // Normal strategy: smallest lcm under the order (ties by indices).
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k) {
      int c = ord.compare(pending[k].lcm, pending[best].lcm, nv);
      if (c < 0 || (c == 0 && std::tie(pending[k].i, pending[k].j) <
                                  std::tie(pending[best].i, pending[best].j)))
        best = k;
    }
    Pair pr = pending[best];
    pending.erase(pending.begin() + best);
    done.insert({pr.i, pr.j});
    ++local.spairs_considered;
    if (local.spairs_considered > budget.max_spairs) bail("groebner: S-pair budget exceeded");

    const Term& fi = G[pr.i].leading();
    const Term& fj = G[pr.j].leading();
    // Product criterion.
    if (Monomial::coprime(fi.m, fj.m)) continue;
    // Chain criterion.
    bool chained = false;
    for (std::size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!G[k].leading().m.divides(pr.lcm)) continue;
      auto key_ik = std::minmax(pr.i, k);
      auto key_jk = std::minmax(pr.j, k);
      if (done.count({key_ik.first, key_ik.second}) && done.count({key_jk.first, key_jk.second}))
        chained = true;
    }
    if (chained) continue;

    // S-polynomial, fully reduced against the current basis.
    GeoBucket s(ctx, ord);
    s.add_scaled(G[pr.i].terms, Monomial::quotient(pr.lcm, fi.m), Rat(1) / fi.c);
    s.add_scaled(G[pr.j].terms, Monomial::quotient(pr.lcm, fj.m), Rat(-1) / fj.c);

    std::vector<Term> rem;
    Term lead;
    while (s.pop_leading(lead)) {
      if (s.live_terms() > budget.max_terms) bail("groebner: term budget exceeded");
      bool divided = false;
      for (auto& g : G) {
        const Term& bl = g.leading();
        if (bl.m.divides(lead.m)) {
          s.add_scaled(g.tail(), Monomial::quotient(lead.m, bl.m), -(lead.c / bl.c));
          divided = true;
          break;
        }
      }
      if (!divided) rem.push_back(std::move(lead));
    }
    ++local.spairs_reduced;
    if (rem.empty()) continue;

    Polynomial r = Polynomial::from_terms(ctx, std::move(rem)).monic(ord);
    G.push_back(make_ordered(r, ord));
    if (G.size() > budget.max_basis) bail("groebner: basis size budget exceeded");
    push_pairs(G.size() - 1);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& mi = G[i].leading().m;
      const Monomial& mj = G[j].leading().m;
      if (mj.divides(mi) && !(mi == mj && j > i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i].original);
  }

  // Tail-reduce each against the others.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial r = others.empty() ? minimal[i] : poly_reduce(minimal[i], others, ord).remainder;
    if (!r.is_zero()) reduced.push_back(r.monic(ord));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.terms()[a.leading_index(ord)].m, b.terms()[b.leading_index(ord)].m, nv) < 0;
  });
  local.basis_size = reduced.size();
  if (stats) *stats = local;
  return reduced;
}

}  // namespace ivp
