#include "premetric/groebner.hpp"

#include <algorithm>
#include <map>

namespace premetric {

namespace {

struct OrderLess {
  const MonomialOrder* order;
  std::size_t n;
  bool operator()(const Exponent& a, const Exponent& b) const { return order->greater(a, b, n); }
};

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (a[k] != 0 && b[k] != 0) return false;
  return true;
}

VarTablePtr table_of(const std::vector<MultiPoly>& ps) {
  for (const auto& p : ps)
    if (p.vars()) return p.vars();
  return nullptr;
}

}  // namespace

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Term& lf = f.leading();
  const Term& lg = g.leading();
  const Exponent l = lcm(lf.exp, lg.exp);
  return f.mul_term(quotient(l, lf.exp), Rational(1 / lf.coeff)) - g.mul_term(quotient(l, lg.exp), Rational(1 / lg.coeff));
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis, const MonomialOrder& order) {
  VarTablePtr vars = f.vars() ? f.vars() : table_of(basis);
  const std::size_t n = vars ? vars->names.size() : 0;
  std::vector<MultiPoly> b;
  for (const auto& g : basis)
    if (!g.is_zero()) b.push_back(g.order() == order ? g : g.with_order(order));

  std::map<Exponent, Rational, OrderLess> work(OrderLess{&order, n});
  for (const auto& t : f.terms()) work.emplace(t.exp, t.coeff);
  std::vector<Term> rem;
  while (!work.empty()) {
    auto top = work.begin();
    const MultiPoly* div = nullptr;
    for (const auto& g : b)
      if (divides(g.leading().exp, top->first)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.push_back({top->first, top->second});
      work.erase(top);
      continue;
    }
    const Exponent shift = quotient(top->first, div->leading().exp);
    const Rational c = top->second / div->leading().coeff;
    for (const auto& t : div->terms()) {
      Exponent e{};
      for (std::size_t k = 0; k < kMaxVars; ++k) e[k] = static_cast<std::uint8_t>(t.exp[k] + shift[k]);
      auto [it, inserted] = work.try_emplace(e, 0);
      it->second -= c * t.coeff;
      if (sgn(it->second) == 0) work.erase(it);
    }
  }
  return MultiPoly::from_terms(vars, std::move(rem), order);
}

GroebnerBasis buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order, const Deadline& deadline,
                         GroebnerStats* stats) {
  GroebnerStats local;
  GroebnerStats& st = stats ? *stats : local;
  std::vector<MultiPoly> g;
  for (const auto& p : gens)
    if (!p.is_zero()) g.push_back(p.with_order(order).monic());
  if (g.empty()) throw Error(ErrorCode::EmptyIdeal, "no nonzero generators");
  const std::size_t n = g.front().nvars();

  struct Pair {
    std::size_t i, j;
    Exponent lcm;
  };
  std::vector<Pair> pending;
  std::vector<std::vector<bool>> done;
  auto is_done = [&](std::size_t a, std::size_t b) { return done[std::max(a, b)][std::min(a, b)]; };
  auto add_row = [&]() {
    done.emplace_back(done.size() + 1, false);
    const std::size_t j = g.size() - 1;
    for (std::size_t i = 0; i < j; ++i) pending.push_back({i, j, lcm(g[i].leading().exp, g[j].leading().exp)});
  };
  for (std::size_t j = 0; j < g.size(); ++j) {
    done.emplace_back(j + 1, false);
    for (std::size_t i = 0; i < j; ++i) pending.push_back({i, j, lcm(g[i].leading().exp, g[j].leading().exp)});
  }

  while (!pending.empty()) {
    deadline.check("buchberger");
    // Normal selection: smallest lcm first.
    auto best = pending.begin();
    for (auto it = pending.begin() + 1; it != pending.end(); ++it)
      if (order.greater(best->lcm, it->lcm, n)) best = it;
    const Pair p = *best;
    pending.erase(best);
    ++st.pairs_considered;
    done[p.j][p.i] = true;

    if (coprime(g[p.i].leading().exp, g[p.j].leading().exp)) {
      ++st.product_skips;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == p.i || k == p.j) continue;
      chain = divides(g[k].leading().exp, p.lcm) && is_done(p.i, k) && is_done(p.j, k);
    }
    if (chain) {
      ++st.chain_skips;
      continue;
    }
    ++st.pairs_reduced;
    MultiPoly r = normal_form(s_polynomial(g[p.i], g[p.j]), g, order);
    if (r.is_zero()) continue;
    g.push_back(r.monic());
    add_row();
  }

  // Minimal basis, then interreduce.
  std::vector<MultiPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
      if (k == i || !divides(g[k].leading().exp, g[i].leading().exp)) continue;
      redundant = g[k].leading().exp != g[i].leading().exp || k < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  GroebnerBasis out;
  out.order = order;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MultiPoly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(k < i ? out.polys[k] : minimal[k]);
    const Term lead = minimal[i].leading();
    MultiPoly tail = minimal[i] - MultiPoly::from_terms(minimal[i].vars(), {lead}, order);
    MultiPoly red = MultiPoly::from_terms(minimal[i].vars(), {lead}, order) + normal_form(tail, others, order);
    out.polys.push_back(red.monic());
  }
  std::sort(out.polys.begin(), out.polys.end(),
            [&](const MultiPoly& a, const MultiPoly& b) { return order.greater(b.leading().exp, a.leading().exp, n); });
  return out;
}

bool is_groebner_basis(const std::vector<MultiPoly>& basis, const MonomialOrder& order) {
  std::vector<MultiPoly> b;
  for (const auto& p : basis) b.push_back(p.with_order(order));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!normal_form(s_polynomial(b[i], b[j]), b, order).is_zero()) return false;
  return true;
}

}  // namespace premetric
