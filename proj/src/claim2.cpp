#include "premetric/claim2.hpp"

#include <chrono>

#include "premetric/fresnel.hpp"
#include "premetric/identity.hpp"
#include "premetric/metric.hpp"
#include "premetric/univariate.hpp"

namespace premetric {

std::string to_string(Claim2Scale s) { return s == Claim2Scale::Reduced ? "reduced" : "full"; }

std::optional<std::vector<MultiPoly>> psd_square_split(const MultiPoly& p) {
  if (p.is_zero() || !p.vars()) return std::nullopt;
  for (const auto& t : p.terms())
    if (total_degree(t.exp) != 2) return std::nullopt;
  std::vector<std::size_t> used;
  for (std::size_t k = 0; k < p.nvars(); ++k)
    if (p.degree_in(k) > 0) used.push_back(k);
  const std::size_t n = used.size();
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& t : p.terms()) {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < n; ++i)
      for (int e = 0; e < t.exp[used[i]]; ++e) at.push_back(i);
    if (at[0] == at[1]) {
      g[at[0]][at[0]] += t.coeff;
    } else {
      g[at[0]][at[1]] += t.coeff / 2;
      g[at[1]][at[0]] += t.coeff / 2;
    }
  }
  std::vector<MultiPoly> forms;
  std::vector<bool> done(n, false);
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(g[i][i]) < 0) return std::nullopt;
      if (sgn(g[i][i]) > 0 && piv == n) piv = i;
    }
    if (piv == n) {
      // A zero diagonal forces the whole remaining row to vanish.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(g[i][j]) != 0) return std::nullopt;
      break;
    }
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j)
      if (!done[j] && sgn(g[piv][j]) != 0) {
        Term t;
        t.exp[used[j]] = 1;
        t.coeff = g[piv][j];
        terms.push_back(std::move(t));
      }
    forms.push_back(MultiPoly::from_terms(p.vars(), std::move(terms), p.order()).monic());
    const Rational d = g[piv][piv];
    const std::vector<Rational> row = g[piv];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] -= row[i] * row[j] / d;
    done[piv] = true;
  }
  return forms;
}

namespace {

std::optional<Rational> rational_cbrt(const Rational& q) {
  mpz_class num, den;
  const mpz_class qn = q.get_num(), qd = q.get_den();
  if (mpz_root(num.get_mpz_t(), qn.get_mpz_t(), 3) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), qd.get_mpz_t(), 3) == 0) return std::nullopt;
  return canonical(Rational(num, den));
}

bool has_pure_power(const GroebnerBasis& gb, std::size_t var) {
  for (const auto& p : gb.polys) {
    const Exponent& e = p.leading().exp;
    bool pure = e[var] > 0;
    for (std::size_t k = 0; k < kMaxVars && pure; ++k) pure = k == var || e[k] == 0;
    if (pure) return true;
  }
  return false;
}

struct System {
  VarTablePtr vars;
  std::vector<MultiPoly> equations;
};

System build_system(Claim2Scale scale, const Rational& lambda) {
  std::vector<std::string> names;
  if (scale == Claim2Scale::Reduced) {
    names = {"c1", "c2", "c3", "a1", "a2", "a3", "b1", "b2", "b3"};
  } else {
    for (std::size_t f = 0; f < 36; ++f) names.push_back(mask_variable_name(f));
  }
  names.emplace_back("L");
  System sys;
  sys.vars = make_vars(names);
  const std::size_t lvar = names.size() - 1;
  auto var = [&](std::size_t i) { return PolyExpr(MultiPoly::variable(sys.vars, i)); };

  ABCDBlocks<PolyExpr> b;
  if (scale == Claim2Scale::Reduced) {
    for (std::size_t i = 0; i < 3; ++i) {
      b.C[i][i] = var(i);
      b.D[i][i] = var(i);
      b.A[i][i] = var(3 + i);
      b.B[i][i] = var(6 + i);
    }
  } else {
    Mat<PolyExpr, 3>* blocks[4] = {&b.A, &b.B, &b.C, &b.D};
    for (std::size_t f = 0; f < 36; ++f) (*blocks[f / 9])[(f % 9) / 3][f % 3] = var(f);
  }
  const auto kappa = kappa_from_blocks(b);
  const auto gk = tamm_rubilar(kappa);
  const auto gs = tamm_rubilar(hodge_star(Metric4<Rational>::minkowski()));
  const MultiPoly l = MultiPoly::variable(sys.vars, lvar);
  for (std::size_t n = 0; n < 35; ++n) {
    MultiPoly e = MultiPoly::constant(gs[n], sys.vars) - l * gk[n].expand();
    if (!e.is_zero()) sys.equations.push_back(std::move(e));
  }
  sys.equations.push_back(trace(kappa).expand().with_vars(sys.vars));
  sys.equations.push_back(l - MultiPoly::constant(lambda, sys.vars));
  return sys;
}

}  // namespace

Claim2Report claim2_groebner_repro(const Claim2Options& opts) {
  const auto start = std::chrono::steady_clock::now();
  Claim2Report rep;
  rep.scale = opts.scale;
  rep.lambda = canonical(opts.lambda);
  const System sys = build_system(opts.scale, rep.lambda);
  rep.variables = sys.vars->names;
  rep.equations = sys.equations.size();
  const auto order = MonomialOrder::lex();

  rep.complex_basis = buchberger(sys.equations, order, opts.deadline, &rep.stats);
  rep.real_basis = rep.complex_basis;
  // Real points of a sum of squares of linear forms lie on every one of them.
  for (;;) {
    std::vector<MultiPoly> added;
    for (const auto& p : rep.real_basis.polys) {
      const auto split = psd_square_split(p);
      if (!split) continue;
      for (const auto& f : *split)
        if (!normal_form(f, rep.real_basis.polys, order).is_zero()) added.push_back(f);
    }
    if (added.empty()) break;
    ++rep.sos_rounds;
    rep.real_constraints.insert(rep.real_constraints.end(), added.begin(), added.end());
    auto gens = rep.real_basis.polys;
    gens.insert(gens.end(), added.begin(), added.end());
    rep.real_basis = buchberger(gens, order, opts.deadline, &rep.stats);
  }

  const std::size_t nv = sys.vars->names.size();
  rep.zero_dimensional = true;
  for (std::size_t v = 0; v + 1 < nv; ++v) rep.zero_dimensional = rep.zero_dimensional && has_pure_power(rep.real_basis, v);

  // Expected ideal: L = lambda, L t^3 = 1 with t = b3, b1 = b2 = b3, a_i = -t, c_i = 0, other entries 0.
  if (sgn(rep.lambda) != 0) {
    const UPoly<Rational> cubic(std::vector<Rational>{Rational(-1), Rational(0), Rational(0), rep.lambda});
    rep.unique_real_solution = count_real_roots(cubic) == 1;
    rep.t = rational_cbrt(canonical(Rational(1 / rep.lambda)));

    auto x = [&](const std::string& name) { return MultiPoly::variable(sys.vars, sys.vars->index_of(name)); };
    auto c = [&](const Rational& q) { return MultiPoly::constant(q, sys.vars); };
    const auto star = blocks_from_kappa(hodge_star(Metric4<Rational>::minkowski()));
    const std::string tname = opts.scale == Claim2Scale::Reduced ? "b3" : "B33";
    const MultiPoly t = x(tname);
    std::vector<MultiPoly> expected = {x("L") - c(rep.lambda), t * t * t * c(rep.lambda) - c(1)};
    std::vector<Rational> point(nv, Rational(0));
    point[nv - 1] = rep.lambda;
    if (opts.scale == Claim2Scale::Reduced) {
      for (std::size_t i = 0; i < 3; ++i) {
        expected.push_back(x("c" + std::to_string(i + 1)));
        expected.push_back(x("a" + std::to_string(i + 1)) - t.scaled(star.A[i][i]));
        if (i < 2) expected.push_back(x("b" + std::to_string(i + 1)) - t.scaled(star.B[i][i]));
        if (rep.t) {
          point[3 + i] = *rep.t * star.A[i][i];
          point[6 + i] = *rep.t * star.B[i][i];
        }
      }
    } else {
      const Mat<Rational, 3>* blocks[4] = {&star.A, &star.B, &star.C, &star.D};
      for (std::size_t f = 0; f < 36; ++f) {
        const Rational& s = (*blocks[f / 9])[(f % 9) / 3][f % 3];
        if (mask_variable_name(f) != tname) expected.push_back(MultiPoly::variable(sys.vars, f) - t.scaled(s));
        if (rep.t) point[f] = *rep.t * s;
      }
    }
    const auto expected_gb = buchberger(expected, order, opts.deadline);
    rep.matches_cube_root = expected_gb.polys == rep.real_basis.polys;
    if (rep.t) {
      rep.solution_verified = true;
      for (const auto& e : sys.equations) rep.solution_verified = rep.solution_verified && sgn(e.evaluate(point)) == 0;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace premetric
