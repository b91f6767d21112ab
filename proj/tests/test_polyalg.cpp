#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "premetric/claim2.hpp"
#include "premetric/fixtures.hpp"
#include "premetric/groebner.hpp"
#include "premetric/identity.hpp"
#include "support.hpp"

using namespace premetric;

namespace {

using Q = Rational;

struct XYZ {
  VarTablePtr vars = make_vars({"x", "y", "z"});
  MultiPoly x = MultiPoly::variable(vars, 0);
  MultiPoly y = MultiPoly::variable(vars, 1);
  MultiPoly z = MultiPoly::variable(vars, 2);
  MultiPoly c(const Q& v) const { return MultiPoly::constant(v, vars); }
};

MultiPoly random_poly(std::mt19937_64& rng, const VarTablePtr& vars, int max_deg, int max_terms) {
  const std::size_t n = vars->names.size();
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  std::vector<Term> ts;
  const int count = nterms(rng);
  for (int t = 0; t < count; ++t) {
    Term term;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++term.exp[var(rng)];
    term.coeff = testing::random_rational(rng, 4, 3);
    ts.push_back(term);
  }
  return MultiPoly::from_terms(vars, ts);
}

/// Random expression of degree at most 6; about half are identically zero.
PolyExpr random_expr(std::mt19937_64& rng, bool& zero) {
  std::uniform_int_distribution<std::size_t> nv(1, 8);
  std::vector<std::string> names;
  const std::size_t n = nv(rng);
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  const auto vars = make_vars(names);
  const MultiPoly p = random_poly(rng, vars, 3, 5);
  const MultiPoly q = random_poly(rng, vars, 3, 5);
  const MultiPoly s = random_poly(rng, vars, 2, 3);
  PolyExpr e = PolyExpr(p) * PolyExpr(q) + PolyExpr(s) * PolyExpr(s);
  MultiPoly expected = p * q + s * s;
  zero = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
  if (!zero) expected += random_poly(rng, vars, 6, 1);
  // The perturbation can cancel itself away when its coefficient is zero.
  e -= PolyExpr(expected);
  return e;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  XYZ v;
  CHECK((v.x + v.y) * (v.x - v.y) == v.x * v.x - v.y * v.y);
  CHECK((v.x * v.x * v.x * v.y).partial_derivative(0) == (v.x * v.x * v.y).scaled(Q(3)));
  CHECK((v.x * v.x + v.c(1)).evaluate({Q(2, 3), Q(0), Q(0)}) == Q(13, 9));
  CHECK((v.x * v.y).substitute(1, v.x + v.c(1)) == v.x * v.x + v.x);
  CHECK((v.x * v.y * v.y).substitute(1, Q(3)) == v.x.scaled(Q(9)));
  CHECK((v.x - v.x).is_zero());
  CHECK((v.x * v.y * v.y).degree() == 3);
  CHECK((v.x * v.y * v.y).degree_in(1) == 2);
  CHECK((v.x.scaled(Q(2)) - v.y.scaled(Q(1, 2)) + v.c(-3)).to_string() == "2*x - 1/2*y - 3");
  CHECK((v.x * v.x + v.c(1)).scaled(Q(-2)).monic() == v.x * v.x + v.c(1));

  const auto other = make_vars({"x", "w"});
  CHECK_THROWS_AS(v.x + MultiPoly::variable(other, 1), Error);
  try {
    (void)(v.x * MultiPoly::variable(other, 0));
    FAIL("expected VariableMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VariableMismatch);
  }
  // Tables with equal names are interchangeable.
  CHECK(v.x + MultiPoly::variable(make_vars({"x", "y", "z"}), 0) == v.x.scaled(Q(2)));
  CHECK_THROWS_AS(make_vars({"x"})->index_of("q"), Error);

  std::mt19937_64 rng(31);
  for (int n = 0; n < 50; ++n) {
    const auto a = random_poly(rng, v.vars, 3, 4), b = random_poly(rng, v.vars, 3, 4), c = random_poly(rng, v.vars, 3, 4);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    const std::vector<Q> pt = {testing::random_rational(rng), testing::random_rational(rng), testing::random_rational(rng)};
    CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    CHECK((a * b).partial_derivative(2) == a.partial_derivative(2) * b + a * b.partial_derivative(2));
    CHECK(a.with_order(MonomialOrder::grevlex()) == a);
  }
}

TEST_CASE("monomial orders") {
  XYZ v;
  const auto lex = MonomialOrder::lex();
  const auto grl = MonomialOrder::grevlex();
  const auto e = [](int a, int b, int c) {
    Exponent x{};
    x[0] = static_cast<std::uint8_t>(a);
    x[1] = static_cast<std::uint8_t>(b);
    x[2] = static_cast<std::uint8_t>(c);
    return x;
  };
  CHECK(lex.greater(e(1, 0, 0), e(0, 5, 5), 3));
  CHECK(grl.greater(e(0, 5, 5), e(1, 0, 0), 3));
  // grevlex breaks degree ties against the last variable.
  CHECK(grl.greater(e(1, 0, 1), e(0, 1, 1), 3));
  CHECK(grl.greater(e(0, 2, 0), e(1, 0, 1), 3));
  const auto zyx = MonomialOrder::lex({2, 1, 0});
  CHECK(zyx.greater(e(0, 0, 1), e(3, 3, 0), 3));
  const auto p = (v.x + v.z * v.z).with_order(zyx);
  CHECK(p.leading().exp == e(0, 0, 2));
}

TEST_CASE("Groebner basis examples") {
  XYZ v;
  const auto lex = MonomialOrder::lex();
  const std::vector<MultiPoly> gens = {v.x * v.y * v.z - v.c(1), v.x * v.z * v.z - v.y * v.y, v.z * v.z - v.x * v.y};
  GroebnerStats st;
  const auto gb = buchberger(gens, lex, {}, &st);
  const std::vector<MultiPoly> expected = {v.z * v.z * v.z - v.c(1), v.y * v.y * v.y - v.z, v.x - v.y * v.y * v.z};
  REQUIRE(gb.polys.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(gb.polys[i] == expected[i]);
  CHECK(is_groebner_basis(gb.polys, lex));
  for (const auto& g : gens) CHECK(normal_form(g, gb.polys, lex).is_zero());
  CHECK(st.pairs_considered > 0);

  CHECK(buchberger({v.x}, lex).polys == std::vector<MultiPoly>{v.x});
  CHECK(buchberger({v.x * v.x, v.x * v.x * v.x}, lex).polys == std::vector<MultiPoly>{v.x * v.x});
  CHECK(buchberger({v.x.scaled(Q(4)), MultiPoly()}, lex).polys == std::vector<MultiPoly>{v.x});
  CHECK(buchberger({v.x + v.c(1), v.x - v.c(1)}, lex).polys == std::vector<MultiPoly>{v.c(1)});
  CHECK_THROWS_AS(buchberger({MultiPoly(v.vars)}, lex), Error);
  CHECK_THROWS_AS(buchberger({}, lex), Error);

  CHECK(normal_form(v.x, {v.y}, lex) == v.x);
  CHECK(normal_form(v.x * v.x * v.y, {v.x * v.x}, lex).is_zero());
}

TEST_CASE("Groebner bases of random ideals") {
  XYZ v;
  std::mt19937_64 rng(37);
  for (const auto& order : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::grevlex({2, 0, 1})}) {
    for (int n = 0; n < 8; ++n) {
      std::vector<MultiPoly> gens = {random_poly(rng, v.vars, 2, 3), random_poly(rng, v.vars, 2, 3), random_poly(rng, v.vars, 2, 2)};
      const auto gb = buchberger(gens, order, Deadline(std::chrono::seconds(20)));
      CHECK(is_groebner_basis(gb.polys, order));
      for (const auto& g : gens) CHECK(normal_form(g, gb.polys, order).is_zero());
      for (const auto& g : gb.polys) CHECK(g.leading().coeff == 1);
      for (int m = 0; m < 5; ++m) {
        const auto f = random_poly(rng, v.vars, 4, 5);
        const auto r = normal_form(f, gb.polys, order);
        CHECK(normal_form(r, gb.polys, order) == r);
        for (const auto& t : r.terms())
          for (const auto& g : gb.polys) CHECK_FALSE(divides(g.leading().exp, t.exp));
        // f - r lies in the ideal
        CHECK(normal_form(f - r, gb.polys, order).is_zero());
      }
    }
  }
}

TEST_CASE("Groebner budget") {
  XYZ v;
  const Deadline expired(std::chrono::duration<double>(-1.0));
  try {
    (void)buchberger({v.x * v.y - v.c(1), v.y * v.y - v.x}, MonomialOrder::lex(), expired);
    FAIL("expected Timeout");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Timeout);
  }
}

TEST_CASE("lazy expressions agree with canonical expansion") {
  std::mt19937_64 rng(41);
  const auto vars = make_vars({"a", "b", "c", "d"});
  for (int n = 0; n < 30; ++n) {
    const auto p = random_poly(rng, vars, 4, 30), q = random_poly(rng, vars, 4, 30), r = random_poly(rng, vars, 3, 10);
    const PolyExpr e = (PolyExpr(p) * PolyExpr(q) - PolyExpr(r)) * PolyExpr(r) + PolyExpr(p).scaled(Q(3, 2));
    const MultiPoly direct = (p * q - r) * r + p.scaled(Q(3, 2));
    CHECK(e.expand() == direct);
    std::vector<Q> pt;
    for (int k = 0; k < 4; ++k) pt.push_back(testing::random_rational(rng));
    CHECK(e.evaluate(pt) == direct.evaluate(pt));
    for (std::size_t var = 0; var < 4; ++var) {
      CHECK(e.degree_bound(var) >= direct.degree_in(var));
      const auto sl = e.slices(var, static_cast<std::size_t>(e.degree_bound(var)) + 1);
      MultiPoly rebuilt(vars);
      MultiPoly power = MultiPoly::constant(Q(1), vars);
      for (const auto& s : sl) {
        CHECK(s.expand().degree_in(var) <= 0);
        rebuilt += s.expand() * power;
        power *= MultiPoly::variable(vars, var);
      }
      CHECK(rebuilt == direct);
    }
  }
  CHECK(PolyExpr().is_structural_zero());
  CHECK((PolyExpr(MultiPoly::variable(vars, 0)) * PolyExpr()).is_structural_zero());
}

TEST_CASE("Taylor verifier examples") {
  XYZ v;
  const PolyExpr x(v.x), y(v.y);
  CHECK(taylor_zero_verify((x + y) * (x + y) - x * x - (x * y).scaled(Q(2)) - y * y));
  CHECK(taylor_zero_verify(x * x * y - x * x * y + x - x));
  TaylorOptions low;
  low.var_threshold = 1;
  CHECK_FALSE(taylor_zero_verify(x * x * x * x + y, low));
  CHECK(taylor_zero_verify((x + y) * (x + y) - x * x - (x * y).scaled(Q(2)) - y * y, low));
  TaylorStats st;
  TaylorOptions k2 = low;
  k2.K = 2;
  const PolyExpr lazy = PolyExpr::unfolded_product(x * x * x * x + y, x - y);
  CHECK(taylor_zero_verify(PolyExpr::unfolded_sum(lazy, -(x * x * x * x * x - x * x * x * x * y + x * y - y * y)), k2, &st));
  CHECK(st.raised_K > 0);
}

TEST_CASE("Taylor verifier agrees with direct expansion") {
  std::mt19937_64 rng(43);
  std::vector<PolyExpr> corpus;
  std::vector<bool> truth;
  int zeros = 0;
  for (int n = 0; n < 500; ++n) {
    bool intended_zero = false;
    corpus.push_back(random_expr(rng, intended_zero));
    truth.push_back(corpus.back().expand().is_zero());
    zeros += truth.back();
  }
  CHECK(zeros > 100);
  CHECK(zeros < 400);
  for (std::size_t n = 0; n < corpus.size(); ++n) CHECK(taylor_zero_verify(corpus[n]) == truth[n]);
  for (int k = 2; k <= 6; ++k)
    for (int t = 2; t <= 6; ++t) {
      TaylorOptions o;
      o.K = k;
      o.var_threshold = t;
      int agree = 0;
      for (std::size_t n = 0; n < corpus.size(); ++n) agree += taylor_zero_verify(corpus[n], o) == truth[n];
      CHECK(agree == static_cast<int>(corpus.size()));
    }
}

TEST_CASE("Taylor verifier checkpoints and workers") {
  // Operands large enough that slicing cannot fold them away.
  std::mt19937_64 rng(53);
  const auto vars = make_vars({"a", "b", "c", "d", "e", "f"});
  MultiPoly p, q;
  do p = random_poly(rng, vars, 4, 60); while (p.size() < 30);
  do q = random_poly(rng, vars, 4, 60); while (q.size() < 30);
  REQUIRE(p.size() * q.size() > 600);
  const PolyExpr zero = PolyExpr(p) * PolyExpr(q) - PolyExpr(p * q);
  const std::vector<PolyExpr> id = {zero};
  const std::string path = "test_polyalg_checkpoint.txt";
  std::remove(path.c_str());
  TaylorOptions o;
  o.var_threshold = 3;
  o.checkpoint_path = path;
  TaylorStats first;
  CHECK(taylor_zero_verify(id[0], o, &first));
  CHECK(first.resumed == 0);
  std::ifstream in(path);
  int lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines > 0);
  TaylorStats second;
  CHECK(taylor_zero_verify(id[0], o, &second));
  CHECK(second.resumed > 0);
  CHECK(second.nodes < first.nodes);
  std::remove(path.c_str());

  TaylorOptions par;
  par.var_threshold = 3;
  par.jobs = 3;
  CHECK(taylor_zero_verify(id[0], par));
  CHECK_FALSE(taylor_zero_verify(id[0] + PolyExpr(MultiPoly::variable(vars, 2)), par));

  TaylorOptions expired;
  expired.deadline = Deadline(std::chrono::duration<double>(-1.0));
  CHECK_THROWS_AS(taylor_zero_verify(id[0], expired), Error);
}

TEST_CASE("polynomial identity testing") {
  XYZ v;
  CHECK(pit_verify(PolyExpr(), 20, 1));
  CHECK_FALSE(pit_verify(PolyExpr(v.x - v.y), 20, 2024));
  CHECK(pit_verify(PolyExpr((v.x + v.y) * (v.x - v.y)) - PolyExpr(v.x * v.x - v.y * v.y), 20, 7));
  CHECK_THROWS_AS(pit_verify(PolyExpr(), 0, 1), Error);

  std::mt19937_64 rng(5);
  const auto p = random_point(1000, rng);
  for (const auto& q : p) {
    CHECK(abs(q.get_num()) <= 65536);
    CHECK(q.get_den() >= 1);
    CHECK(q.get_den() <= 65536);
  }
}

TEST_CASE("symbolic kappa") {
  const auto none = symbolic_kappa(mask_none());
  for (const auto& row : none.kappa.matrix())
    for (const auto& x : row) CHECK(x.is_structural_zero());
  const auto full = symbolic_kappa(mask_full());
  CHECK(full.vars->names.size() == 36);
  CHECK(full.vars->names[0] == "A11");
  CHECK(full.vars->names[35] == "D33");
  CHECK(named_mask("12-var").count() == 12);
  CHECK_THROWS_AS(named_mask("bogus"), Error);

  // Evaluating the symbolic operator reproduces the numeric operator.
  std::mt19937_64 rng(47);
  const auto pt = random_point(36, rng);
  ABCDBlocks<Q> b;
  Mat<Q, 3>* blocks[4] = {&b.A, &b.B, &b.C, &b.D};
  for (std::size_t f = 0; f < 36; ++f) (*blocks[f / 9])[(f % 9) / 3][f % 3] = pt[f];
  const auto numeric = kappa_from_blocks(b);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(full.kappa(i, j).evaluate(pt) == numeric(i, j));
  const auto g = tamm_rubilar(full.kappa);
  const auto gn = tamm_rubilar(numeric);
  ExprEvaluator ev(pt);
  for (std::size_t n = 0; n < 35; ++n) CHECK(ev(g[n]) == gn[n]);
}

TEST_CASE("symbolic quartic specialises to the biaxial medium") {
  const auto k = symbolic_kappa(named_mask("6-var"));
  const auto g = tamm_rubilar(k.kappa);
  // Variables in mask order: A11 A22 A33 B11 B22 B33.
  const std::vector<Q> values = {Q(-1), Q(-2), Q(-3), Q(1), Q(1), Q(1)};
  const auto numeric = tamm_rubilar(fixtures::biaxial());
  for (std::size_t n = 0; n < 35; ++n) {
    MultiPoly p = g[n].expand();
    for (std::size_t v = 0; v < values.size(); ++v) p = p.substitute(v, values[v]);
    REQUIRE(p.is_constant());
    CHECK((p.is_zero() ? Q(0) : p.leading().coeff) == numeric[n]);
  }
  // 6 xi0^4 appears with the recorded normalisation -1.
  CHECK(g[quad_index({0, 0, 0, 0})].expand().substitute(0, Q(-1)).substitute(1, Q(-2)).substitute(2, Q(-3)).evaluate(
            {Q(0), Q(0), Q(0), Q(1), Q(1), Q(1)}) == -6);
}

TEST_CASE("big identity, 12-variable mask") {
  const auto id = big_identity_polys({0, 0, 0, 0}, named_mask("12-var"));
  CHECK(pit_verify(id, 20, 20240901));
  TaylorStats st;
  CHECK(taylor_zero_verify(id, {}, &st));
  CHECK(st.direct_checks == 1);
  TaylorOptions low;
  low.var_threshold = 4;
  TaylorStats st2;
  CHECK(taylor_zero_verify(id, low, &st2));
  CHECK(st2.max_depth > 0);
  // A wrong sign in the identity is caught by both testers.
  const auto k = symbolic_kappa(named_mask("12-var"));
  const PolyExpr d = det6(k.kappa);
  const PolyExpr broken = d * d * tamm_rubilar(k.kappa)[0] - tamm_rubilar(adjugate(k.kappa))[0];
  CHECK_FALSE(pit_verify(broken, 20, 1));
  CHECK_FALSE(taylor_zero_verify(broken, low));
}

TEST_CASE("big identity, all 36 variables, random evaluation") {
  const auto k = symbolic_kappa(mask_full());
  const auto id = big_identity_all(k);
  const std::vector<PolyExpr> all(id.begin(), id.end());
  PitStats st;
  CHECK(pit_verify(all, 20, 20240901, &st));
  CHECK(st.trials_run == 20);
  CHECK(st.failures == 0);
  std::size_t nodes = 0;
  for (const auto& e : all) nodes = std::max(nodes, e.node_count());
  MESSAGE("largest component DAG: " << nodes << " nodes");
}

TEST_CASE("positive semidefinite square splitting") {
  XYZ v;
  const auto two = psd_square_split(v.x * v.x + v.y * v.y);
  REQUIRE(two);
  CHECK(two->size() == 2);
  const auto one = psd_square_split((v.x - v.y) * (v.x - v.y));
  REQUIRE(one);
  REQUIRE(one->size() == 1);
  CHECK((*one)[0] == v.x - v.y);
  CHECK_FALSE(psd_square_split(v.x * v.x - v.y * v.y));
  CHECK_FALSE(psd_square_split(v.x * v.y));
  CHECK_FALSE(psd_square_split(v.x * v.x + v.c(1)));
  // x^2 + 2xy + 2y^2 + z^2 = (x + y)^2 + y^2 + z^2
  const auto three = psd_square_split(v.x * v.x + (v.x * v.y).scaled(Q(2)) + (v.y * v.y).scaled(Q(2)) + v.z * v.z);
  REQUIRE(three);
  CHECK(three->size() == 3);
}

TEST_CASE("Claim 2 reduced reproduction") {
  for (const auto& [lambda, t] : std::vector<std::pair<Q, Q>>{{Q(1), Q(1)}, {Q(8), Q(1, 2)}, {Q(1, 8), Q(2)}, {Q(27), Q(1, 3)}, {Q(-1), Q(-1)}}) {
    Claim2Options o;
    o.lambda = lambda;
    const auto rep = claim2_groebner_repro(o);
    CAPTURE(lambda);
    CHECK(rep.variables.size() == 10);
    CHECK(rep.sos_rounds >= 1);
    CHECK(rep.zero_dimensional);
    CHECK(rep.unique_real_solution);
    CHECK(rep.matches_cube_root);
    REQUIRE(rep.t);
    CHECK(*rep.t == t);
    CHECK(rep.solution_verified);
    CHECK(rep.seconds < 60);
    // The complex variety is larger than the real one.
    CHECK_FALSE(rep.complex_basis.polys == rep.real_basis.polys);
    CHECK_FALSE(rep.real_constraints.empty());
  }
  Claim2Options irrational;
  irrational.lambda = 2;
  const auto rep = claim2_groebner_repro(irrational);
  CHECK(rep.matches_cube_root);
  CHECK(rep.unique_real_solution);
  CHECK_FALSE(rep.t);

  Claim2Options full;
  full.scale = Claim2Scale::Full;
  full.deadline = Deadline(std::chrono::milliseconds(200));
  try {
    (void)claim2_groebner_repro(full);
    FAIL("expected Timeout");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Timeout);
  }
}
