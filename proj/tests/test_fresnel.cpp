#include "doctest.h"

#include "premetric/fixtures.hpp"
#include "premetric/fresnel.hpp"
#include "support.hpp"

using namespace premetric;
using testing::linear;
using testing::Poly4;
using testing::operator*;
using testing::operator+;

namespace {

using Q = Rational;

// Direct contraction over the nonvanishing epsilon patterns.
Q raw_by_contraction(const AreaOperator<Q>& k, int i, int j, int kk, int l) {
  Q sum = 0;
  std::array<int, 4> a{0, 1, 2, 3};
  do {
    const int ea = levi_civita(a[0], a[1], a[2], a[3]);
    for (int b1 = 0; b1 < 4; ++b1)
      for (int b2 = 0; b2 < 4; ++b2)
        for (int b5 = 0; b5 < 4; ++b5) {
          const int e1 = levi_civita(b1, b2, b5, kk);
          if (e1 == 0) continue;
          const Q k1 = k.component(a[0], a[1], b1, b2);
          if (k1 == 0) continue;
          for (int b3 = 0; b3 < 4; ++b3)
            for (int b4 = 0; b4 < 4; ++b4)
              for (int b6 = 0; b6 < 4; ++b6) {
                const int e2 = levi_civita(b3, b4, b6, l);
                if (e2 == 0) continue;
                sum += ea * e1 * e2 * k1 * k.component(a[2], i, b3, b4) * k.component(a[3], j, b5, b6);
              }
        }
  } while (std::next_permutation(a.begin(), a.end()));
  return sum / 48;
}

Poly4 as_poly(const TammRubilar<Q>& g) {
  Poly4 p;
  const auto c = quartic_coefficients(g);
  for (std::size_t n = 0; n < 35; ++n) {
    if (c[n] == 0) continue;
    std::array<int, 4> e{0, 0, 0, 0};
    for (int v : sorted_quads()[n]) ++e[static_cast<std::size_t>(v)];
    p[e] = c[n];
  }
  return p;
}

Poly4 cone() {
  const Poly4 x0 = linear(1, 0, 0, 0), x1 = linear(0, 1, 0, 0), x2 = linear(0, 0, 1, 0), x3 = linear(0, 0, 0, 1);
  return x0 * x0 + testing::scaled(x1 * x1 + x2 * x2 + x3 * x3, Q(-1));
}

Poly4 biaxial_target() {
  const Poly4 x0 = linear(1, 0, 0, 0), x1 = linear(0, 1, 0, 0), x2 = linear(0, 0, 1, 0), x3 = linear(0, 0, 0, 1);
  const Poly4 s1 = x1 * x1, s2 = x2 * x2, s3 = x3 * x3, s0 = x0 * x0;
  Poly4 t = testing::scaled(s0 * s0, Q(6));
  t = t + testing::scaled(s0 * (testing::scaled(s1, Q(5)) + testing::scaled(s2, Q(8)) + testing::scaled(s3, Q(9))), Q(-1));
  t = t + (s1 + s2 + s3) * (s1 + testing::scaled(s2, Q(2)) + testing::scaled(s3, Q(3)));
  return t;
}

// Constant c with a = c b, if it exists.
std::optional<Q> ratio(const Poly4& a, const Poly4& b) {
  if (a.size() != b.size() || b.empty()) return std::nullopt;
  const Q c = a.begin()->second / b.begin()->second;
  for (const auto& [e, v] : b) {
    auto it = a.find(e);
    if (it == a.end() || it->second != c * v) return std::nullopt;
  }
  return c;
}

}  // namespace

TEST_CASE("raw density matches the direct contraction") {
  std::mt19937_64 rng(101);
  for (int n = 0; n < 2; ++n) {
    const auto k = testing::random_kappa(rng);
    const auto raw = tamm_rubilar_raw(k);
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) ok = ok && raw[r4(i, j, a, b)] == raw_by_contraction(k, i, j, a, b);
    CHECK(ok);
  }
  CHECK(tamm_rubilar(AreaOperator<Q>::zero()).is_zero());
}

TEST_CASE("axion media are invisible") {
  CHECK(tamm_rubilar(scale(AreaOperator<Q>::identity(), Q(7))).is_zero());
}

TEST_CASE("symmetrization is fully symmetric") {
  std::mt19937_64 rng(7);
  const auto k = testing::random_kappa(rng);
  const auto raw = tamm_rubilar_raw(k);
  const auto g = tamm_rubilar(k);
  for (const auto& q : sorted_quads()) {
    Q s = 0;
    std::array<int, 4> p = q;
    std::sort(p.begin(), p.end());
    int count = 0;
    std::array<int, 4> pos{0, 1, 2, 3};
    do {
      s += raw[r4(q[pos[0]], q[pos[1]], q[pos[2]], q[pos[3]])];
      ++count;
    } while (std::next_permutation(pos.begin(), pos.end()));
    CHECK(count == 24);
    CHECK(g.at(q[3], q[1], q[0], q[2]) == s / 24);
  }
}

TEST_CASE("Minkowski star gives minus the squared cone") {
  const auto g = tamm_rubilar(fixtures::minkowski_star());
  CHECK(as_poly(g) == testing::scaled(testing::square_of(cone()), Q(-1)));
  CHECK(fresnel_eval(g, Covector4<Q>{1, 0, 0, 0}) == -1);
}

TEST_CASE("biaxial quartic up to a constant") {
  const auto g = tamm_rubilar(fixtures::biaxial());
  const auto c = ratio(as_poly(g), biaxial_target());
  REQUIRE(c.has_value());
  CHECK(*c == -1);
}

TEST_CASE("non-injectivity pair") {
  const Poly4 a = linear(1, -1, 0, 0), b = linear(1, 0, -1, 0);
  const auto g0 = Metric4<Q>::euclidean();
  CHECK(as_poly(g_tensor(g0, fixtures::kappa1())) == a * b * b * b);
  CHECK(as_poly(g_tensor(g0, fixtures::kappa2())) == testing::scaled(a * a * a * b, Q(-1)));
  CHECK(det6(fixtures::kappa1()) == 1);
  CHECK(det6(fixtures::kappa2()) == 1);
  CHECK(trace(fixtures::kappa1()) == 6);
  CHECK(trace(fixtures::kappa2()) == 6);
  CHECK_FALSE(proportionality(tamm_rubilar(fixtures::kappa1()), tamm_rubilar(fixtures::kappa2())).has_value());
}

TEST_CASE("principal-type medium has vanishing quartic") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 5; ++n) {
    std::array<double, 5> l;
    for (auto& x : l) x = testing::random_double(rng, -2, 2);
    const auto k = fixtures::principal_zero(l);
    const auto g = tamm_rubilar(k);
    for (std::size_t c = 0; c < 35; ++c) CHECK(std::fabs(g[c]) < 1e-12);
    CHECK(det6(k) == doctest::Approx(1.0).epsilon(1e-12));
    const auto d = decompose(k);
    CHECK(max_abs(d.skewon.matrix()) < 1e-14);
    CHECK(std::fabs(d.axion_coeff) < 1e-14);
  }
}

TEST_CASE("Hodge media against Euclidean h") {
  std::mt19937_64 rng(53);
  const auto h = Metric4<Q>::euclidean();
  for (int n = 0; n < 100; ++n) {
    const Metric4<Q> g(testing::random_square_det_metric(rng));
    Covector4<Q> xi;
    for (auto& x : xi) x = testing::random_rational(rng);
    const Q lhs = fresnel_eval(g_tensor(h, hodge_star(g)), xi);
    const Q gxx = null_eval(g, xi);
    const Q root = *exact_sqrt(abs_value(g.det()));
    CHECK(lhs == sign_of(g.det()) * root * gxx * gxx);
  }
  const Metric4<Q> g4 = Metric4<Q>::diag(-1, 1, 2, 2);
  const auto k = hodge_star(g4);
  CHECK(g_tensor(g4, k) == scale(tamm_rubilar(k), Q(1, 2)));
}

TEST_CASE("density transformation law") {
  std::mt19937_64 rng(61);
  for (int n = 0; n < 5; ++n) {
    const auto k = testing::random_kappa(rng);
    const auto j = testing::random_invertible<4>(rng);
    CHECK(tamm_rubilar(transform(k, j)) == transform_density(tamm_rubilar(k), j));
  }
}

TEST_CASE("homogeneity and polarization") {
  std::mt19937_64 rng(67);
  const auto g = tamm_rubilar(testing::random_kappa(rng));
  Covector4<Q> xi;
  for (auto& x : xi) x = testing::random_rational(rng);
  const Q lam(3, 2);
  Covector4<Q> lxi;
  for (std::size_t i = 0; i < 4; ++i) lxi[i] = lam * xi[i];
  CHECK(fresnel_eval(g, lxi) == lam * lam * lam * lam * fresnel_eval(g, xi));

  const auto bx = tamm_rubilar(fixtures::biaxial());
  CHECK(polarization_reconstruct<Q>([&](const Covector4<Q>& x) { return fresnel_eval(bx, x); }) == bx);
  CHECK(polarization_reconstruct<Q>([&](const Covector4<Q>& x) { return fresnel_eval(g, x); }) == g);
  CHECK(polarization_reconstruct<Q>([](const Covector4<Q>&) { return Q(0); }).is_zero());

  // (g(xi, xi))^2 for Minkowski equals the symmetrized g (x) g.
  const auto m = Metric4<Q>::minkowski();
  const auto sq = polarization_reconstruct<Q>([&](const Covector4<Q>& x) -> Q {
    const Q v = null_eval(m, x);
    return v * v;
  });
  const auto& gi = m.inverse();
  for (const auto& q : sorted_quads()) {
    Q s = 0;
    std::array<int, 4> pos{0, 1, 2, 3};
    do {
      s += gi[q[pos[0]]][q[pos[1]]] * gi[q[pos[2]]][q[pos[3]]];
    } while (std::next_permutation(pos.begin(), pos.end()));
    CHECK(sq.at(q[0], q[1], q[2], q[3]) == s / 24);
  }
}

TEST_CASE("biaxial evaluation on known roots") {
  const auto g = convert<double>(tamm_rubilar(fixtures::biaxial()));
  CHECK(std::fabs(fresnel_eval(g, Covector4<double>{1, std::sqrt(2.0), 0, 0})) < 1e-12);
  CHECK(std::fabs(fresnel_eval(g, Covector4<double>{1, std::sqrt(1.5), 0, std::sqrt(0.5)})) < 1e-12);
}

TEST_CASE("roots in xi_0") {
  const auto star = tamm_rubilar(fixtures::minkowski_star());
  auto r = quartic_roots(quartic_in_xi0(star, Vec<Q, 3>{1, 0, 0}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].value.real() == doctest::Approx(-1));
  CHECK(r[0].multiplicity == 2);
  CHECK(r[1].value.real() == doctest::Approx(1));
  CHECK(r[1].multiplicity == 2);

  const auto sd = convert<double>(star);
  auto rf = quartic_roots(quartic_in_xi0(sd, Vec<double, 3>{1, 0, 0}));
  REQUIRE(rf.size() == 2);
  CHECK(rf[0].multiplicity == 2);
  CHECK(rf[1].multiplicity == 2);
  CHECK(std::abs(rf[0].value + 1.0) < 1e-9);

  const auto k1 = tamm_rubilar(fixtures::kappa1());
  auto r1 = quartic_roots(quartic_in_xi0(k1, Vec<Q, 3>{1, 1, 0}));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].multiplicity == 4);
  CHECK(r1[0].value.real() == doctest::Approx(1));
  auto r1f = quartic_roots(quartic_in_xi0(convert<double>(k1), Vec<double, 3>{1, 1, 0}));
  REQUIRE(r1f.size() == 1);
  CHECK(r1f[0].multiplicity == 4);
  auto r1g = quartic_roots(quartic_in_xi0(convert<double>(k1), Vec<double, 3>{1, 2, 0}));
  REQUIRE(r1g.size() == 2);
  CHECK(r1g[0].multiplicity == 1);
  CHECK(r1g[1].multiplicity == 3);
  CHECK(std::abs(r1g[1].value - 2.0) < 1e-9);

  const auto bx = tamm_rubilar(fixtures::biaxial());
  for (const auto& roots : {quartic_roots(quartic_in_xi0(bx, Vec<Q, 3>{1, 0, 0})),
                            quartic_roots(quartic_in_xi0(convert<double>(bx), Vec<double, 3>{1, 0, 0}))}) {
    REQUIRE(roots.size() == 4);
    const double expect[4] = {-1 / std::sqrt(2.0), -1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(2.0)};
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(roots[static_cast<std::size_t>(i)].value - expect[i]) < 1e-12);
      CHECK(roots[static_cast<std::size_t>(i)].multiplicity == 1);
    }
  }

  CHECK_THROWS_AS(quartic_roots(quartic_in_xi0(TammRubilar<Q>(), Vec<Q, 3>{1, 0, 0})), Error);
}

TEST_CASE("singular points") {
  const auto bx = convert<double>(tamm_rubilar(fixtures::biaxial()));
  const auto rep = singular_points(bx);
  REQUIRE(rep.points.size() == 1);
  CHECK(rep.isolated.size() == 1);
  CHECK_FALSE(rep.non_isolated);
  CHECK(std::fabs(rep.points[0][0] - std::sqrt(1.5)) < 1e-9);
  CHECK(std::fabs(rep.points[0][1]) < 1e-9);
  CHECK(std::fabs(rep.points[0][2] - std::sqrt(0.5)) < 1e-9);

  // The Minkowski quartic is a square, so its whole zero set is critical but none of it is isolated.
  const auto ms = singular_points(convert<double>(tamm_rubilar(fixtures::minkowski_star())));
  CHECK(ms.isolated.empty());
  CHECK(ms.non_isolated);
  for (const auto& p : ms.points) CHECK(std::hypot(p[0], p[1], p[2]) == doctest::Approx(1.0).epsilon(1e-6));

  const auto k1 = singular_points(convert<double>(tamm_rubilar(fixtures::kappa1())));
  CHECK(k1.non_isolated);
  REQUIRE_FALSE(k1.points.empty());
  int on_plane = 0;
  for (const auto& p : k1.points) on_plane += std::fabs(p[1] - 1.0) < 1e-4;
  CHECK(on_plane > 0);
}

TEST_CASE("invariance suite") {
  std::mt19937_64 rng(71);
  for (int n = 0; n < 3; ++n) {
    const auto rep = invariance_suite(testing::random_kappa(rng), Q(7));
    CHECK(rep.all());
    CHECK(rep.failure.empty());
  }
  const auto star = fixtures::minkowski_star();
  CHECK(invariance_suite(star, Q(2)).all());
  CHECK(inverse(star) == negate(star));

  // A pure skewon medium is invisible.
  std::mt19937_64 rng2(5);
  const auto skew = decompose(testing::random_kappa(rng2)).skewon;
  CHECK(tamm_rubilar(skew).is_zero());
}

TEST_CASE("complex medium") {
  for (const Complex z : {Complex(1, 0), Complex(1, 1), Complex(2, -1)}) {
    const auto k = fixtures::complex_medium(z);
    CHECK(std::abs(trace(k)) < 1e-14);
    const Complex det = det6(k);
    const Complex expect = fixtures::complex_medium_det(z);
    CHECK(std::abs(det - expect) <= 1e-10 * std::abs(expect));
    const auto g = tamm_rubilar(k);
    const Complex c = g.at(0, 0, 0, 0);
    CHECK(std::abs(c) > 1e-3);
    // Compare with c (xi_0^2 - |q|^2)^2.
    const auto target = polarization_reconstruct<Complex>([&](const Covector4<Complex>& x) {
      const Complex v = x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
      return c * v * v;
    });
    for (std::size_t n = 0; n < 35; ++n) CHECK(std::abs(g[n] - target[n]) < 1e-10 * std::abs(c));
  }
}

TEST_CASE("complex medium over the Gaussian rationals") {
  const Gaussian i(0, 1);
  CHECK(i * i == Gaussian(-1));
  CHECK(Gaussian(1) / Gaussian(1, 1) == Gaussian(Q(1, 2), Q(-1, 2)));
  CHECK_THROWS_AS(Gaussian(1) / Gaussian(), Error);
  for (const Gaussian z : {Gaussian(1), Gaussian(1, 1), Gaussian(2, -1), Gaussian(Q(1, 3), Q(2))}) {
    const auto k = fixtures::complex_medium_exact(z);
    CHECK(ScalarTraits<Gaussian>::is_zero(trace(k)));
    CHECK(det6(k) == fixtures::complex_medium_det_exact(z));
    const auto g = tamm_rubilar(k);
    const Gaussian c = g.at(0, 0, 0, 0);
    CHECK(g.at(0, 0, 1, 1) == c * Gaussian(Q(-1, 3)));
    CHECK(g.at(1, 1, 2, 2) == c * Gaussian(Q(1, 3)));
    CHECK(g.at(0, 1, 2, 3) == Gaussian());
    CHECK(std::abs(c.to_complex() - tamm_rubilar(fixtures::complex_medium(z.to_complex())).at(0, 0, 0, 0)) < 1e-10 * std::abs(c.to_complex()));
  }
}
