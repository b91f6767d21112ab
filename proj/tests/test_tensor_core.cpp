#include "doctest.h"

#include "premetric/area_operator.hpp"
#include "premetric/metric.hpp"
#include "support.hpp"

using namespace premetric;
using testing::random_kappa;
using testing::random_matrix;

namespace {

using Q = Rational;
using Tensor4 = std::array<std::array<std::array<std::array<Q, 4>, 4>, 4>, 4>;

Tensor4 components(const AreaOperator<Q>& k) {
  Tensor4 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[i][j][a][b] = k.component(i, j, a, b);
  return t;
}

// Block extraction straight from the epsilon-contracted definitions.
ABCDBlocks<Q> blocks_by_contraction(const AreaOperator<Q>& k) {
  ABCDBlocks<Q> b;
  for (int r = 1; r <= 3; ++r)
    for (int i = 1; i <= 3; ++i) {
      Q a = 0, bb = 0, d = 0;
      for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y) {
          a -= Q(levi_civita(i - 1, x - 1, y - 1), 2) * k.component(r, 0, x, y);
          bb -= Q(levi_civita(r - 1, x - 1, y - 1), 2) * k.component(x, y, i, 0);
          for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 3; ++n)
              d += Q(levi_civita(r - 1, m - 1, n - 1) * levi_civita(i - 1, x - 1, y - 1), 4) * k.component(m, n, x, y);
        }
      b.A[r - 1][i - 1] = a;
      b.B[r - 1][i - 1] = bb;
      b.C[r - 1][i - 1] = k.component(r, 0, i, 0);
      b.D[r - 1][i - 1] = d;
    }
  return b;
}

// <u, v> from 1/4 eps^{ijkl} u_ij v_kl with u_ij read off the 2-form vector.
Q pairing_by_contraction(const Vec<Q, 6>& u, const Vec<Q, 6>& v) {
  auto comp = [](const Vec<Q, 6>& w, int i, int j) {
    const AreaSlot s = area_slot(i, j);
    return s.sign == 0 ? Q(0) : Q(s.sign * w[static_cast<std::size_t>(s.index)]);
  };
  Q sum = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          if (int e = levi_civita(i, j, k, l)) sum += Q(e, 4) * comp(u, i, j) * comp(v, k, l);
  return sum;
}

Vec<Q, 6> random_form(std::mt19937_64& rng) {
  Vec<Q, 6> u;
  for (auto& x : u) x = testing::random_rational(rng);
  return u;
}

ABCDBlocks<Q> biaxial_blocks() {
  ABCDBlocks<Q> b;
  b.A = diagonal<Q, 3>({-1, -2, -3});
  b.B = identity<Q, 3>();
  return b;
}

}  // namespace

TEST_CASE("component accessor respects both antisymmetries") {
  std::mt19937_64 rng(11);
  const auto k = random_kappa(rng);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          CHECK(k.component(i, j, a, b) == -k.component(j, i, a, b));
          CHECK(k.component(i, j, a, b) == -k.component(i, j, b, a));
        }
}

TEST_CASE("kappa_from_components") {
  CHECK(kappa_from_components<Q>({}) == AreaOperator<Q>::zero());

  std::vector<ComponentEntry<Q>> id;
  for (const auto& p : kAreaPairs) {
    id.push_back({p[0], p[1], p[0], p[1], Q(1)});
    id.push_back({p[1], p[0], p[1], p[0], Q(1)});
    id.push_back({p[1], p[0], p[0], p[1], Q(-1)});
  }
  const auto k = kappa_from_components(id);
  CHECK(k == AreaOperator<Q>::identity());
  CHECK(trace(k) == 6);

  const auto flipped = kappa_from_components<Q>({{0, 1, 1, 0, Q(1)}});
  CHECK(flipped.component(0, 1, 0, 1) == -1);

  CHECK_THROWS_AS(kappa_from_components<Q>({{0, 1, 0, 1, Q(1)}, {1, 0, 0, 1, Q(1)}}), Error);
  CHECK_THROWS_AS(kappa_from_components<Q>({{0, 0, 0, 1, Q(2)}}), Error);
  CHECK_THROWS_AS(kappa_from_components<Q>({{0, 4, 0, 1, Q(2)}}), Error);
}

TEST_CASE("blocks agree with the contraction formulas") {
  CHECK(blocks_from_kappa(AreaOperator<Q>::identity()) == blocks_by_contraction(AreaOperator<Q>::identity()));
  const auto id_blocks = blocks_from_kappa(AreaOperator<Q>::identity());
  CHECK(is_zero_matrix(id_blocks.A));
  CHECK(is_zero_matrix(id_blocks.B));
  CHECK(operator_equal(id_blocks.C, identity<Q, 3>()));
  CHECK(operator_equal(id_blocks.D, identity<Q, 3>()));

  const auto star = hodge_star(Metric4<Q>::minkowski());
  const auto sb = blocks_by_contraction(star);
  CHECK(operator_equal(sb.A, scaled(identity<Q, 3>(), Q(-1))));
  CHECK(operator_equal(sb.B, identity<Q, 3>()));
  CHECK(is_zero_matrix(sb.C));
  CHECK(is_zero_matrix(sb.D));
  CHECK(blocks_from_kappa(star) == sb);

  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) {
    const auto k = random_kappa(rng);
    const auto b = blocks_from_kappa(k);
    CHECK(b == blocks_by_contraction(k));
    CHECK(kappa_from_blocks(b) == k);
    ABCDBlocks<Q> rb{random_matrix<3>(rng), random_matrix<3>(rng), random_matrix<3>(rng), random_matrix<3>(rng)};
    CHECK(blocks_from_kappa(kappa_from_blocks(rb)) == rb);
  }

  const auto bx = biaxial_blocks();
  CHECK(blocks_from_kappa(kappa_from_blocks(bx)) == bx);
}

TEST_CASE("isotropic blocks map electric slots to spatial slots") {
  ABCDBlocks<Q> b;
  b.A = scaled(identity<Q, 3>(), Q(-2));
  b.B = scaled(identity<Q, 3>(), Q(3));
  const auto k = kappa_from_blocks(b);
  Vec<Q, 6> f{Q(-1), 0, 0, 0, 0, 0};
  const auto g = k.apply(f);
  CHECK(g[3] == 2);
  Vec<Q, 6> bfield{0, 0, 0, Q(1), 0, 0};
  CHECK(k.apply(bfield)[0] == 3);
}

TEST_CASE("trace, compose, scale") {
  CHECK(trace(AreaOperator<Q>::identity()) == 6);
  CHECK(trace(AreaOperator<Q>::zero()) == 0);
  std::mt19937_64 rng(3);
  const auto k = random_kappa(rng);
  Q half_sum = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) half_sum += k.component(i, j, i, j);
  CHECK(trace(k) == half_sum / 2);
  const auto star = hodge_star(Metric4<Q>::minkowski());
  CHECK(compose(star, star) == negate(AreaOperator<Q>::identity()));
  CHECK(add(k, negate(k)) == AreaOperator<Q>::zero());
  CHECK(scale(k, Q(2)) == add(k, k));
}

TEST_CASE("det6, adjugate, inverse") {
  CHECK(det6(AreaOperator<Q>::identity()) == 1);
  const auto star = hodge_star(Metric4<Q>::minkowski());
  const Q d = det6(star);
  CHECK(d == 1);
  CHECK(adjugate(star) == scale(negate(star), d));
  CHECK(compose(adjugate(star), star) == scale(AreaOperator<Q>::identity(), d));
  CHECK_THROWS_AS(inverse(AreaOperator<Q>::zero()), Error);

  std::mt19937_64 rng(17);
  for (int n = 0; n < 20; ++n) {
    const auto k = random_kappa(rng);
    const Q det = det6(k);
    CHECK(compose(k, adjugate(k)) == scale(AreaOperator<Q>::identity(), det));
    if (det != 0) CHECK(compose(k, inverse(k)) == AreaOperator<Q>::identity());
    Eigen::Matrix<double, 6, 6> e;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) e(r, c) = k(r, c).get_d();
    CHECK(e.determinant() == doctest::Approx(det.get_d()).epsilon(1e-9));
  }
}

TEST_CASE("wedge adjoint") {
  CHECK(wedge_adjoint(AreaOperator<Q>::identity()) == AreaOperator<Q>::identity());
  const auto star = hodge_star(Metric4<Q>::minkowski());
  CHECK(wedge_adjoint(star) == star);
  std::mt19937_64 rng(23);
  for (int n = 0; n < 50; ++n) {
    const auto k = random_kappa(rng);
    CHECK(wedge_adjoint(wedge_adjoint(k)) == k);
    const auto u = random_form(rng);
    const auto v = random_form(rng);
    CHECK(wedge_pairing(u, v) == pairing_by_contraction(u, v));
    CHECK(pairing_by_contraction(u, k.apply(v)) == pairing_by_contraction(wedge_adjoint(k).apply(u), v));
  }
}

TEST_CASE("decomposition") {
  const auto d = decompose(AreaOperator<Q>::identity());
  CHECK(d.principal == AreaOperator<Q>::zero());
  CHECK(d.skewon == AreaOperator<Q>::zero());
  CHECK(d.axion_coeff == 1);

  const auto ds = decompose(hodge_star(Metric4<Q>::minkowski()));
  CHECK(ds.skewon == AreaOperator<Q>::zero());
  CHECK(ds.axion_coeff == 0);

  std::mt19937_64 rng(29);
  for (int n = 0; n < 30; ++n) {
    const auto k = random_kappa(rng);
    const auto p = decompose(k);
    CHECK(reconstruct(p) == k);
    CHECK(trace(p.principal) == 0);
    CHECK(wedge_adjoint(p.principal) == p.principal);
    CHECK(wedge_adjoint(p.skewon) == negate(p.skewon));
    CHECK(trace(p.skewon) == 0);
  }

  CHECK_THROWS_AS(decompose(AreaOperator<Complex>::identity()), Error);
}

TEST_CASE("projector ranks are 20, 15, 1") {
  DynMatrix<Q> pz(36, 36), pw(36, 36), pu(36, 36);
  for (std::size_t col = 0; col < 36; ++col) {
    auto m = zeros<Q, 6>();
    m[col / 6][col % 6] = 1;
    const auto d = decompose(AreaOperator<Q>(m));
    for (std::size_t row = 0; row < 36; ++row) {
      pz(row, col) = d.principal(row / 6, row % 6);
      pw(row, col) = d.skewon(row / 6, row % 6);
      pu(row, col) = row / 6 == row % 6 ? d.axion_coeff : Q(0);
    }
  }
  CHECK(rank(pz) == 20);
  CHECK(rank(pw) == 15);
  CHECK(rank(pu) == 1);

  // Complementary projectors annihilate each other's images.
  auto product_zero = [](const DynMatrix<Q>& a, const DynMatrix<Q>& b) {
    for (std::size_t i = 0; i < 36; ++i)
      for (std::size_t j = 0; j < 36; ++j) {
        Q s = 0;
        for (std::size_t k = 0; k < 36; ++k) s += a(i, k) * b(k, j);
        if (s != 0) return false;
      }
    return true;
  };
  CHECK(product_zero(pz, pw));
  CHECK(product_zero(pw, pu));
  CHECK(product_zero(pu, pz));
}

TEST_CASE("skewon-free iff block symmetry") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 20; ++n) {
    const auto a = random_matrix<3>(rng);
    const auto b = random_matrix<3>(rng);
    const auto c = random_matrix<3>(rng);
    ABCDBlocks<Q> sym{a + transpose(a), b + transpose(b), c, transpose(c)};
    const auto ks = kappa_from_blocks(sym);
    CHECK(blocks_skewon_free(sym));
    CHECK(decompose(ks).skewon == AreaOperator<Q>::zero());

    const auto k = random_kappa(rng);
    const bool by_blocks = blocks_skewon_free(blocks_from_kappa(k));
    CHECK(by_blocks == (decompose(k).skewon == AreaOperator<Q>::zero()));
    CHECK_FALSE(by_blocks);
  }
}

TEST_CASE("transform matches the component law") {
  std::mt19937_64 rng(37);
  const auto k0 = random_kappa(rng);
  CHECK(transform(k0, identity<Q, 4>()) == k0);
  CHECK_THROWS_AS(transform(k0, zeros<Q, 4>()), Error);

  for (int n = 0; n < 10; ++n) {
    const auto k = random_kappa(rng);
    const auto j = testing::random_invertible<4>(rng);
    const auto ji = inverse(j);
    const auto t = components(k);
    const auto out = transform(k, j);
    bool ok = true;
    for (int a = 0; a < 4 && ok; ++a)
      for (int b = 0; b < 4 && ok; ++b)
        for (int c = 0; c < 4 && ok; ++c)
          for (int d = 0; d < 4 && ok; ++d) {
            Q s = 0;
            for (std::size_t i = 0; i < 4; ++i)
              for (std::size_t jj = 0; jj < 4; ++jj)
                for (std::size_t kk = 0; kk < 4; ++kk)
                  for (std::size_t l = 0; l < 4; ++l)
                    s += ji[a][i] * ji[b][jj] * t[i][jj][kk][l] * j[kk][c] * j[l][d];
            ok = s == out.component(a, b, c, d);
          }
    CHECK(ok);

    const auto j2 = testing::random_invertible<4>(rng);
    CHECK(transform(k, j * j2) == transform(transform(k, j), j2));
  }
}

TEST_CASE("spatial block transformation rules") {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 20; ++n) {
    const auto k = random_kappa(rng);
    const auto p = testing::random_invertible<3>(rng);  // dx/dx~
    const auto q = inverse(p);
    const Q detp = determinant(p);
    const auto b = blocks_from_kappa(k);
    const auto bt = blocks_from_kappa(transform(k, spatial_jacobian(p)));
    CHECK(operator_equal(bt.A, scaled(q * b.A * transpose(q), detp)));
    CHECK(operator_equal(bt.B, scaled(transpose(p) * b.B * p, Q(Q(1) / detp))));
    CHECK(operator_equal(bt.C, q * b.C * p));
    CHECK(operator_equal(bt.D, transpose(p) * b.D * transpose(q)));
  }
}
