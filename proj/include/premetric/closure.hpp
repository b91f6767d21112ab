#pragma once

// Closure media kappa^2 = -f Id: detection, chart normalization and the
// reconstruction of a Lorentz metric g with kappa proportional to *_g.

#include <Eigen/Eigenvalues>

#include <optional>
#include <string>

#include "premetric/area_operator.hpp"
#include "premetric/fresnel.hpp"
#include "premetric/metric.hpp"

namespace premetric {

template <class T>
struct ClosureReport {
  bool holds = false;
  T f{};
  double residual = 0;
};

template <RealField T>
struct KRelations {
  Mat<T, 3> K{};
  bool K_antisymmetric = false;
  bool C_relation = false;
  bool D_relation = false;
  bool B_relation = false;
};

template <RealField T>
struct ReconstructedMetric {
  Metric4<T> g;
  int sign_factor = 1;
  std::optional<T> star_match;  // set when *_g is representable in T
  T f{};
  T det_G{};               // determinant of the normalized contravariant matrix
  Mat<T, 4> chart{};       // Jacobian dx/dx~ of the working chart
};

template <RealField T>
struct LightconeReport {
  bool holds = false;
  std::optional<T> lambda;  // G(kappa) = lambda G(*_g)
  std::optional<T> scale;   // kappa = scale *_g, scale^3 = lambda
};

namespace detail {

template <class T>
bool near_zero(const T& x, double scale, double tol = 1e-10) {
  if constexpr (ScalarTraits<T>::exact)
    return x == 0;
  else
    return ScalarTraits<T>::magnitude(x) <= tol * std::max(1.0, scale);
}

template <class T, std::size_t R, std::size_t C>
bool matrix_near_zero(const Mat<T, R, C>& m, double scale, double tol = 1e-10) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!near_zero(x, scale, tol)) return false;
  return true;
}

template <class T>
Mat<T, 4> permutation_jacobian(const std::array<std::size_t, 3>& order) {
  Mat<T, 3> p = zeros<T, 3>();
  for (std::size_t i = 0; i < 3; ++i) p[order[i]][i] = ScalarTraits<T>::one();
  return spatial_jacobian(p);
}

}  // namespace detail

template <class T>
ClosureReport<T> closure_check(const AreaOperator<T>& kappa) {
  ClosureReport<T> rep;
  const auto sq = compose(kappa, kappa);
  rep.f = T(-trace(sq) / from_rational<T>(Rational(6)));
  const auto res = add_identity(sq, rep.f);
  rep.residual = max_abs(res.matrix());
  if constexpr (ScalarTraits<T>::exact)
    rep.holds = rep.residual == 0 && rep.f > 0;
  else
    rep.holds = rep.residual <= 1e-10 * std::max(1.0, max_abs(sq.matrix())) && rep.f > 0;
  return rep;
}

/// Decomposition test; the block criterion A = A^T, B = B^T, C = D^T must agree.
template <RealField T>
bool skewon_free_check(const AreaOperator<T>& kappa) {
  const double scale = max_abs(kappa.matrix());
  const bool by_parts = detail::matrix_near_zero(decompose(kappa).skewon.matrix(), scale);
  const auto b = blocks_from_kappa(kappa);
  const bool by_blocks = detail::matrix_near_zero(b.A - transpose(b.A), scale) &&
                         detail::matrix_near_zero(b.B - transpose(b.B), scale) &&
                         detail::matrix_near_zero(b.C - transpose(b.D), scale);
  if (by_parts != by_blocks) throw Error(ErrorCode::RelationViolated, "skewon criteria disagree");
  return by_parts;
}

/// Rotation J = block-diag(1, P) with P orthogonal, det P = 1, making A diagonal.
template <RealField T>
Mat<double, 4> diagonalize_A(const AreaOperator<T>& kappa) {
  if (!skewon_free_check(kappa)) throw Error(ErrorCode::NotSkewonFree, "medium has a skewon part");
  const auto a = convert<double>(blocks_from_kappa(kappa).A);
  bool diagonal = true;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && a[i][j] != 0.0) diagonal = false;
  if (diagonal) return premetric::identity<double, 4>();
  Eigen::Matrix3d m;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  Eigen::Matrix3d v = es.eigenvectors();
  for (Eigen::Index c = 0; c < 3; ++c) {
    Eigen::Index big = 0;
    v.col(c).cwiseAbs().maxCoeff(&big);
    if (v(big, c) < 0) v.col(c) *= -1.0;
  }
  if (v.determinant() < 0) v.col(2) *= -1.0;
  Mat<double, 3> p;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) p[i][j] = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return spatial_jacobian(p);
}

/// Jacobian dx/dx~ after which A is invertible. Requires a skewon-free
/// closure medium; the rank of A then is 3 or 1, never 2 or 0.
template <RealField T>
Mat<T, 4> normalize_chart(const AreaOperator<T>& kappa) {
  if (!skewon_free_check(kappa)) throw Error(ErrorCode::PreconditionFailed, "medium has a skewon part");
  const auto a = blocks_from_kappa(kappa).A;
  const std::size_t r = rank(a);
  if (r == 2) throw Error(ErrorCode::Impossible, "A of rank 2 forces (C^3_3)^2 = -1");
  if (r == 0) throw Error(ErrorCode::Impossible, "A = 0 forces (det C)^2 = -1");
  if (!closure_check(kappa).holds) throw Error(ErrorCode::PreconditionFailed, "closure condition fails");
  if (r == 3) return premetric::identity<T, 4>();

  // Q A Q^T = diag(d) with Q = P^{-1} = congruence^T.
  const auto cong = congruence_diagonalize(a);
  Mat<T, 4> j = spatial_jacobian(inverse(transpose(cong.P)));
  std::size_t live = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (ScalarTraits<T>::magnitude(cong.d[i]) > ScalarTraits<T>::magnitude(cong.d[live])) live = i;
  std::array<std::size_t, 3> order{live, live == 0 ? 1u : 0u, live == 2 ? 1u : 2u};
  j = j * detail::permutation_jacobian<T>(order);

  Mat<T, 4> shear = premetric::identity<T, 4>();
  shear[0][3] = -ScalarTraits<T>::one();  // x~^0 = x^0 + x^3
  j = j * shear;
  if (ScalarTraits<T>::is_zero(determinant(blocks_from_kappa(transform(kappa, j)).A)))
    throw Error(ErrorCode::Impossible, "sheared A is still singular");
  return j;
}

template <RealField T>
KRelations<T> K_relations_check(const AreaOperator<T>& kappa) {
  if (!skewon_free_check(kappa)) throw Error(ErrorCode::PreconditionFailed, "medium has a skewon part");
  const auto b = blocks_from_kappa(kappa);
  if (ScalarTraits<T>::is_zero(determinant(b.A))) throw Error(ErrorCode::PreconditionFailed, "A is singular");
  const double scale = max_abs(kappa.matrix());
  KRelations<T> rep;
  const auto ai = inverse(b.A);
  rep.K = b.C * b.A;
  rep.K_antisymmetric = detail::matrix_near_zero(rep.K + transpose(rep.K), scale * scale);
  rep.C_relation = detail::matrix_near_zero(b.C - rep.K * ai, scale);
  rep.D_relation = detail::matrix_near_zero(b.D + ai * rep.K, scale);
  const auto ka = rep.K * ai;
  const auto expect_b = scaled(ai * (premetric::identity<T, 3>() + ka * ka), T(-ScalarTraits<T>::one()));
  rep.B_relation = detail::matrix_near_zero(b.B - expect_b, scale);
  if (!rep.K_antisymmetric) throw Error(ErrorCode::RelationViolated, "K = C A is not antisymmetric");
  if (!rep.C_relation) throw Error(ErrorCode::RelationViolated, "C = K A^{-1} fails");
  if (!rep.D_relation) throw Error(ErrorCode::RelationViolated, "D = -A^{-1} K fails");
  if (!rep.B_relation) throw Error(ErrorCode::RelationViolated, "B = -A^{-1}(Id + (K A^{-1})^2) fails");
  return rep;
}

/// The contravariant matrix is assembled from the unnormalized blocks as
///   G' = [[det A, k^T], [k, -f A + k k^T / det A]],  k^i = A^{ib} (1/2) eps_{bcd} K^{cd},
/// which is the normalized G times f^{3/2} |det A_eta|^{1/2}, so det G' = -f^3 (det A)^2.
template <RealField T>
ReconstructedMetric<T> reconstruct_metric(const AreaOperator<T>& kappa) {
  if (!skewon_free_check(kappa)) throw Error(ErrorCode::PreconditionFailed, "medium has a skewon part");
  const auto cl = closure_check(kappa);
  if (!cl.holds) throw Error(ErrorCode::PreconditionFailed, "closure condition fails");
  const T f = cl.f;
  const auto j = normalize_chart(kappa);
  const auto b = blocks_from_kappa(transform(kappa, j));
  const T da = determinant(b.A);
  const auto kk = b.C * b.A;

  Vec<T, 3> axial;
  for (int bi = 0; bi < 3; ++bi) {
    T acc = ScalarTraits<T>::zero();
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) {
        const int e = levi_civita(bi, c, d);
        if (e == 0) continue;
        acc += from_rational<T>(Rational(e, 2)) * kk[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
      }
    axial[static_cast<std::size_t>(bi)] = acc;
  }
  const auto k = b.A * axial;

  Mat<T, 4> gp = zeros<T, 4>();
  gp[0][0] = da;
  for (std::size_t i = 0; i < 3; ++i) {
    gp[0][i + 1] = k[i];
    gp[i + 1][0] = k[i];
    for (std::size_t l = 0; l < 3; ++l) gp[i + 1][l + 1] = T(-f * b.A[i][l] + k[i] * k[l] / da);
  }
  const T det_gp = determinant(gp);
  const T norm = T(f * f * f * da * da);
  ReconstructedMetric<T> out{Metric4<T>::minkowski(), 1, std::nullopt, f, T(det_gp / norm), j};
  if constexpr (ScalarTraits<T>::exact) {
    if (out.det_G != -1) throw Error(ErrorCode::RelationViolated, "det G differs from -1/det h");
  } else {
    if (std::fabs(out.det_G + 1.0) > 1e-8) throw Error(ErrorCode::NumericallyDegenerate, "det G differs from -1/det h");
  }

  const auto g_chart = inverse(gp);
  const int index = Metric4<T>(g_chart).index();
  if (index != 1 && index != 3) throw Error(ErrorCode::Impossible, "contravariant matrix is not Lorentzian");
  out.sign_factor = index == 1 ? 1 : -1;
  const auto ji = inverse(j);
  out.g = Metric4<T>(scaled(transpose(ji) * g_chart * ji, from_rational<T>(Rational(out.sign_factor))));

  std::optional<AreaOperator<T>> star;
  try {
    star = hodge_star(out.g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotRepresentable) throw;
  }
  if (star) {
    std::size_t pr = 0, pc = 0;
    double best = 0;
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 6; ++c)
        if (ScalarTraits<T>::magnitude((*star)(r, c)) > best) {
          best = ScalarTraits<T>::magnitude((*star)(r, c));
          pr = r;
          pc = c;
        }
    const T s = kappa(pr, pc) / (*star)(pr, pc);
    if (!detail::matrix_near_zero(subtract(kappa, scale(*star, s)).matrix(), max_abs(kappa.matrix())))
      throw Error(ErrorCode::RelationViolated, "kappa is not proportional to *_g");
    out.star_match = s;
  }
  return out;
}

/// Checks G(kappa) = lambda G(*_g) and then kappa = lambda^{1/3} *_g, ignoring
/// the axion part of kappa, which the quartic cannot see.
template <RealField T>
LightconeReport<T> fresnel_lightcone_check(const AreaOperator<T>& kappa, const Metric4<T>& g) {
  LightconeReport<T> rep;
  const auto parts = decompose(kappa);
  const double mag = std::max(1.0, max_abs(kappa.matrix()));
  if (!detail::matrix_near_zero(parts.skewon.matrix(), mag)) return rep;
  const auto star = hodge_star(g);
  const auto gk = tamm_rubilar(parts.principal);
  if (gk.is_zero()) return rep;
  rep.lambda = proportionality(gk, tamm_rubilar(star));
  if (!rep.lambda || ScalarTraits<T>::is_zero(*rep.lambda)) return rep;

  std::size_t pr = 0, pc = 0;
  double best = 0;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      if (ScalarTraits<T>::magnitude(star(r, c)) > best) {
        best = ScalarTraits<T>::magnitude(star(r, c));
        pr = r;
        pc = c;
      }
  const T s = parts.principal(pr, pc) / star(pr, pc);
  if (!detail::matrix_near_zero(subtract(parts.principal, premetric::scale(star, s)).matrix(), mag)) return rep;
  const T cube = s * s * s;
  if (!detail::near_zero(T(cube - *rep.lambda), ScalarTraits<T>::magnitude(*rep.lambda), 1e-9)) return rep;
  rep.scale = s;
  rep.holds = true;
  return rep;
}

}  // namespace premetric
