#pragma once

#include <optional>

#include "premetric/area_operator.hpp"
#include "premetric/dense.hpp"

namespace premetric {

template <class T>
using Covector4 = Vec<T, 4>;

struct Signature {
  int index;  // number of negative eigenvalues
  bool lorentz;
};

/// Symmetric nondegenerate metric with cached inverse, determinant and index.
template <RealField T>
class Metric4 {
 public:
  explicit Metric4(const Mat<T, 4>& g) : g_(g) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if constexpr (ScalarTraits<T>::exact) {
          if (!(g[i][j] == g[j][i])) throw Error(ErrorCode::Degenerate, "metric is not symmetric");
        } else {
          if (std::fabs(g[i][j] - g[j][i]) > 1e-12 * std::max(1.0, max_abs(g)))
            throw Error(ErrorCode::Degenerate, "metric is not symmetric");
        }
    det_ = determinant(g_);
    try {
      inv_ = premetric::inverse(g_);
    } catch (const Error&) {
      throw Error(ErrorCode::Degenerate, "metric is degenerate");
    }
    index_ = compute_index();
  }

  static Metric4 diag(const T& a, const T& b, const T& c, const T& d) {
    return Metric4(diagonal<T, 4>({a, b, c, d}));
  }
  static Metric4 minkowski() { return diag(T(-1), T(1), T(1), T(1)); }
  static Metric4 euclidean() { return diag(T(1), T(1), T(1), T(1)); }

  const Mat<T, 4>& g() const { return g_; }
  const Mat<T, 4>& inverse() const { return inv_; }
  const T& det() const { return det_; }
  int index() const { return index_; }

 private:
  int compute_index() const {
    int neg = 0;
    if constexpr (ScalarTraits<T>::exact) {
      for (const auto& d : congruence_diagonalize(g_).d) neg += sign_of(d) < 0;
    } else {
      Eigen::Matrix4d e;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = g_[i][j];
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(e);
      for (int i = 0; i < 4; ++i) neg += es.eigenvalues()(i) < 0;
    }
    return neg;
  }

  Mat<T, 4> g_;
  Mat<T, 4> inv_;
  T det_;
  int index_ = 0;
};

template <RealField T>
Signature signature(const Metric4<T>& g) {
  return {g.index(), g.index() == 1 || g.index() == 3};
}

/// kappa^{ij}_{rs} = sqrt|det g| g^{ia} g^{jb} eps_{abrs}. Rational mode needs
/// |det g| to be a perfect square.
template <RealField T>
AreaOperator<T> hodge_star(const Metric4<T>& metric) {
  const auto& gi = metric.inverse();
  const T root = field_sqrt(T(metric.det() < 0 ? T(-metric.det()) : metric.det()));
  auto m = zeros<T, 6>();
  for (std::size_t up = 0; up < 6; ++up) {
    const auto i = static_cast<std::size_t>(kAreaPairs[up][0]);
    const auto j = static_cast<std::size_t>(kAreaPairs[up][1]);
    for (std::size_t down = 0; down < 6; ++down) {
      const int r = kAreaPairs[down][0];
      const int s = kAreaPairs[down][1];
      T acc = ScalarTraits<T>::zero();
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const int e = levi_civita(a, b, r, s);
          if (e == 0) continue;
          const T term = gi[i][static_cast<std::size_t>(a)] * gi[j][static_cast<std::size_t>(b)];
          if (e > 0)
            acc += term;
          else
            acc -= term;
        }
      m[down][up] = root * acc;
    }
  }
  return AreaOperator<T>(m);
}

/// g^{ij} xi_i xi_j.
template <RealField T>
T null_eval(const Metric4<T>& g, const Covector4<T>& xi) {
  T s = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) s += g.inverse()[i][j] * xi[i] * xi[j];
  return s;
}

/// lambda with h = lambda g on all ten independent entries.
template <RealField T>
std::optional<T> conformal_factor(const Metric4<T>& g, const Metric4<T>& h) {
  std::size_t pi = 0, pj = 0;
  double best = -1;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      if (ScalarTraits<T>::magnitude(g.g()[i][j]) > best) {
        best = ScalarTraits<T>::magnitude(g.g()[i][j]);
        pi = i;
        pj = j;
      }
  const T lambda = h.g()[pi][pj] / g.g()[pi][pj];
  const double tol = 1e-10 * std::max({1.0, max_abs(g.g()), max_abs(h.g())});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      const T diff = h.g()[i][j] - lambda * g.g()[i][j];
      if constexpr (ScalarTraits<T>::exact) {
        if (!ScalarTraits<T>::is_zero(diff)) return std::nullopt;
      } else {
        if (std::fabs(diff) > tol) return std::nullopt;
      }
    }
  if (ScalarTraits<T>::is_zero(lambda)) return std::nullopt;
  return lambda;
}

/// Blocks (-eps Id, Id/mu, 0, 0), equal to sqrt(eps/mu) *_g for g = diag(-1/(eps mu), 1, 1, 1).
template <RealField T>
AreaOperator<T> isotropic_medium(const T& eps, const T& mu) {
  if (!(eps > 0) || !(mu > 0)) throw Error(ErrorCode::NonPositiveParameter, "permittivity and permeability must be positive");
  ABCDBlocks<T> b;
  for (std::size_t i = 0; i < 3; ++i) {
    b.A[i][i] = -eps;
    b.B[i][i] = T(1) / mu;
  }
  return kappa_from_blocks(b);
}

}  // namespace premetric
