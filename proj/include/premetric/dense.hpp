#pragma once

// Small dense linear algebra over the project scalars. Determinants and
// adjugates are division-free so they also work over polynomial rings; rank,
// kernels and inverses need a field.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "premetric/error.hpp"
#include "premetric/scalar.hpp"

namespace premetric {

template <class T, std::size_t R, std::size_t C = R>
using Mat = std::array<std::array<T, C>, R>;

template <class T, std::size_t N>
using Vec = std::array<T, N>;

template <class T, std::size_t R, std::size_t C = R>
Mat<T, R, C> zeros() {
  Mat<T, R, C> m;
  for (auto& row : m) row.fill(ScalarTraits<T>::zero());
  return m;
}

template <class T, std::size_t N>
Mat<T, N> identity() {
  auto m = zeros<T, N>();
  for (std::size_t i = 0; i < N; ++i) m[i][i] = ScalarTraits<T>::one();
  return m;
}

template <class T, std::size_t N>
Mat<T, N> diagonal(const std::array<T, N>& d) {
  auto m = zeros<T, N>();
  for (std::size_t i = 0; i < N; ++i) m[i][i] = d[i];
  return m;
}

template <class T, std::size_t R, std::size_t C>
Mat<T, C, R> transpose(const Mat<T, R, C>& a) {
  Mat<T, C, R> t;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) t[j][i] = a[i][j];
  return t;
}

template <class T, std::size_t R, std::size_t K, std::size_t C>
Mat<T, R, C> operator*(const Mat<T, R, K>& a, const Mat<T, K, C>& b) {
  auto out = zeros<T, R, C>();
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      if (ScalarTraits<T>::is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < C; ++j) {
        if (ScalarTraits<T>::is_zero(b[k][j])) continue;
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  return out;
}

template <class T, std::size_t R, std::size_t C>
Vec<T, R> operator*(const Mat<T, R, C>& a, const Vec<T, C>& v) {
  Vec<T, R> out;
  out.fill(ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out[i] += a[i][j] * v[j];
  return out;
}

template <class T, std::size_t R, std::size_t C>
Mat<T, R, C> operator+(Mat<T, R, C> a, const Mat<T, R, C>& b) {
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) a[i][j] += b[i][j];
  return a;
}

template <class T, std::size_t R, std::size_t C>
Mat<T, R, C> operator-(Mat<T, R, C> a, const Mat<T, R, C>& b) {
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) a[i][j] -= b[i][j];
  return a;
}

template <class T, std::size_t R, std::size_t C>
Mat<T, R, C> scaled(Mat<T, R, C> a, const T& s) {
  for (auto& row : a)
    for (auto& x : row) x *= s;
  return a;
}

template <class T, std::size_t R, std::size_t C>
bool is_zero_matrix(const Mat<T, R, C>& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!ScalarTraits<T>::is_zero(x)) return false;
  return true;
}

template <class T, std::size_t N>
T trace(const Mat<T, N>& a) {
  T t = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < N; ++i) t += a[i][i];
  return t;
}

template <class T, std::size_t R, std::size_t C>
double max_abs(const Mat<T, R, C>& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) m = std::max(m, ScalarTraits<T>::magnitude(x));
  return m;
}

/// Division-free determinant by Laplace expansion over column subsets.
/// dp[mask] holds the minor on rows 0..popcount(mask)-1 and the columns in mask.
template <class T>
T determinant_rows(const std::vector<const T*>& rows, std::size_t n) {
  if (n == 0) return ScalarTraits<T>::one();
  std::vector<T> dp(std::size_t{1} << n, ScalarTraits<T>::zero());
  std::vector<bool> nonzero(dp.size(), false);
  dp[0] = ScalarTraits<T>::one();
  nonzero[0] = true;
  for (std::uint32_t mask = 1; mask < dp.size(); ++mask) {
    const int k = std::popcount(mask);
    const T* row = rows[static_cast<std::size_t>(k - 1)];
    T acc = ScalarTraits<T>::zero();
    bool any = false;
    int pos = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const std::uint32_t sub = mask & ~(1u << c);
      if (nonzero[sub] && !ScalarTraits<T>::is_zero(row[c])) {
        if (((k - 1) + pos) % 2 == 0)
          acc += row[c] * dp[sub];
        else
          acc -= row[c] * dp[sub];
        any = true;
      }
      ++pos;
    }
    if (any && !ScalarTraits<T>::is_zero(acc)) {
      dp[mask] = std::move(acc);
      nonzero[mask] = true;
    }
  }
  return dp.back();
}

template <class T, std::size_t N>
T determinant(const Mat<T, N>& a) {
  std::vector<const T*> rows;
  for (std::size_t i = 0; i < N; ++i) rows.push_back(a[i].data());
  return determinant_rows(rows, N);
}

/// Classical adjugate: adj(a) * a = det(a) * Id, built from cofactors.
template <class T, std::size_t N>
Mat<T, N> adjugate(const Mat<T, N>& a) {
  auto adj = zeros<T, N>();
  if constexpr (N == 1) {
    adj[0][0] = ScalarTraits<T>::one();
    return adj;
  } else {
    std::array<std::array<T, N - 1>, N - 1> minor;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t r = 0, rr = 0; r < N; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0, cc = 0; c < N; ++c) {
            if (c == j) continue;
            minor[rr][cc++] = a[r][c];
          }
          ++rr;
        }
        T d = determinant(minor);
        if ((i + j) % 2 == 1) d = -d;
        adj[j][i] = std::move(d);
      }
    return adj;
  }
}

/// Dynamically sized row-major matrix for the larger exact eliminations.
template <class T>
struct DynMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DynMatrix() = default;
  DynMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, ScalarTraits<T>::zero()) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  template <std::size_t R, std::size_t C>
  static DynMatrix from(const Mat<T, R, C>& m) {
    DynMatrix d(R, C);
    for (std::size_t i = 0; i < R; ++i)
      for (std::size_t j = 0; j < C; ++j) d(i, j) = m[i][j];
    return d;
  }
};

namespace detail {

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> to_eigen(const DynMatrix<T>& m) {
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> e(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

/// In-place reduced row echelon form over an exact field; returns pivot columns.
template <class T>
std::vector<std::size_t> rref_exact(DynMatrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && ScalarTraits<T>::is_zero(m(p, c))) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    const T inv = ScalarTraits<T>::one() / m(r, c);
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || ScalarTraits<T>::is_zero(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Relative singular-value cutoff used for all floating rank decisions.
inline constexpr double kRankTolerance = 1e-9;

template <Field T>
std::size_t rank(DynMatrix<T> m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if constexpr (ScalarTraits<T>::exact) {
    return detail::rref_exact(m).size();
  } else {
    Eigen::JacobiSVD<Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>> svd(detail::to_eigen(m));
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > kRankTolerance * s(0)) ++r;
    return r;
  }
}

/// Basis of {x : m x = 0}, one vector per free column (exact) or per small
/// singular value (floating).
template <Field T>
std::vector<std::vector<T>> nullspace(DynMatrix<T> m) {
  std::vector<std::vector<T>> basis;
  if constexpr (ScalarTraits<T>::exact) {
    const auto pivots = detail::rref_exact(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < m.cols; ++free) {
      if (is_pivot[free]) continue;
      std::vector<T> v(m.cols, ScalarTraits<T>::zero());
      v[free] = ScalarTraits<T>::one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
      basis.push_back(std::move(v));
    }
  } else {
    using EM = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    EM e = detail::to_eigen(m);
    // Pad to square so the full right singular basis is available.
    if (e.rows() < e.cols()) {
      EM padded = EM::Zero(e.cols(), e.cols());
      padded.topRows(e.rows()) = e;
      e = padded;
    }
    Eigen::JacobiSVD<EM> svd(e, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double top = s.size() ? s(0) : 0.0;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m.cols); ++i) {
      const double si = i < s.size() ? s(i) : 0.0;
      if (top == 0.0 || si <= kRankTolerance * top) {
        std::vector<T> v(m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) v[j] = svd.matrixV()(static_cast<Eigen::Index>(j), i);
        basis.push_back(std::move(v));
      }
    }
  }
  return basis;
}

template <Field T, std::size_t N>
std::size_t rank(const Mat<T, N>& m) {
  return rank(DynMatrix<T>::from(m));
}

/// Inverse over a field; throws SingularOperator when the matrix is singular
/// (exactly, or relative to kRankTolerance in floating mode).
template <Field T, std::size_t N>
Mat<T, N> inverse(const Mat<T, N>& a) {
  if constexpr (ScalarTraits<T>::exact) {
    DynMatrix<T> aug(N, 2 * N);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) aug(i, j) = a[i][j];
      aug(i, N + i) = ScalarTraits<T>::one();
    }
    const auto pivots = detail::rref_exact(aug);
    if (pivots.size() < N || pivots[N - 1] != N - 1)
      throw Error(ErrorCode::SingularOperator, "matrix is singular");
    Mat<T, N> inv;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) inv[i][j] = aug(i, N + j);
    return inv;
  } else {
    if (rank(a) < N) throw Error(ErrorCode::SingularOperator, "matrix is numerically singular");
    using EM = Eigen::Matrix<T, static_cast<int>(N), static_cast<int>(N)>;
    EM e;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a[i][j];
    const EM ei = e.fullPivLu().inverse();
    Mat<T, N> inv;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) inv[i][j] = ei(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return inv;
  }
}

template <class T, std::size_t R, std::size_t C>
bool operator_equal(const Mat<T, R, C>& a, const Mat<T, R, C>& b) {
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}

template <class T, std::size_t R, std::size_t C>
bool approx_equal(const Mat<T, R, C>& a, const Mat<T, R, C>& b, double rel_tol) {
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (ScalarTraits<T>::magnitude(a[i][j] - b[i][j]) > rel_tol * scale) return false;
  return true;
}

template <class To, class From, std::size_t R, std::size_t C>
Mat<To, R, C> convert(const Mat<From, R, C>& a) {
  Mat<To, R, C> out;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      if constexpr (std::is_same_v<From, Rational>)
        out[i][j] = from_rational<To>(a[i][j]);
      else
        out[i][j] = static_cast<To>(a[i][j]);
    }
  return out;
}

/// P and d with Pᵀ a P = diag(d) for symmetric a, by symmetric elimination.
/// Exact in rational mode; P is invertible (unit determinant up to sign).
template <RealField T, std::size_t N>
struct Congruence {
  Mat<T, N> P;
  std::array<T, N> d;
};

template <RealField T, std::size_t N>
Congruence<T, N> congruence_diagonalize(const Mat<T, N>& a) {
  auto s = a;
  auto p = identity<T, N>();
  const double scale = std::max(1.0, max_abs(a));
  auto nonzero = [&](const T& x) {
    if constexpr (ScalarTraits<T>::exact)
      return !ScalarTraits<T>::is_zero(x);
    else
      return std::fabs(x) > 1e-13 * scale;
  };
  auto swap_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < N; ++r) std::swap(s[r][i], s[r][j]);
    std::swap(s[i], s[j]);
    for (std::size_t r = 0; r < N; ++r) std::swap(p[r][i], p[r][j]);
  };
  // Replaces basis vector k by e_k + c e_j.
  auto add_index = [&](std::size_t k, std::size_t j, const T& c) {
    for (std::size_t r = 0; r < N; ++r) s[r][k] += c * s[r][j];
    for (std::size_t r = 0; r < N; ++r) s[k][r] += c * s[j][r];
    for (std::size_t r = 0; r < N; ++r) p[r][k] += c * p[r][j];
  };
  std::array<T, N> d;
  for (std::size_t k = 0; k < N; ++k) {
    if (!nonzero(s[k][k])) {
      std::size_t j = k + 1;
      while (j < N && !nonzero(s[j][j])) ++j;
      if (j < N) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < N && !nonzero(s[k][j])) ++j;
        if (j < N) add_index(k, j, ScalarTraits<T>::one());
      }
    }
    d[k] = s[k][k];
    if (!nonzero(d[k])) continue;
    for (std::size_t i = k + 1; i < N; ++i) {
      if (ScalarTraits<T>::is_zero(s[i][k])) continue;
      const T c = -s[i][k] / s[k][k];
      add_index(i, k, c);
    }
  }
  return {p, d};
}

}  // namespace premetric
