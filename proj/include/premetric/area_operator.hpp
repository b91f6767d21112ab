#pragma once

// Antisymmetric (2,2)-tensors on a 4-dimensional fiber, stored as 6x6 matrices
// acting on 2-form components in the fixed basis kAreaPairs.
//
// A 2-form u = 1/2 u_ij dx^i ^ dx^j is the vector (u_{P[0]}, ..., u_{P[5]}).
// The operator matrix is M[I][J] = kappa^{P[J]}_{P[I]}, so (kappa u)_I = M[I][J] u_J.

#include <array>
#include <cstdlib>
#include <string>
#include <tuple>
#include <vector>

#include "premetric/dense.hpp"
#include "premetric/error.hpp"
#include "premetric/scalar.hpp"

namespace premetric {

inline constexpr std::array<std::array<int, 2>, 6> kAreaPairs = {{{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

struct AreaSlot {
  int index;  // -1 when i == j
  int sign;   // orientation relative to kAreaPairs, 0 when i == j
};

constexpr AreaSlot area_slot(int i, int j) {
  for (int n = 0; n < 6; ++n) {
    if (kAreaPairs[n][0] == i && kAreaPairs[n][1] == j) return {n, 1};
    if (kAreaPairs[n][0] == j && kAreaPairs[n][1] == i) return {n, -1};
  }
  return {-1, 0};
}

/// Permutation sign of distinct indices, 0 on repeats. eps_0123 = +1.
constexpr int levi_civita(int a, int b, int c, int d) {
  const int v[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

constexpr int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  int sign = 1;
  if (a > b) sign = -sign;
  if (a > c) sign = -sign;
  if (b > c) sign = -sign;
  return sign;
}

template <class T>
class AreaOperator {
 public:
  AreaOperator() : m_(zeros<T, 6>()) {}
  explicit AreaOperator(const Mat<T, 6>& m) : m_(m) {}

  static AreaOperator zero() { return AreaOperator(); }
  static AreaOperator identity() { return AreaOperator(premetric::identity<T, 6>()); }

  const Mat<T, 6>& matrix() const { return m_; }
  const T& operator()(std::size_t row, std::size_t col) const { return m_[row][col]; }

  /// kappa^{ij}_{kl}.
  T component(int i, int j, int k, int l) const {
    const AreaSlot up = area_slot(i, j);
    const AreaSlot down = area_slot(k, l);
    if (up.sign == 0 || down.sign == 0) return ScalarTraits<T>::zero();
    const T& v = m_[down.index][up.index];
    return up.sign * down.sign > 0 ? v : T(-v);
  }

  Vec<T, 6> apply(const Vec<T, 6>& u) const { return m_ * u; }

  friend bool operator==(const AreaOperator& a, const AreaOperator& b) { return operator_equal(a.m_, b.m_); }

 private:
  Mat<T, 6> m_;
};

template <class T>
struct ABCDBlocks {
  Mat<T, 3> A = zeros<T, 3>();
  Mat<T, 3> B = zeros<T, 3>();
  Mat<T, 3> C = zeros<T, 3>();
  Mat<T, 3> D = zeros<T, 3>();

  friend bool operator==(const ABCDBlocks& x, const ABCDBlocks& y) {
    return operator_equal(x.A, y.A) && operator_equal(x.B, y.B) && operator_equal(x.C, y.C) && operator_equal(x.D, y.D);
  }
};

template <class T>
struct MediumDecomposition {
  AreaOperator<T> principal;
  AreaOperator<T> skewon;
  T axion_coeff;
};

template <class T>
struct ComponentEntry {
  int i, j, k, l;
  T value;
};

template <class T>
AreaOperator<T> kappa_from_components(const std::vector<ComponentEntry<T>>& entries) {
  auto m = zeros<T, 6>();
  Mat<bool, 6> set{};
  for (const auto& e : entries) {
    for (int idx : {e.i, e.j, e.k, e.l})
      if (idx < 0 || idx > 3) throw Error(ErrorCode::ConflictingComponent, "index out of range 0..3");
    const AreaSlot up = area_slot(e.i, e.j);
    const AreaSlot down = area_slot(e.k, e.l);
    if (up.sign == 0 || down.sign == 0) {
      if (!ScalarTraits<T>::is_zero(e.value))
        throw Error(ErrorCode::ConflictingComponent, "nonzero value on a repeated index pair");
      continue;
    }
    T v = up.sign * down.sign > 0 ? e.value : T(-e.value);
    auto& slot = m[down.index][up.index];
    auto& written = set[down.index][up.index];
    if (written && !(slot == v))
      throw Error(ErrorCode::ConflictingComponent,
                  "component (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.k) + "," +
                      std::to_string(e.l) + ") conflicts with an earlier entry");
    slot = std::move(v);
    written = true;
  }
  return AreaOperator<T>(m);
}

/// The operator matrix is [[C^T, B^T], [A^T, D^T]] in the kAreaPairs basis.
template <class T>
ABCDBlocks<T> blocks_from_kappa(const AreaOperator<T>& kappa) {
  ABCDBlocks<T> b;
  const auto& m = kappa.matrix();
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t i = 0; i < 3; ++i) {
      b.C[r][i] = m[i][r];
      b.B[r][i] = m[i][3 + r];
      b.A[r][i] = m[3 + i][r];
      b.D[r][i] = m[3 + i][3 + r];
    }
  return b;
}

template <class T>
AreaOperator<T> kappa_from_blocks(const ABCDBlocks<T>& b) {
  auto m = zeros<T, 6>();
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t i = 0; i < 3; ++i) {
      m[i][r] = b.C[r][i];
      m[i][3 + r] = b.B[r][i];
      m[3 + i][r] = b.A[r][i];
      m[3 + i][3 + r] = b.D[r][i];
    }
  return AreaOperator<T>(m);
}

template <class T>
bool blocks_skewon_free(const ABCDBlocks<T>& b) {
  return operator_equal(b.A, transpose(b.A)) && operator_equal(b.B, transpose(b.B)) &&
         operator_equal(b.C, transpose(b.D));
}

template <class T>
T trace(const AreaOperator<T>& k) {
  return trace(k.matrix());
}

template <class T>
AreaOperator<T> compose(const AreaOperator<T>& a, const AreaOperator<T>& b) {
  return AreaOperator<T>(a.matrix() * b.matrix());
}

template <class T>
AreaOperator<T> add(const AreaOperator<T>& a, const AreaOperator<T>& b) {
  return AreaOperator<T>(a.matrix() + b.matrix());
}

template <class T>
AreaOperator<T> subtract(const AreaOperator<T>& a, const AreaOperator<T>& b) {
  return AreaOperator<T>(a.matrix() - b.matrix());
}

template <class T>
AreaOperator<T> scale(const AreaOperator<T>& a, const T& s) {
  return AreaOperator<T>(scaled(a.matrix(), s));
}

template <class T>
AreaOperator<T> negate(const AreaOperator<T>& a) {
  return scale(a, T(-ScalarTraits<T>::one()));
}

template <class T>
AreaOperator<T> add_identity(const AreaOperator<T>& a, const T& f) {
  auto m = a.matrix();
  for (std::size_t i = 0; i < 6; ++i) m[i][i] += f;
  return AreaOperator<T>(m);
}

template <class T>
T det6(const AreaOperator<T>& k) {
  return determinant(k.matrix());
}

template <class T>
AreaOperator<T> adjugate(const AreaOperator<T>& k) {
  return AreaOperator<T>(premetric::adjugate(k.matrix()));
}

template <Field T>
AreaOperator<T> inverse(const AreaOperator<T>& k) {
  return AreaOperator<T>(premetric::inverse(k.matrix()));
}

/// The pairing u ^ v = <u, v> dx^0 ^ dx^1 ^ dx^2 ^ dx^3 pairs slot I with slot I +- 3.
template <class T>
T wedge_pairing(const Vec<T, 6>& u, const Vec<T, 6>& v) {
  T s = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < 3; ++i) s += u[i] * v[i + 3] + u[i + 3] * v[i];
  return s;
}

/// kappa^dagger = W M^T W with W the pairing matrix.
template <class T>
AreaOperator<T> wedge_adjoint(const AreaOperator<T>& k) {
  const auto& m = k.matrix();
  Mat<T, 6> out;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) out[i][j] = m[(j + 3) % 6][(i + 3) % 6];
  return AreaOperator<T>(out);
}

template <class T>
MediumDecomposition<T> decompose(const AreaOperator<T>& k) {
  if constexpr (ScalarTraits<T>::is_complex) {
    throw Error(ErrorCode::ComplexUnsupported, "decomposition is defined for real media only");
  } else {
    const T half = from_rational<T>(Rational(1, 2));
    const auto skew = scale(subtract(k, wedge_adjoint(k)), half);
    const T f = trace(k) / from_rational<T>(Rational(6));
    auto principal = add_identity(subtract(k, skew), T(-f));
    return {principal, skew, f};
  }
}

template <class T>
AreaOperator<T> reconstruct(const MediumDecomposition<T>& d) {
  return add_identity(add(d.principal, d.skewon), d.axion_coeff);
}

/// Induced map on 2-form components: (L u)_{ab} = J^i_a J^j_b u_ij, J = dx/dx~.
template <class T>
Mat<T, 6> lower_area_map(const Mat<T, 4>& j) {
  Mat<T, 6> l;
  for (std::size_t row = 0; row < 6; ++row) {
    const auto a = static_cast<std::size_t>(kAreaPairs[row][0]);
    const auto b = static_cast<std::size_t>(kAreaPairs[row][1]);
    for (std::size_t col = 0; col < 6; ++col) {
      const auto i = static_cast<std::size_t>(kAreaPairs[col][0]);
      const auto k = static_cast<std::size_t>(kAreaPairs[col][1]);
      l[row][col] = j[i][a] * j[k][b] - j[k][a] * j[i][b];
    }
  }
  return l;
}

/// Tensor transformation of kappa to coordinates x~ with Jacobian J = dx/dx~.
/// Composition: transform(k, J1 J2) = transform(transform(k, J1), J2).
template <Field T>
AreaOperator<T> transform(const AreaOperator<T>& k, const Mat<T, 4>& jac) {
  Mat<T, 4> jinv;
  try {
    jinv = premetric::inverse(jac);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularJacobian, "Jacobian is singular");
  }
  return AreaOperator<T>(lower_area_map(jac) * k.matrix() * lower_area_map(jinv));
}

/// 4x4 Jacobian block-diag(1, P).
template <class T>
Mat<T, 4> spatial_jacobian(const Mat<T, 3>& p) {
  auto j = premetric::identity<T, 4>();
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) j[r + 1][c + 1] = p[r][c];
  return j;
}

template <class To, class From>
AreaOperator<To> convert(const AreaOperator<From>& k) {
  return AreaOperator<To>(premetric::convert<To>(k.matrix()));
}

}  // namespace premetric
