#pragma once

// Leading-order geometric optics: the map L_xi(a) = xi ^ kappa(xi ^ a), its
// kernel, and the reduced 3x3 matrix in coordinates adapted to xi.

#include <Eigen/Eigenvalues>

#include <random>
#include <vector>

#include "premetric/area_operator.hpp"
#include "premetric/metric.hpp"

namespace premetric {

/// 3-forms are stored by their dual index: w^l = (1/6) eps^{abcl} w_{abc}.
template <class T>
using ThreeForm = Vec<T, 4>;

template <class T>
struct KernelReport {
  int dim_ker_L = 0;
  int dim_V = 0;
  Mat<T, 3> Q{};
  std::vector<Covector4<T>> kernel_basis;
};

namespace detail {

template <class T>
bool covector_is_zero(const Covector4<T>& xi) {
  for (const auto& x : xi)
    if (!ScalarTraits<T>::is_zero(x)) return false;
  return true;
}

template <class T>
Vec<T, 6> wedge_1_1(const Covector4<T>& a, const Covector4<T>& b) {
  Vec<T, 6> u;
  for (std::size_t p = 0; p < 6; ++p) {
    const auto i = static_cast<std::size_t>(kAreaPairs[p][0]);
    const auto j = static_cast<std::size_t>(kAreaPairs[p][1]);
    u[p] = a[i] * b[j] - a[j] * b[i];
  }
  return u;
}

/// (a ^ F)^l = (1/2) eps^{ijkl} a_i F_{jk}, summed over ordered pairs.
template <class T>
ThreeForm<T> wedge_1_2(const Covector4<T>& a, const Vec<T, 6>& f) {
  ThreeForm<T> out;
  out.fill(ScalarTraits<T>::zero());
  for (int l = 0; l < 4; ++l)
    for (int i = 0; i < 4; ++i)
      for (std::size_t p = 0; p < 6; ++p) {
        const int e = levi_civita(i, kAreaPairs[p][0], kAreaPairs[p][1], l);
        if (e == 0) continue;
        const T term = a[static_cast<std::size_t>(i)] * f[p];
        if (e > 0)
          out[static_cast<std::size_t>(l)] += term;
        else
          out[static_cast<std::size_t>(l)] -= term;
      }
  return out;
}

template <Field T>
std::vector<Covector4<T>> to_covectors(const std::vector<std::vector<T>>& basis) {
  std::vector<Covector4<T>> out;
  for (const auto& v : basis) {
    Covector4<T> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = v[i];
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

template <class T>
ThreeForm<T> L_xi_apply(const AreaOperator<T>& kappa, const Covector4<T>& xi, const Covector4<T>& alpha) {
  return detail::wedge_1_2(xi, kappa.apply(detail::wedge_1_1(xi, alpha)));
}

/// Column r is L_xi applied to the r-th coordinate covector.
template <class T>
Mat<T, 4> L_xi_matrix(const AreaOperator<T>& kappa, const Covector4<T>& xi) {
  Mat<T, 4> m = zeros<T, 4>();
  for (std::size_t r = 0; r < 4; ++r) {
    Covector4<T> e;
    e.fill(ScalarTraits<T>::zero());
    e[r] = ScalarTraits<T>::one();
    const auto col = L_xi_apply(kappa, xi, e);
    for (std::size_t l = 0; l < 4; ++l) m[l][r] = col[l];
  }
  return m;
}

/// Jacobian J = dx/dx~ of coordinates x~ with dx~^0 = xi. The rows of J^{-1}
/// are xi followed by the coordinate covectors other than the pivot.
template <Field T>
Mat<T, 4> adapted_jacobian(const Covector4<T>& xi) {
  if (detail::covector_is_zero(xi)) throw Error(ErrorCode::ZeroCovector, "xi must be nonzero");
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (ScalarTraits<T>::magnitude(xi[i]) > ScalarTraits<T>::magnitude(xi[pivot])) pivot = i;
  Mat<T, 4> k = zeros<T, 4>();
  k[0] = xi;
  std::size_t row = 1;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i == pivot) continue;
    k[row++][i] = ScalarTraits<T>::one();
  }
  return inverse(k);
}

/// Q^{ij} = eps^{0abj} kappa'^{0i}_{ab} in the adapted coordinates.
template <Field T>
Mat<T, 3> q_matrix(const AreaOperator<T>& kappa_adapted) {
  Mat<T, 3> q = zeros<T, 3>();
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) {
      T acc = ScalarTraits<T>::zero();
      for (int a = 1; a < 4; ++a)
        for (int b = 1; b < 4; ++b) {
          const int e = levi_civita(0, a, b, j);
          if (e == 0) continue;
          const T v = kappa_adapted.component(0, i, a, b);
          if (e > 0)
            acc += v;
          else
            acc -= v;
        }
      q[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = acc;
    }
  return q;
}

template <Field T>
KernelReport<T> kernel_report(const AreaOperator<T>& kappa, const Covector4<T>& xi) {
  KernelReport<T> rep;
  const auto j = adapted_jacobian(xi);
  rep.Q = q_matrix(transform(kappa, j));
  rep.dim_V = 3 - static_cast<int>(rank(rep.Q));
  rep.kernel_basis = detail::to_covectors(nullspace(DynMatrix<T>::from(L_xi_matrix(kappa, xi))));
  rep.dim_ker_L = static_cast<int>(rep.kernel_basis.size());
  return rep;
}

template <RealField T>
struct HodgeKernel {
  Mat<T, 4> H{};
  std::vector<double> spectrum;  // ascending
  T g_xi_xi{};
  bool null = false;
  std::vector<Covector4<T>> kernel_basis;  // ker L_xi for the Hodge star of g
  bool kernel_is_orthogonal_complement = false;
};

/// H^{ir} = g(xi,xi) g^{ir} - (g^{-1} xi)^i (g^{-1} xi)^r.
template <RealField T>
HodgeKernel<T> hodge_kernel(const Metric4<T>& g, const Covector4<T>& xi) {
  if (detail::covector_is_zero(xi)) throw Error(ErrorCode::ZeroCovector, "xi must be nonzero");
  HodgeKernel<T> out;
  const auto& gi = g.inverse();
  const auto up = gi * xi;
  out.g_xi_xi = null_eval(g, xi);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t r = 0; r < 4; ++r) out.H[i][r] = out.g_xi_xi * gi[i][r] - up[i] * up[r];

  Eigen::Matrix4d h;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index r = 0; r < 4; ++r) h(i, r) = to_double(out.H[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(h, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < 4; ++i) out.spectrum.push_back(es.eigenvalues()(i));

  if constexpr (ScalarTraits<T>::exact)
    out.null = out.g_xi_xi == 0;
  else
    out.null = std::fabs(out.g_xi_xi) <= kRankTolerance * max_abs(gi) * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3]);

  out.kernel_basis = detail::to_covectors(nullspace(DynMatrix<T>::from(L_xi_matrix(hodge_star(g), xi))));
  if (out.null) {
    bool ok = out.kernel_basis.size() == 3;
    for (const auto& a : out.kernel_basis) {
      T s = ScalarTraits<T>::zero();
      for (std::size_t i = 0; i < 4; ++i) s += a[i] * up[i];
      if constexpr (ScalarTraits<T>::exact)
        ok = ok && s == 0;
      else
        ok = ok && std::fabs(s) <= 1e-9 * std::max(1.0, max_abs(gi));
    }
    out.kernel_is_orthogonal_complement = ok;
  }
  return out;
}

struct AxionReport {
  bool axion = false;
  int samples = 0;
  bool sampling_agrees = true;
};

/// Axion type means vanishing principal and skewon parts; random covectors
/// must then all have dim V = 3, and otherwise at least one must not.
template <RealField T>
AxionReport axion_test(const AreaOperator<T>& kappa, int samples = 20, std::uint64_t seed = 20240901) {
  AxionReport rep;
  const auto d = decompose(kappa);
  if constexpr (ScalarTraits<T>::exact)
    rep.axion = is_zero_matrix(d.principal.matrix()) && is_zero_matrix(d.skewon.matrix());
  else
    rep.axion = max_abs(d.principal.matrix()) <= 1e-12 * std::max(1.0, max_abs(kappa.matrix())) &&
                max_abs(d.skewon.matrix()) <= 1e-12 * std::max(1.0, max_abs(kappa.matrix()));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-6, 6);
  bool all_three = true;
  for (int n = 0; n < samples; ++n) {
    Covector4<T> xi;
    do {
      for (auto& x : xi) {
        Rational q(pick(rng), 1 + (pick(rng) + 6) % 4);
        q.canonicalize();
        x = from_rational<T>(q);
      }
    } while (detail::covector_is_zero(xi));
    all_three = all_three && kernel_report(kappa, xi).dim_V == 3;
  }
  rep.samples = samples;
  rep.sampling_agrees = all_three == rep.axion;
  return rep;
}

}  // namespace premetric
