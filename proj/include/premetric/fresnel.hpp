#pragma once

// Tamm-Rubilar density, the Fresnel quartic and its root structure, the
// polarization identity, and the invariances of the density under changes of
// the medium.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "premetric/area_operator.hpp"
#include "premetric/metric.hpp"
#include "premetric/quartic.hpp"
#include "premetric/univariate.hpp"

namespace premetric {

using Quad = std::array<int, 4>;

/// The 35 sorted multi-indices i <= j <= k <= l in lexicographic order.
inline const std::array<Quad, 35>& sorted_quads() {
  static const std::array<Quad, 35> quads = [] {
    std::array<Quad, 35> q{};
    std::size_t n = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        for (int k = j; k < 4; ++k)
          for (int l = k; l < 4; ++l) q[n++] = {i, j, k, l};
    return q;
  }();
  return quads;
}

inline std::size_t quad_index(Quad q) {
  std::sort(q.begin(), q.end());
  const auto& all = sorted_quads();
  return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), q) - all.begin());
}

/// Number of distinct orderings of a sorted multi-index (4!/prod m_i!).
inline int quad_multiplicity(const Quad& q) {
  int counts[4] = {0, 0, 0, 0};
  for (int v : q) ++counts[v];
  int denom = 1;
  for (int c : counts)
    for (int f = 2; f <= c; ++f) denom *= f;
  return 24 / denom;
}

inline std::string quad_key(const Quad& q) {
  return std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]) + std::to_string(q[3]);
}

template <class T>
using Rank4 = std::array<T, 256>;

constexpr std::size_t r4(int i, int j, int k, int l) { return static_cast<std::size_t>(((i * 4 + j) * 4 + k) * 4 + l); }

template <class T>
T ring_sum(std::vector<T>& terms) {
  if (terms.empty()) return ScalarTraits<T>::zero();
  T acc = terms[0];
  for (std::size_t n = 1; n < terms.size(); ++n) acc += terms[n];
  return acc;
}

/// G_0^{ijkl} = 1/48 k^{a1a2}_{b1b2} k^{a3 i}_{b3b4} k^{a4 j}_{b5b6} eps^{b1b2b5k} eps^{b3b4b6l} eps_{a1a2a3a4},
/// evaluated in factored form. The two eps contractions against a single kappa
/// collapse to one complementary area slot each.
template <class T>
Rank4<T> tamm_rubilar_raw(const AreaOperator<T>& kappa) {
  const T zero = ScalarTraits<T>::zero();
  auto comp = [&](int i, int j, int k, int l) { return kappa.component(i, j, k, l); };

  // U[a3][a4][b5][k] = eps_{a1a2a3a4} k^{a1a2}_{b1b2} eps^{b1b2b5k}
  //                  = 4 eps(c, a3, a4) eps(d, b5, k) k^{c}_{d} with c, d the complementary pairs.
  Rank4<T> u;
  u.fill(zero);
  for (int a3 = 0; a3 < 4; ++a3)
    for (int a4 = 0; a4 < 4; ++a4) {
      if (a3 == a4) continue;
      int c0 = -1, c1 = -1;
      for (int x = 0; x < 4; ++x)
        if (x != a3 && x != a4) (c0 < 0 ? c0 : c1) = x;
      const int ea = levi_civita(c0, c1, a3, a4);
      for (int b5 = 0; b5 < 4; ++b5)
        for (int k = 0; k < 4; ++k) {
          if (b5 == k) continue;
          int d0 = -1, d1 = -1;
          for (int x = 0; x < 4; ++x)
            if (x != b5 && x != k) (d0 < 0 ? d0 : d1) = x;
          const int s = 4 * ea * levi_civita(d0, d1, b5, k);
          T v = comp(c0, c1, d0, d1);
          if (ScalarTraits<T>::is_zero(v)) continue;
          u[r4(a3, a4, b5, k)] = v * from_rational<T>(Rational(s));
        }
    }

  // V[a3][i][b6][l] = k^{a3 i}_{b3b4} eps^{b3b4b6l} = 2 eps(d, b6, l) k^{a3 i}_{d}.
  Rank4<T> v;
  v.fill(zero);
  for (int b6 = 0; b6 < 4; ++b6)
    for (int l = 0; l < 4; ++l) {
      if (b6 == l) continue;
      int d0 = -1, d1 = -1;
      for (int x = 0; x < 4; ++x)
        if (x != b6 && x != l) (d0 < 0 ? d0 : d1) = x;
      const int s = 2 * levi_civita(d0, d1, b6, l);
      for (int a3 = 0; a3 < 4; ++a3)
        for (int i = 0; i < 4; ++i) {
          T w = comp(a3, i, d0, d1);
          if (ScalarTraits<T>::is_zero(w)) continue;
          v[r4(a3, i, b6, l)] = w * from_rational<T>(Rational(s));
        }
    }

  // Y[a3][j][k][b6] = sum_{a4, b5} U[a3][a4][b5][k] k^{a4 j}_{b5 b6}.
  Rank4<T> y;
  y.fill(zero);
  std::vector<T> terms;
  for (int a3 = 0; a3 < 4; ++a3)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int b6 = 0; b6 < 4; ++b6) {
          terms.clear();
          for (int a4 = 0; a4 < 4; ++a4)
            for (int b5 = 0; b5 < 4; ++b5) {
              const T& uu = u[r4(a3, a4, b5, k)];
              if (ScalarTraits<T>::is_zero(uu)) continue;
              T kk = comp(a4, j, b5, b6);
              if (ScalarTraits<T>::is_zero(kk)) continue;
              terms.push_back(uu * kk);
            }
          y[r4(a3, j, k, b6)] = ring_sum(terms);
        }

  const T scale48 = from_rational<T>(Rational(1, 48));
  Rank4<T> g0;
  g0.fill(zero);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          terms.clear();
          for (int a3 = 0; a3 < 4; ++a3)
            for (int b6 = 0; b6 < 4; ++b6) {
              const T& yy = y[r4(a3, j, k, b6)];
              const T& vv = v[r4(a3, i, b6, l)];
              if (ScalarTraits<T>::is_zero(yy) || ScalarTraits<T>::is_zero(vv)) continue;
              terms.push_back(yy * vv);
            }
          if (terms.empty()) continue;
          g0[r4(i, j, k, l)] = ring_sum(terms) * scale48;
        }
  return g0;
}

/// Fully symmetric rank-4 contravariant density, stored by sorted multi-index.
template <class T>
class TammRubilar {
 public:
  TammRubilar() { c_.fill(ScalarTraits<T>::zero()); }
  explicit TammRubilar(const std::array<T, 35>& c) : c_(c) {}

  const T& at(int i, int j, int k, int l) const { return c_[quad_index({i, j, k, l})]; }
  const T& operator[](std::size_t n) const { return c_[n]; }
  T& operator[](std::size_t n) { return c_[n]; }
  const std::array<T, 35>& components() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return ScalarTraits<T>::is_zero(x); });
  }

  friend bool operator==(const TammRubilar& a, const TammRubilar& b) {
    for (std::size_t n = 0; n < 35; ++n)
      if (!(a.c_[n] == b.c_[n])) return false;
    return true;
  }

 private:
  std::array<T, 35> c_;
};

/// Average over all 24 orderings of each multi-index.
template <class T>
TammRubilar<T> symmetrize(const Rank4<T>& g0) {
  TammRubilar<T> g;
  const T inv24 = from_rational<T>(Rational(1, 24));
  std::vector<T> terms;
  for (std::size_t n = 0; n < 35; ++n) {
    Quad q = sorted_quads()[n];
    terms.clear();
    // Iterate over all 24 permutations of the positions, repeats included.
    std::array<int, 4> pos{0, 1, 2, 3};
    do {
      const T& x = g0[r4(q[pos[0]], q[pos[1]], q[pos[2]], q[pos[3]])];
      if (!ScalarTraits<T>::is_zero(x)) terms.push_back(x);
    } while (std::next_permutation(pos.begin(), pos.end()));
    if (!terms.empty()) g[n] = ring_sum(terms) * inv24;
  }
  return g;
}

template <class T>
TammRubilar<T> tamm_rubilar(const AreaOperator<T>& kappa) {
  return symmetrize(tamm_rubilar_raw(kappa));
}

template <class T>
TammRubilar<T> scale(const TammRubilar<T>& g, const T& s) {
  TammRubilar<T> out;
  for (std::size_t n = 0; n < 35; ++n) out[n] = g[n] * s;
  return out;
}

template <class T>
TammRubilar<T> add(const TammRubilar<T>& a, const TammRubilar<T>& b) {
  TammRubilar<T> out;
  for (std::size_t n = 0; n < 35; ++n) out[n] = a[n] + b[n];
  return out;
}

/// G_{g,kappa} = G(kappa) / sqrt|det g|.
template <RealField T>
TammRubilar<T> g_tensor(const Metric4<T>& g, const AreaOperator<T>& kappa) {
  const T root = field_sqrt(abs_value(g.det()));
  return scale(tamm_rubilar(kappa), T(T(1) / root));
}

/// G^{ijkl} xi_i xi_j xi_k xi_l.
template <class T>
T fresnel_eval(const TammRubilar<T>& g, const Covector4<T>& xi) {
  T s = ScalarTraits<T>::zero();
  const auto& quads = sorted_quads();
  for (std::size_t n = 0; n < 35; ++n) {
    if (ScalarTraits<T>::is_zero(g[n])) continue;
    const auto& q = quads[n];
    T term = g[n] * from_rational<T>(Rational(quad_multiplicity(q)));
    for (int v : q) term *= xi[static_cast<std::size_t>(v)];
    s += term;
  }
  return s;
}

/// Coefficient of the monomial xi^q in the Fresnel quartic, per sorted multi-index.
template <class T>
std::array<T, 35> quartic_coefficients(const TammRubilar<T>& g) {
  std::array<T, 35> c;
  for (std::size_t n = 0; n < 35; ++n) c[n] = g[n] * from_rational<T>(Rational(quad_multiplicity(sorted_quads()[n])));
  return c;
}

template <class T>
struct Quartic1D {
  std::array<T, 5> c;  // c[k] multiplies xi_0^k
};

/// Restriction of the quartic to xi = (xi_0, q).
template <class T>
Quartic1D<T> quartic_in_xi0(const TammRubilar<T>& g, const Vec<T, 3>& q) {
  Quartic1D<T> out;
  for (auto& x : out.c) x = ScalarTraits<T>::zero();
  const auto& quads = sorted_quads();
  for (std::size_t n = 0; n < 35; ++n) {
    if (ScalarTraits<T>::is_zero(g[n])) continue;
    int zeros = 0;
    T term = g[n] * from_rational<T>(Rational(quad_multiplicity(quads[n])));
    for (int v : quads[n]) {
      if (v == 0)
        ++zeros;
      else
        term *= q[static_cast<std::size_t>(v - 1)];
    }
    out.c[static_cast<std::size_t>(zeros)] += term;
  }
  return out;
}

/// Root clusters of the quartic in xi_0; exact multiplicities in rational mode.
template <class T>
std::vector<RootCluster> quartic_roots(const Quartic1D<T>& p) {
  const bool all_zero = std::all_of(p.c.begin(), p.c.end(), [](const T& x) { return ScalarTraits<T>::is_zero(x); });
  if (all_zero) throw Error(ErrorCode::DegeneratePolynomial, "all five coefficients vanish");
  if constexpr (std::is_same_v<T, Rational>) {
    return exact_root_clusters(UPoly<Rational>(std::vector<Rational>(p.c.begin(), p.c.end())));
  } else {
    std::array<Complex, 5> c;
    for (std::size_t k = 0; k < 5; ++k) c[k] = Complex(p.c[k]);
    return cluster_roots(c, solve_quartic(c));
  }
}

/// Recovers all 35 components from values on the diagonal,
/// L(x1..x4) = 1/(4! 2^4) sum_theta theta1..theta4 L(sum theta_i x_i, ...).
template <class T>
TammRubilar<T> polarization_reconstruct(const std::function<T(const Covector4<T>&)>& diag) {
  TammRubilar<T> out;
  const T norm = from_rational<T>(Rational(1, 24 * 16));
  for (std::size_t n = 0; n < 35; ++n) {
    const auto& q = sorted_quads()[n];
    T acc = ScalarTraits<T>::zero();
    for (int mask = 0; mask < 16; ++mask) {
      Covector4<T> x;
      x.fill(ScalarTraits<T>::zero());
      int sign = 1;
      for (int t = 0; t < 4; ++t) {
        const bool neg = (mask >> t) & 1;
        if (neg) sign = -sign;
        x[static_cast<std::size_t>(q[t])] += from_rational<T>(Rational(neg ? -1 : 1));
      }
      const T v = diag(x);
      if (sign > 0)
        acc += v;
      else
        acc -= v;
    }
    out[n] = acc * norm;
  }
  return out;
}

/// Weight-1 density law: G~^{ijkl} = det(dx/dx~) G^{abcd} (dx~/dx)^i_a ... (dx~/dx)^l_d.
template <Field T>
TammRubilar<T> transform_density(const TammRubilar<T>& g, const Mat<T, 4>& jac) {
  const T det = determinant(jac);
  const auto ji = inverse(jac);
  Rank4<T> full;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) full[r4(a, b, c, d)] = g.at(a, b, c, d);
  // Contract one index at a time.
  for (int slot = 0; slot < 4; ++slot) {
    Rank4<T> next;
    next.fill(ScalarTraits<T>::zero());
    for (int idx = 0; idx < 256; ++idx) {
      std::array<int, 4> ix{idx >> 6, (idx >> 4) & 3, (idx >> 2) & 3, idx & 3};
      const T& v = full[static_cast<std::size_t>(idx)];
      if (ScalarTraits<T>::is_zero(v)) continue;
      const int a = ix[static_cast<std::size_t>(slot)];
      for (int i = 0; i < 4; ++i) {
        auto jx = ix;
        jx[static_cast<std::size_t>(slot)] = i;
        next[r4(jx[0], jx[1], jx[2], jx[3])] += ji[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * v;
      }
    }
    full = next;
  }
  TammRubilar<T> out;
  for (std::size_t n = 0; n < 35; ++n) {
    const auto& q = sorted_quads()[n];
    out[n] = det * full[r4(q[0], q[1], q[2], q[3])];
  }
  return out;
}

/// lambda with a = lambda b, if one exists (b nonzero).
template <class T>
std::optional<T> proportionality(const TammRubilar<T>& a, const TammRubilar<T>& b, double rel_tol = 1e-10) {
  std::size_t pivot = 35;
  double best = 0;
  for (std::size_t n = 0; n < 35; ++n)
    if (ScalarTraits<T>::magnitude(b[n]) > best) {
      best = ScalarTraits<T>::magnitude(b[n]);
      pivot = n;
    }
  if (pivot == 35) return std::nullopt;
  const T lambda = a[pivot] / b[pivot];
  double scale = 0;
  for (std::size_t n = 0; n < 35; ++n) scale = std::max(scale, ScalarTraits<T>::magnitude(a[n]));
  for (std::size_t n = 0; n < 35; ++n) {
    const T diff = a[n] - lambda * b[n];
    if constexpr (ScalarTraits<T>::exact) {
      if (!ScalarTraits<T>::is_zero(diff)) return std::nullopt;
    } else {
      if (ScalarTraits<T>::magnitude(diff) > rel_tol * std::max(1.0, scale)) return std::nullopt;
    }
  }
  return lambda;
}

struct QuadrantSpec {
  std::array<int, 3> signs{1, 1, 1};
  double extent = 3.0;
  int grid = 10;
};

struct SingularReport {
  std::vector<Vec<double, 3>> points;    // all converged points, sorted by coordinates
  std::vector<Vec<double, 3>> isolated;  // the subset with a nondegenerate Hessian
  bool non_isolated = false;             // some converged point has a degenerate Hessian
};

/// Points of the xi_0 = 1 slice with f = 0 and grad f = 0 inside the closed
/// quadrant, from damped Gauss-Newton runs seeded on a grid.
SingularReport singular_points(const TammRubilar<double>& g, const QuadrantSpec& quadrant = {});

struct InvarianceReport {
  bool scaling = true;          // G(f k) = f^3 G(k)
  bool skewon = true;           // G(skewon part) = 0
  bool axion = true;            // G(k + f Id) = G(k)
  bool adjugate = true;         // det6(k)^2 G(k) + G(adj k) = 0
  std::string failure;          // identity and component of the first failure

  bool all() const { return scaling && skewon && axion && adjugate; }
};

InvarianceReport invariance_suite(const AreaOperator<Rational>& kappa, const Rational& f);

template <class To, class From>
TammRubilar<To> convert(const TammRubilar<From>& g) {
  TammRubilar<To> out;
  for (std::size_t n = 0; n < 35; ++n) {
    if constexpr (std::is_same_v<From, Rational>)
      out[n] = from_rational<To>(g[n]);
    else
      out[n] = To(g[n]);
  }
  return out;
}

}  // namespace premetric
