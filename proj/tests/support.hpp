#pragma once

#include <array>
#include <map>
#include <random>

#include "premetric/area_operator.hpp"
#include "premetric/scalar.hpp"

namespace testing {

using premetric::Mat;
using premetric::Rational;

/// Small rationals p/q with |p| <= span, 1 <= q <= den.
inline Rational random_rational(std::mt19937_64& rng, int span = 5, int den = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> d(1, den);
  Rational q(num(rng), d(rng));
  q.canonicalize();
  return q;
}

template <std::size_t R, std::size_t C = R>
Mat<Rational, R, C> random_matrix(std::mt19937_64& rng, int span = 5, int den = 3) {
  Mat<Rational, R, C> m;
  for (auto& row : m)
    for (auto& x : row) x = random_rational(rng, span, den);
  return m;
}

template <std::size_t N>
Mat<Rational, N> random_invertible(std::mt19937_64& rng, int span = 3, int den = 2) {
  for (;;) {
    auto m = random_matrix<N>(rng, span, den);
    if (premetric::determinant(m) != 0) return m;
  }
}

inline premetric::AreaOperator<Rational> random_kappa(std::mt19937_64& rng, int span = 5, int den = 3) {
  return premetric::AreaOperator<Rational>(random_matrix<6>(rng, span, den));
}

inline double random_double(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace testing

namespace testing {

/// Homogeneous polynomial in xi_0..xi_3 keyed by exponent vector.
using Poly4 = std::map<std::array<int, 4>, Rational>;

inline Poly4 linear(Rational a0, Rational a1, Rational a2, Rational a3) {
  Poly4 p;
  const Rational a[4] = {a0, a1, a2, a3};
  for (int i = 0; i < 4; ++i)
    if (a[i] != 0) {
      std::array<int, 4> e{0, 0, 0, 0};
      e[i] = 1;
      p[e] = a[i];
    }
  return p;
}

inline Poly4 operator*(const Poly4& a, const Poly4& b) {
  Poly4 out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::array<int, 4> e;
      for (int i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline Poly4 operator+(Poly4 a, const Poly4& b) {
  for (const auto& [e, c] : b) a[e] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

inline Poly4 scaled(Poly4 a, const Rational& s) {
  for (auto& [e, c] : a) c *= s;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

inline Poly4 square_of(const Poly4& a) { return a * a; }

// S^T diag(+-d^2) S, so |det| is a perfect square.
inline premetric::Mat<premetric::Rational, 4> random_square_det_metric(std::mt19937_64& rng) {
  using premetric::operator*;
  const auto s = random_invertible<4>(rng);
  std::array<premetric::Rational, 4> d;
  for (auto& x : d) {
    int v = 0;
    while (v == 0) v = std::uniform_int_distribution<int>(-3, 3)(rng);
    x = premetric::Rational(v > 0 ? v * v : -v * v);
  }
  return premetric::transpose(s) * premetric::diagonal<premetric::Rational, 4>(d) * s;
}

}  // namespace testing
