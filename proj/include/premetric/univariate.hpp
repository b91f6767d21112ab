#pragma once

// Dense univariate polynomials over a field: Euclidean division, gcd,
// square-free factorization and, over the rationals, Sturm root isolation.

#include <algorithm>
#include <utility>
#include <vector>

#include "premetric/error.hpp"
#include "premetric/scalar.hpp"

namespace premetric {

template <Field T>
class UPoly {
 public:
  UPoly() = default;
  /// Coefficients from the constant term upwards.
  explicit UPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(const T& coeff, std::size_t degree) {
    std::vector<T> c(degree + 1, ScalarTraits<T>::zero());
    c[degree] = coeff;
    return UPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : ScalarTraits<T>::zero(); }
  const T& leading() const { return c_.back(); }

  template <class X>
  X operator()(const X& x) const {
    X acc = X(ScalarTraits<X>::zero());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(from_coeff<X>(*it));
    return acc;
  }

  UPoly derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    const T inv = ScalarTraits<T>::one() / leading();
    std::vector<T> c = c_;
    for (auto& x : c) x *= inv;
    return UPoly(std::move(c));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), ScalarTraits<T>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + b.scaled(T(-1)); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, ScalarTraits<T>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly scaled(const T& s) const {
    std::vector<T> c = c_;
    for (auto& x : c) x *= s;
    return UPoly(std::move(c));
  }

  /// Quotient and remainder, exact over exact fields.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::DegeneratePolynomial, "division by the zero polynomial");
    std::vector<T> r = c_;
    if (degree() < d.degree()) return {UPoly(), *this};
    std::vector<T> q(static_cast<std::size_t>(degree() - d.degree() + 1), ScalarTraits<T>::zero());
    const T inv = ScalarTraits<T>::one() / d.leading();
    for (int k = degree() - d.degree(); k >= 0; --k) {
      const auto top = static_cast<std::size_t>(k + d.degree());
      const T f = r[top] * inv;
      q[static_cast<std::size_t>(k)] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * d.c_[j];
      r[top] = ScalarTraits<T>::zero();
    }
    r.resize(d.c_.size() - 1);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

 private:
  template <class X>
  static X from_coeff(const T& c) {
    if constexpr (std::is_same_v<T, Rational> && !std::is_same_v<X, Rational>)
      return X(c.get_d());
    else
      return X(c);
  }

  void trim() {
    while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Monic gcd over an exact field.
template <Field T>
UPoly<T> gcd(UPoly<T> a, UPoly<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

struct SquareFreeFactor {
  UPoly<Rational> factor;  // monic, square-free
  int multiplicity;
};

/// Yun's algorithm: p = lc * prod factor_i^i with pairwise coprime factors.
inline std::vector<SquareFreeFactor> square_free_factorization(const UPoly<Rational>& p) {
  if (p.is_zero()) throw Error(ErrorCode::DegeneratePolynomial, "square-free factorization of zero");
  std::vector<SquareFreeFactor> out;
  const auto f = p.monic();
  const auto df = f.derivative();
  auto a = gcd(f, df);
  auto b = f.divmod(a).first;
  auto c = df.divmod(a).first;
  auto d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    a = gcd(b, d);
    if (a.degree() > 0) out.push_back({a, i});
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  return out;
}

namespace detail {

inline int sign_changes(const std::vector<UPoly<Rational>>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

inline std::vector<UPoly<Rational>> sturm_sequence(const UPoly<Rational>& p) {
  std::vector<UPoly<Rational>> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(r.scaled(Rational(-1)));
  }
  return seq;
}

/// Cauchy bound: every root has |x| < bound.
inline Rational root_bound(const UPoly<Rational>& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(k)) / p.leading());
    if (r > m) m = r;
  }
  return m + 1;
}

/// Number of distinct real roots in (lo, hi].
inline int count_real_roots(const std::vector<UPoly<Rational>>& sturm, const Rational& lo, const Rational& hi) {
  return detail::sign_changes(sturm, lo) - detail::sign_changes(sturm, hi);
}

inline int count_real_roots(const UPoly<Rational>& p) {
  if (p.degree() <= 0) return 0;
  const auto seq = sturm_sequence(p);
  const Rational b = root_bound(p);
  return count_real_roots(seq, Rational(-b), b);
}

/// Disjoint intervals (lo, hi] each holding exactly one distinct real root,
/// refined until hi - lo <= width.
inline std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly<Rational>& p, const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0) return out;
  const auto seq = sturm_sequence(p);
  const Rational b = root_bound(p);
  std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = count_real_roots(seq, lo, hi);
    if (n == 0) continue;
    if (n == 1 && hi - lo <= width) {
      out.emplace_back(lo, hi);
      continue;
    }
    const Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rational roots of p, found by continued-fraction reconstruction from the
/// isolated real roots and confirmed by exact evaluation.
inline std::vector<Rational> rational_roots(const UPoly<Rational>& p) {
  std::vector<Rational> out;
  if (p.degree() <= 0) return out;
  const Rational width(mpz_class(1), mpz_class(1) << 256);
  for (const auto& [lo, hi] : isolate_real_roots(p, width)) {
    if (sgn(p(hi)) == 0) {
      out.push_back(hi);
      continue;
    }
    // Convergents of the interval midpoint.
    Rational x = (lo + hi) / 2;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int step = 0; step < 200; ++step) {
      mpz_class a;
      mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      const mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
      h0 = h1; h1 = h2; k0 = k1; k1 = k2;
      Rational cand(h1, k1);
      cand.canonicalize();
      if (cand > lo && cand <= hi) {
        if (sgn(p(cand)) == 0) out.push_back(cand);
        break;
      }
      const Rational frac = x - Rational(a);
      if (sgn(frac) == 0) break;
      x = 1 / frac;
    }
  }
  return out;
}

}  // namespace premetric
