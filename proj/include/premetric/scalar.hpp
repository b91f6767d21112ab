#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <type_traits>

#include "premetric/error.hpp"

namespace premetric {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Per-scalar behaviour used by the generic algebra. `exact` selects exact
/// zero tests and first-nonzero pivoting; inexact types pivot on magnitude.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool is_complex = false;
  static constexpr bool ordered = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr bool is_complex = false;
  static constexpr bool ordered = true;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return std::fabs(x); }
  static double from_rational(const Rational& q) { return q.get_d(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr bool is_complex = true;
  static constexpr bool ordered = false;
  static Complex zero() { return Complex(0.0, 0.0); }
  static Complex one() { return Complex(1.0, 0.0); }
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex from_rational(const Rational& q) { return Complex(q.get_d(), 0.0); }
};

template <class T>
concept RealField = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

template <class T>
concept Field = RealField<T> || std::is_same_v<T, Complex>;

inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

/// Parses "p", "p/q" or "-p/q". Decimal points are rejected so rational mode
/// never silently rounds.
Rational parse_rational(const std::string& text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& q);

/// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& q);

inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return std::fabs(x); }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

/// Square root in the scalar's own field; rational inputs must be perfect squares.
inline double field_sqrt(double x) { return std::sqrt(x); }
inline Rational field_sqrt(const Rational& x) {
  auto r = exact_sqrt(x);
  if (!r) throw Error(ErrorCode::NotRepresentable, "square root of " + format_rational(x) + " is irrational");
  return *r;
}

template <class T>
T from_rational(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

}  // namespace premetric
