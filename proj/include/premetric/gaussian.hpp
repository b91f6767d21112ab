#pragma once

// Exact complex scalars a + b i with rational a, b.

#include "premetric/scalar.hpp"

namespace premetric {

class Gaussian {
 public:
  Gaussian() : re_(0), im_(0) {}
  Gaussian(int re) : re_(re), im_(0) {}
  Gaussian(Rational re) : re_(canonical(std::move(re))), im_(0) {}
  Gaussian(Rational re, Rational im) : re_(canonical(std::move(re))), im_(canonical(std::move(im))) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  Gaussian conj() const { return {re_, Rational(-im_)}; }
  Rational norm() const { return canonical(re_ * re_ + im_ * im_); }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  Gaussian& operator/=(const Gaussian& o) { return *this = *this / o; }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator-(const Gaussian& a) { return {Rational(-a.re_), Rational(-a.im_)}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {Rational(a.re_ * b.re_ - a.im_ * b.im_), Rational(a.re_ * b.im_ + a.im_ * b.re_)};
  }
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    const Rational n = b.norm();
    if (sgn(n) == 0) throw Error(ErrorCode::Degenerate, "division by zero");
    const Gaussian p = a * b.conj();
    return {Rational(p.re_ / n), Rational(p.im_ / n)};
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Rational re_, im_;
};

template <>
struct ScalarTraits<Gaussian> {
  static constexpr bool exact = true;
  static constexpr bool is_complex = true;
  static constexpr bool ordered = false;
  static Gaussian zero() { return {}; }
  static Gaussian one() { return Gaussian(1); }
  static bool is_zero(const Gaussian& x) { return sgn(x.real()) == 0 && sgn(x.imag()) == 0; }
  static double magnitude(const Gaussian& x) { return std::abs(x.to_complex()); }
  static Gaussian from_rational(const Rational& q) { return Gaussian(q); }
};

inline std::string to_string(const Gaussian& x) { return format_rational(x.real()) + (sgn(x.imag()) < 0 ? "-" : "+") + format_rational(abs(x.imag())) + "i"; }

}  // namespace premetric
