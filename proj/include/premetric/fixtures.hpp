#pragma once

// Reference media used throughout the tests, the acceptance run and the
// bundled fixture files.

#include <array>
#include <cmath>

#include "premetric/area_operator.hpp"
#include "premetric/gaussian.hpp"
#include "premetric/metric.hpp"

namespace premetric::fixtures {

inline ABCDBlocks<Rational> biaxial_blocks() {
  ABCDBlocks<Rational> b;
  b.A = diagonal<Rational, 3>({-1, -2, -3});
  b.B = identity<Rational, 3>();
  return b;
}

inline AreaOperator<Rational> biaxial() { return kappa_from_blocks(biaxial_blocks()); }

inline AreaOperator<Rational> minkowski_star() { return hodge_star(Metric4<Rational>::minkowski()); }

inline ABCDBlocks<Rational> kappa1_blocks() {
  const Rational h(1, 2);
  ABCDBlocks<Rational> b;
  b.A = {{{0, -1, 1}, {-1, -2, 1}, {1, 1, -1}}};
  b.B = {{{0, h, 0}, {h, 0, 0}, {0, 0, 0}}};
  b.C = {{{0, 0, 0}, {0, 2, 1}, {h, -h, 1}}};
  b.D = transpose(b.C);
  return b;
}

inline ABCDBlocks<Rational> kappa2_blocks() {
  const Rational h(1, 2);
  ABCDBlocks<Rational> b;
  b.A = {{{2, 1, -1}, {1, 0, -1}, {-1, -1, 1}}};
  b.B = {{{0, -h, 0}, {-h, 0, 0}, {0, 0, 0}}};
  b.C = {{{2, 0, 1}, {0, 0, 0}, {-h, h, 1}}};
  b.D = transpose(b.C);
  return b;
}

inline AreaOperator<Rational> kappa1() { return kappa_from_blocks(kappa1_blocks()); }
inline AreaOperator<Rational> kappa2() { return kappa_from_blocks(kappa2_blocks()); }

/// Purely principal medium with identically vanishing Fresnel quartic; the
/// entries 2^{-1/3} and 2^{2/3} force floating point.
inline AreaOperator<double> principal_zero(const std::array<double, 5>& l) {
  const double c = std::cbrt(0.5);
  const double c2 = std::cbrt(4.0);
  ABCDBlocks<double> b;
  b.B = {{{0, 0, l[0]}, {0, 0, l[1]}, {l[0], l[1], l[2]}}};
  b.C = {{{-c, 0, l[3]}, {0, -c, l[4]}, {0, 0, c2}}};
  b.D = transpose(b.C);
  return kappa_from_blocks(b);
}

/// Complex medium whose Fresnel surface is the Minkowski light cone.
inline AreaOperator<Complex> complex_medium(Complex z) {
  const Complex i(0, 1);
  ABCDBlocks<Complex> b;
  b.A = diagonal<Complex, 3>({-1.0 / (2.0 * z * z), -2.0 * z, -z});
  b.B = scaled(b.A, Complex(-1));
  b.C = diagonal<Complex, 3>({i * (1.0 / (3.0 * z * z) - z), i * (-1.0 / (6.0 * z * z) + z), i * (-1.0 / (6.0 * z * z))});
  b.D = b.C;
  return kappa_from_blocks(b);
}

/// (1+6z^3)^3 (5 - 126 z^3 + 684 z^6 - 648 z^9) / (46656 z^12).
inline Complex complex_medium_det(Complex z) {
  const Complex z3 = z * z * z;
  return std::pow(1.0 + 6.0 * z3, 3) * (5.0 - 126.0 * z3 + 684.0 * z3 * z3 - 648.0 * z3 * z3 * z3) /
         (46656.0 * std::pow(z, 12));
}

inline AreaOperator<Gaussian> complex_medium_exact(const Gaussian& z) {
  const Gaussian i(0, 1), one(1), zz = z * z;
  ABCDBlocks<Gaussian> b;
  b.A = diagonal<Gaussian, 3>({-one / (Gaussian(2) * zz), -Gaussian(2) * z, -z});
  b.B = scaled(b.A, Gaussian(-1));
  b.C = diagonal<Gaussian, 3>({i * (one / (Gaussian(3) * zz) - z), i * (-one / (Gaussian(6) * zz) + z), i * (-one / (Gaussian(6) * zz))});
  b.D = b.C;
  return kappa_from_blocks(b);
}

inline Gaussian complex_medium_det_exact(const Gaussian& z) {
  const Gaussian z3 = z * z * z, u = Gaussian(1) + Gaussian(6) * z3;
  const Gaussian z12 = z3 * z3 * z3 * z3;
  return u * u * u * (Gaussian(5) - Gaussian(126) * z3 + Gaussian(684) * z3 * z3 - Gaussian(648) * z3 * z3 * z3) /
         (Gaussian(46656) * z12);
}

/// Isotropic medium with permittivity 2 and permeability 1/2.
inline AreaOperator<Rational> isotropic_e2_mu05() { return isotropic_medium(Rational(2), Rational(1, 2)); }

}  // namespace premetric::fixtures
