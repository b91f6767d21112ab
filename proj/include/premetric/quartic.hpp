#pragma once

// Roots of real or complex polynomials of degree <= 4 with multiplicities.

#include <array>
#include <vector>

#include "premetric/scalar.hpp"
#include "premetric/univariate.hpp"

namespace premetric {

struct RootCluster {
  Complex value;
  int multiplicity;
};

/// Closed-form solve (Ferrari with resolvent cubic) of c[0] + c[1] x + ... + c[4] x^4,
/// falling back to companion-matrix eigenvalues near a vanishing discriminant.
/// Leading zero coefficients reduce the degree. Returns all roots, repeated.
std::vector<Complex> solve_quartic(const std::array<Complex, 5>& c);

/// Groups numerically repeated roots: a candidate cluster is accepted when the
/// first m-1 derivatives vanish at its mean to relative tolerance `tol`.
std::vector<RootCluster> cluster_roots(const std::array<Complex, 5>& c, const std::vector<Complex>& roots,
                                       double tol = 1e-8);

/// Exact multiplicities from the square-free factorization; the values of each
/// square-free factor are then solved in floating point.
std::vector<RootCluster> exact_root_clusters(const UPoly<Rational>& p);

}  // namespace premetric
