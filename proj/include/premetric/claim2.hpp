#pragma once

// Uniqueness of the medium with a prescribed Fresnel surface, reproduced with
// Groebner bases. The reduced scale keeps diagonal A, B and C = D over
// g = diag(1, -1, -1, -1) plus the scale variable L, giving the ring
// Q[c1, c2, c3, a1, a2, a3, b1, b2, b3, L] under lex.

#include <optional>
#include <string>
#include <vector>

#include "premetric/groebner.hpp"

namespace premetric {

enum class Claim2Scale { Reduced, Full };

struct Claim2Options {
  Claim2Scale scale = Claim2Scale::Reduced;
  Rational lambda = 1;
  Deadline deadline;
};

struct Claim2Report {
  Claim2Scale scale = Claim2Scale::Reduced;
  Rational lambda;
  std::vector<std::string> variables;
  std::size_t equations = 0;
  GroebnerBasis complex_basis;
  int sos_rounds = 0;
  std::vector<MultiPoly> real_constraints;  // linear forms forced by sums of squares
  GroebnerBasis real_basis;
  bool zero_dimensional = false;
  bool unique_real_solution = false;
  bool matches_cube_root = false;  // real_basis is the ideal of kappa = t *g, L t^3 = 1
  std::optional<Rational> t;       // the real cube root of 1/L when it is rational
  bool solution_verified = false;  // every equation vanishes at kappa = t *g
  GroebnerStats stats;
  double seconds = 0.0;
};

/// Linear forms l_i with p = sum d_i l_i^2, d_i > 0, when p is a positive
/// semidefinite quadratic form; nullopt otherwise.
std::optional<std::vector<MultiPoly>> psd_square_split(const MultiPoly& p);

Claim2Report claim2_groebner_repro(const Claim2Options& opts = {});

std::string to_string(Claim2Scale s);

}  // namespace premetric
