#pragma once

// Symbolic media and the two zero-testers used on the Tamm-Rubilar identities:
// random rational evaluation, and recursive slicing down to exact expansion.

#include <bitset>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "premetric/area_operator.hpp"
#include "premetric/budget.hpp"
#include "premetric/fresnel.hpp"
#include "premetric/polyexpr.hpp"

namespace premetric {

/// Bit block*9 + 3*i + j is set when that entry of block A, B, C or D is a
/// free variable; cleared entries are zero.
using VarMask = std::bitset<36>;

VarMask mask_full();
VarMask mask_none();
/// "full", "none", "12-var" (A full, B diagonal), "6-var" (A and B diagonal),
/// "24-var" (A and B full).
VarMask named_mask(const std::string& name);
std::string mask_variable_name(std::size_t flag);  // e.g. "A12"

struct SymbolicKappa {
  VarTablePtr vars;
  std::vector<std::size_t> flags;  // flags[v] is the mask bit of variable v
  AreaOperator<PolyExpr> kappa;
};

SymbolicKappa symbolic_kappa(const VarMask& mask);

/// (det6 k)^2 G^{q}(k) + G^{q}(adj k) for every sorted multi-index q.
std::array<PolyExpr, 35> big_identity_all(const SymbolicKappa& k);
PolyExpr big_identity_polys(const Quad& q, const VarMask& mask = mask_full());

struct PitStats {
  int trials_run = 0;
  int failures = 0;
};

/// Each trial draws one point with numerators in [-2^16, 2^16] and
/// denominators in [1, 2^16]; false as soon as any expression is nonzero.
bool pit_verify(const std::vector<PolyExpr>& fs, int trials, std::uint64_t seed, PitStats* stats = nullptr);
bool pit_verify(const PolyExpr& f, int trials, std::uint64_t seed);
std::vector<Rational> random_point(std::size_t n, std::mt19937_64& rng);

struct TaylorOptions {
  int K = 5;
  int var_threshold = 27;
  Deadline deadline;
  std::string checkpoint_path;  // empty disables checkpoints
  int jobs = 1;
  std::function<bool(const PolyExpr&)> direct_expander;  // defaults to canonical expansion
};

struct TaylorStats {
  std::size_t nodes = 0;
  std::size_t direct_checks = 0;
  std::size_t resumed = 0;
  int max_depth = 0;
  std::size_t raised_K = 0;
};

bool taylor_zero_verify(const PolyExpr& f, const TaylorOptions& opts = {}, TaylorStats* stats = nullptr);

}  // namespace premetric
