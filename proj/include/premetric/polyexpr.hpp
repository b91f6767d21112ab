#pragma once

// Lazily expanded polynomial expressions. Small operands are folded into one
// canonical MultiPoly leaf; larger ones stay as shared sum and product nodes
// so that the symbolic identities can be evaluated and sliced without ever
// forming their full canonical expansion.

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "premetric/multipoly.hpp"

namespace premetric {

class PolyExpr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  PolyExpr();
  PolyExpr(MultiPoly p);  // NOLINT(google-explicit-constructor)
  static PolyExpr constant(const Rational& c);

  bool is_structural_zero() const;
  bool is_leaf() const;
  const MultiPoly* leaf() const;  // null unless a leaf
  const VarTablePtr& vars() const;
  std::uint64_t active_mask() const;
  int degree_bound(std::size_t var) const;
  std::size_t node_count() const;

  MultiPoly expand() const;
  Rational evaluate(const std::vector<Rational>& point) const;

  /// Coefficients of var^0 .. var^(count-1), each free of var.
  std::vector<PolyExpr> slices(std::size_t var, std::size_t count) const;

  /// Node constructors that never fold, so the operands stay visible.
  static PolyExpr unfolded_sum(const PolyExpr& a, const PolyExpr& b);
  static PolyExpr unfolded_product(const PolyExpr& a, const PolyExpr& b);

  PolyExpr scaled(const Rational& c) const;
  PolyExpr operator-() const { return scaled(Rational(-1)); }
  PolyExpr& operator+=(const PolyExpr& b) { return *this = *this + b; }
  PolyExpr& operator-=(const PolyExpr& b) { return *this = *this - b; }
  PolyExpr& operator*=(const PolyExpr& b) { return *this = *this * b; }
  friend PolyExpr operator+(const PolyExpr& a, const PolyExpr& b);
  friend PolyExpr operator-(const PolyExpr& a, const PolyExpr& b) { return a + b.scaled(Rational(-1)); }
  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b);

  const NodePtr& node() const { return node_; }

 private:
  explicit PolyExpr(NodePtr n) : node_(std::move(n)) {}
  NodePtr node_;
  friend class ExprEvaluator;
  friend class ExprSlicer;
};

/// Evaluates several expressions at one point, sharing common subexpressions.
class ExprEvaluator {
 public:
  explicit ExprEvaluator(const std::vector<Rational>& point) : point_(point) {}
  Rational operator()(const PolyExpr& e) { return eval(e.node_.get()); }

 private:
  const Rational& eval(const PolyExpr::Node* n);
  const std::vector<Rational>& point_;
  std::unordered_map<const PolyExpr::Node*, Rational> memo_;
};

template <>
struct ScalarTraits<PolyExpr> {
  static constexpr bool exact = true;
  static constexpr bool is_complex = false;
  static constexpr bool ordered = false;
  static PolyExpr zero() { return PolyExpr(); }
  static PolyExpr one() { return PolyExpr::constant(Rational(1)); }
  /// Structural test only: a cancelling sum is not recognised as zero.
  static bool is_zero(const PolyExpr& x) { return x.is_structural_zero(); }
  static double magnitude(const PolyExpr& x) { return x.is_structural_zero() ? 0.0 : 1.0; }
  static PolyExpr from_rational(const Rational& q) { return PolyExpr::constant(q); }
};

}  // namespace premetric
