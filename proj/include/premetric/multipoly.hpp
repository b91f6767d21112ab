#pragma once

// Sparse multivariate polynomials over the rationals with a shared variable
// table and a selectable monomial order.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "premetric/scalar.hpp"

namespace premetric {

inline constexpr std::size_t kMaxVars = 48;
using Exponent = std::array<std::uint8_t, kMaxVars>;

struct VarTable {
  std::vector<std::string> names;
  std::size_t index_of(const std::string& name) const;  // throws VariableMismatch
};
using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vars(std::vector<std::string> names);

struct MonomialOrder {
  enum class Kind { Lex, GrevLex };
  Kind kind = Kind::Lex;
  std::vector<std::size_t> perm;  // most significant variable first; empty means table order

  static MonomialOrder lex(std::vector<std::size_t> perm = {}) { return {Kind::Lex, std::move(perm)}; }
  static MonomialOrder grevlex(std::vector<std::size_t> perm = {}) { return {Kind::GrevLex, std::move(perm)}; }

  /// a > b among monomials in the first n variables.
  bool greater(const Exponent& a, const Exponent& b, std::size_t n) const;
  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) { return a.kind == b.kind && a.perm == b.perm; }
};

struct Term {
  Exponent exp{};
  Rational coeff;
};

int total_degree(const Exponent& e);
bool divides(const Exponent& a, const Exponent& b);  // a | b
Exponent lcm(const Exponent& a, const Exponent& b);
Exponent quotient(const Exponent& b, const Exponent& a);  // b / a, requires a | b

class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(VarTablePtr vars, MonomialOrder order = {}) : vars_(std::move(vars)), order_(std::move(order)) {}

  static MultiPoly constant(const Rational& c, VarTablePtr vars = nullptr, MonomialOrder order = {});
  static MultiPoly variable(VarTablePtr vars, std::size_t index, MonomialOrder order = {});
  /// Combines like terms and drops zero coefficients.
  static MultiPoly from_terms(VarTablePtr vars, std::vector<Term> terms, MonomialOrder order = {});

  const VarTablePtr& vars() const { return vars_; }
  std::size_t nvars() const { return vars_ ? vars_->names.size() : 0; }
  const MonomialOrder& order() const { return order_; }
  MultiPoly with_order(const MonomialOrder& order) const;
  MultiPoly with_vars(VarTablePtr vars) const;

  /// Terms in strictly decreasing monomial order.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const Term& leading() const { return terms_.front(); }

  int degree() const;
  int degree_in(std::size_t var) const;

  MultiPoly scaled(const Rational& s) const;
  MultiPoly mul_term(const Exponent& e, const Rational& c) const;
  MultiPoly monic() const;
  MultiPoly partial_derivative(std::size_t var) const;
  MultiPoly substitute(std::size_t var, const Rational& value) const;
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  std::string to_string() const;

  MultiPoly& operator+=(const MultiPoly& b);
  MultiPoly& operator-=(const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& b);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const { return scaled(Rational(-1)); }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  void sort_terms();
  static VarTablePtr common_vars(const MultiPoly& a, const MultiPoly& b);
  MultiPoly combine(const MultiPoly& b, int sign) const;

  VarTablePtr vars_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

template <>
struct ScalarTraits<MultiPoly> {
  static constexpr bool exact = true;
  static constexpr bool is_complex = false;
  static constexpr bool ordered = false;
  static MultiPoly zero() { return MultiPoly(); }
  static MultiPoly one() { return MultiPoly::constant(Rational(1)); }
  static bool is_zero(const MultiPoly& x) { return x.is_zero(); }
  static double magnitude(const MultiPoly& x) { return x.is_zero() ? 0.0 : 1.0; }
  static MultiPoly from_rational(const Rational& q) { return MultiPoly::constant(q); }
};

}  // namespace premetric
