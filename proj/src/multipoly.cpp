#include "premetric/multipoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace premetric {

std::size_t VarTable::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw Error(ErrorCode::VariableMismatch, "unknown variable " + name);
}

VarTablePtr make_vars(std::vector<std::string> names) {
  if (names.size() > kMaxVars) throw Error(ErrorCode::VariableMismatch, "too many variables");
  return std::make_shared<const VarTable>(VarTable{std::move(names)});
}

bool MonomialOrder::greater(const Exponent& a, const Exponent& b, std::size_t n) const {
  auto var = [&](std::size_t k) { return perm.empty() ? k : perm[k]; };
  if (kind == Kind::GrevLex) {
    int da = 0, db = 0;
    for (std::size_t k = 0; k < n; ++k) {
      da += a[k];
      db += b[k];
    }
    if (da != db) return da > db;
    for (std::size_t k = n; k-- > 0;) {
      const std::size_t v = var(k);
      if (a[v] != b[v]) return a[v] < b[v];
    }
    return false;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = var(k);
    if (a[v] != b[v]) return a[v] > b[v];
  }
  return false;
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t k = 0; k < kMaxVars; ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent out{};
  for (std::size_t k = 0; k < kMaxVars; ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

Exponent quotient(const Exponent& b, const Exponent& a) {
  Exponent out{};
  for (std::size_t k = 0; k < kMaxVars; ++k) out[k] = static_cast<std::uint8_t>(b[k] - a[k]);
  return out;
}

namespace {

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent out{};
  for (std::size_t k = 0; k < kMaxVars; ++k) {
    const int s = a[k] + b[k];
    if (s > 255) throw Error(ErrorCode::DegeneratePolynomial, "exponent overflow");
    out[k] = static_cast<std::uint8_t>(s);
  }
  return out;
}

bool same_names(const VarTablePtr& a, const VarTablePtr& b) { return a == b || a->names == b->names; }

}  // namespace

MultiPoly MultiPoly::constant(const Rational& c, VarTablePtr vars, MonomialOrder order) {
  MultiPoly p(std::move(vars), std::move(order));
  if (sgn(c) != 0) p.terms_.push_back({Exponent{}, canonical(c)});
  return p;
}

MultiPoly MultiPoly::variable(VarTablePtr vars, std::size_t index, MonomialOrder order) {
  if (!vars || index >= vars->names.size()) throw Error(ErrorCode::VariableMismatch, "variable index out of range");
  MultiPoly p(std::move(vars), std::move(order));
  Term t;
  t.exp[index] = 1;
  t.coeff = 1;
  p.terms_.push_back(std::move(t));
  return p;
}

MultiPoly MultiPoly::from_terms(VarTablePtr vars, std::vector<Term> terms, MonomialOrder order) {
  MultiPoly p(std::move(vars), std::move(order));
  for (auto& t : terms) t.coeff.canonicalize();
  p.terms_ = std::move(terms);
  p.sort_terms();
  return p;
}

void MultiPoly::sort_terms() {
  const std::size_t n = nvars();
  std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return order_.greater(a.exp, b.exp, n); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp)
      out.back().coeff += t.coeff;
    else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms_ = std::move(out);
}

MultiPoly MultiPoly::with_order(const MonomialOrder& order) const {
  MultiPoly p = *this;
  p.order_ = order;
  p.sort_terms();
  return p;
}

MultiPoly MultiPoly::with_vars(VarTablePtr vars) const {
  if (vars_ && vars && vars->names.size() < nvars()) {
    for (const auto& t : terms_)
      for (std::size_t k = vars->names.size(); k < nvars(); ++k)
        if (t.exp[k] != 0) throw Error(ErrorCode::VariableMismatch, "term uses a variable outside the new table");
  }
  MultiPoly p = *this;
  p.vars_ = std::move(vars);
  return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exp) == 0); }

int MultiPoly::degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, total_degree(t.exp));
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[var]));
  return d;
}

MultiPoly MultiPoly::scaled(const Rational& s) const {
  MultiPoly p(vars_, order_);
  if (sgn(s) == 0) return p;
  p.terms_ = terms_;
  for (auto& t : p.terms_) t.coeff *= s;
  return p;
}

MultiPoly MultiPoly::mul_term(const Exponent& e, const Rational& c) const {
  MultiPoly p(vars_, order_);
  if (sgn(c) == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({add_exp(t.exp, e), Rational(t.coeff * c)});
  return p;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(Rational(1 / leading().coeff));
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
  MultiPoly p(vars_, order_);
  for (const auto& t : terms_) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exp[var];
    --d.exp[var];
    p.terms_.push_back(std::move(d));
  }
  // Lowering one exponent preserves relative order in lex but not always in grevlex.
  p.sort_terms();
  return p;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
  MultiPoly p(vars_, order_);
  std::vector<Rational> pw{Rational(1)};
  for (const auto& t : terms_) {
    while (pw.size() <= t.exp[var]) pw.push_back(Rational(pw.back() * value));
    Term s = t;
    s.coeff *= pw[t.exp[var]];
    s.exp[var] = 0;
    if (sgn(s.coeff) != 0) p.terms_.push_back(std::move(s));
  }
  p.sort_terms();
  return p;
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
  common_vars(*this, value);
  std::vector<MultiPoly> pw{constant(Rational(1), vars_, order_)};
  std::map<int, std::vector<Term>> by_power;
  for (const auto& t : terms_) {
    Term s = t;
    s.exp[var] = 0;
    by_power[t.exp[var]].push_back(std::move(s));
  }
  MultiPoly out(vars_ ? vars_ : value.vars_, order_);
  for (auto& [k, ts] : by_power) {
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * value);
    out += from_terms(out.vars_, std::move(ts), order_) * pw[static_cast<std::size_t>(k)];
  }
  return out;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() < nvars()) throw Error(ErrorCode::VariableMismatch, "point has too few coordinates");
  std::vector<std::vector<Rational>> pw(nvars(), std::vector<Rational>{Rational(1)});
  Rational acc = 0;
  for (const auto& t : terms_) {
    Rational m = t.coeff;
    for (std::size_t k = 0; k < nvars(); ++k) {
      if (t.exp[k] == 0) continue;
      auto& p = pw[k];
      while (p.size() <= t.exp[k]) p.push_back(Rational(p.back() * point[k]));
      m *= p[t.exp[k]];
    }
    acc += m;
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (sgn(c) < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < nvars(); ++k) {
      if (t.exp[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_->names[k];
      if (t.exp[k] > 1) mono += "^" + std::to_string(t.exp[k]);
    }
    if (mono.empty())
      os << format_rational(c);
    else if (c == 1)
      os << mono;
    else
      os << format_rational(c) << "*" << mono;
  }
  return os.str();
}

VarTablePtr MultiPoly::common_vars(const MultiPoly& a, const MultiPoly& b) {
  if (!a.vars_) return b.vars_;
  if (!b.vars_) return a.vars_;
  if (!same_names(a.vars_, b.vars_)) throw Error(ErrorCode::VariableMismatch, "polynomials use different variable tables");
  return a.vars_;
}

MultiPoly MultiPoly::combine(const MultiPoly& b, int sign) const {
  const VarTablePtr vars = common_vars(*this, b);
  const MonomialOrder& ord = vars_ ? order_ : b.order_;
  if (!(b.order_ == ord) && b.vars_) return combine(b.with_order(ord), sign);
  MultiPoly out(vars, ord);
  if (!(order_ == ord) && vars_) return with_order(ord).combine(b, sign);
  out.terms_.reserve(terms_.size() + b.terms_.size());
  const std::size_t n = out.nvars();
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < terms_.size() && ord.greater(terms_[i].exp, b.terms_[j].exp, n))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || ord.greater(b.terms_[j].exp, terms_[i].exp, n)) {
      out.terms_.push_back(b.terms_[j++]);
      if (sign < 0) out.terms_.back().coeff = -out.terms_.back().coeff;
    } else {
      Rational c = sign > 0 ? Rational(terms_[i].coeff + b.terms_[j].coeff) : Rational(terms_[i].coeff - b.terms_[j].coeff);
      if (sgn(c) != 0) out.terms_.push_back({terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) { return *this = combine(b, 1); }
MultiPoly& MultiPoly::operator-=(const MultiPoly& b) { return *this = combine(b, -1); }
MultiPoly& MultiPoly::operator*=(const MultiPoly& b) { return *this = *this * b; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const VarTablePtr vars = MultiPoly::common_vars(a, b);
  const MonomialOrder& ord = a.vars_ ? a.order_ : b.order_;
  MultiPoly out(vars, ord);
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.terms_.push_back({add_exp(s.exp, t.exp), Rational(s.coeff * t.coeff)});
  out.sort_terms();
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  const auto diff = a - b;
  return diff.is_zero();
}

}  // namespace premetric
