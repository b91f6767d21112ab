#include "premetric/polyexpr.hpp"

#include <algorithm>
#include <unordered_set>

namespace premetric {

namespace {

constexpr std::size_t kSumFold = 512;
constexpr std::size_t kProductFold = 256;

}  // namespace

struct PolyExpr::Node {
  enum class Kind { Leaf, Sum, Product };
  Kind kind = Kind::Leaf;
  MultiPoly poly;  // the leaf, or the folded leaf part of a sum
  std::vector<std::pair<Rational, NodePtr>> children;
  NodePtr a, b;
  VarTablePtr vars;
  Exponent deg{};
  std::uint64_t active = 0;

  void finish() {
    for (std::size_t k = 0; k < kMaxVars; ++k)
      if (deg[k] != 0) active |= std::uint64_t{1} << k;
  }
};

namespace {

using Node = PolyExpr::Node;
using NodePtr = PolyExpr::NodePtr;

const VarTablePtr& pick_vars(const VarTablePtr& a, const VarTablePtr& b) { return a ? a : b; }

NodePtr make_leaf(MultiPoly p) {
  auto n = std::make_shared<Node>();
  n->vars = p.vars();
  for (const auto& t : p.terms())
    for (std::size_t k = 0; k < kMaxVars; ++k) n->deg[k] = std::max(n->deg[k], t.exp[k]);
  n->poly = std::move(p);
  n->finish();
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr z = make_leaf(MultiPoly());
  return z;
}

std::shared_ptr<Node> make_sum(MultiPoly leaf_part, std::vector<std::pair<Rational, NodePtr>> children) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Sum;
  n->vars = leaf_part.vars();
  for (const auto& t : leaf_part.terms())
    for (std::size_t k = 0; k < kMaxVars; ++k) n->deg[k] = std::max(n->deg[k], t.exp[k]);
  for (const auto& [c, ch] : children) {
    n->vars = pick_vars(n->vars, ch->vars);
    for (std::size_t k = 0; k < kMaxVars; ++k) n->deg[k] = std::max(n->deg[k], ch->deg[k]);
  }
  n->poly = std::move(leaf_part);
  n->children = std::move(children);
  n->finish();
  return n;
}

}  // namespace

PolyExpr::PolyExpr() : node_(zero_node()) {}
PolyExpr::PolyExpr(MultiPoly p) : node_(p.is_zero() ? zero_node() : make_leaf(std::move(p))) {}
PolyExpr PolyExpr::constant(const Rational& c) { return PolyExpr(MultiPoly::constant(c)); }

bool PolyExpr::is_structural_zero() const { return node_->kind == Node::Kind::Leaf && node_->poly.is_zero(); }
bool PolyExpr::is_leaf() const { return node_->kind == Node::Kind::Leaf; }
const MultiPoly* PolyExpr::leaf() const { return is_leaf() ? &node_->poly : nullptr; }
const VarTablePtr& PolyExpr::vars() const { return node_->vars; }
std::uint64_t PolyExpr::active_mask() const { return node_->active; }
int PolyExpr::degree_bound(std::size_t var) const { return node_->deg[var]; }

std::size_t PolyExpr::node_count() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.second.get());
    if (n->a) stack.push_back(n->a.get());
    if (n->b) stack.push_back(n->b.get());
  }
  return seen.size();
}

PolyExpr PolyExpr::scaled(const Rational& c) const {
  if (sgn(c) == 0 || is_structural_zero()) return PolyExpr();
  if (c == 1) return *this;
  switch (node_->kind) {
    case Node::Kind::Leaf:
      return PolyExpr(node_->poly.scaled(c));
    case Node::Kind::Sum: {
      auto ch = node_->children;
      for (auto& [k, n] : ch) k *= c;
      return PolyExpr(NodePtr(make_sum(node_->poly.scaled(c), std::move(ch))));
    }
    case Node::Kind::Product:
      break;
  }
  return PolyExpr(NodePtr(make_sum(MultiPoly(), {{c, node_}})));
}

PolyExpr operator+(const PolyExpr& a, const PolyExpr& b) {
  if (a.is_structural_zero()) return b;
  if (b.is_structural_zero()) return a;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  using K = Node::Kind;
  if (x.kind == K::Leaf && y.kind == K::Leaf) {
    MultiPoly s = x.poly + y.poly;
    if (s.size() <= kSumFold) return PolyExpr(std::move(s));
  }
  MultiPoly leaf_part;
  std::vector<std::pair<Rational, NodePtr>> ch;
  auto absorb = [&](const PolyExpr& e) {
    const Node& n = *e.node_;
    if (n.kind == K::Sum) {
      leaf_part += n.poly;
      ch.insert(ch.end(), n.children.begin(), n.children.end());
    } else if (n.kind == K::Leaf && leaf_part.size() + n.poly.size() <= kSumFold) {
      leaf_part += n.poly;
    } else {
      ch.emplace_back(Rational(1), e.node_);
    }
  };
  absorb(a);
  absorb(b);
  if (ch.empty()) return PolyExpr(std::move(leaf_part));
  return PolyExpr(NodePtr(make_sum(std::move(leaf_part), std::move(ch))));
}

PolyExpr PolyExpr::unfolded_sum(const PolyExpr& a, const PolyExpr& b) {
  if (a.is_structural_zero()) return b;
  if (b.is_structural_zero()) return a;
  return PolyExpr(NodePtr(make_sum(MultiPoly(), {{Rational(1), a.node_}, {Rational(1), b.node_}})));
}

PolyExpr PolyExpr::unfolded_product(const PolyExpr& a, const PolyExpr& b) {
  if (a.is_structural_zero() || b.is_structural_zero()) return PolyExpr();
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Product;
  n->a = a.node_;
  n->b = b.node_;
  n->vars = pick_vars(a.node_->vars, b.node_->vars);
  for (std::size_t k = 0; k < kMaxVars; ++k)
    n->deg[k] = static_cast<std::uint8_t>(std::min(255, a.node_->deg[k] + b.node_->deg[k]));
  n->finish();
  return PolyExpr(NodePtr(n));
}

PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
  if (a.is_structural_zero() || b.is_structural_zero()) return PolyExpr();
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  using K = Node::Kind;
  if (x.kind == K::Leaf && y.kind == K::Leaf) {
    if (x.poly.is_constant()) return b.scaled(x.poly.leading().coeff);
    if (y.poly.is_constant()) return a.scaled(y.poly.leading().coeff);
    if (x.poly.size() * y.poly.size() <= kProductFold) return PolyExpr(x.poly * y.poly);
  } else if (x.kind == K::Leaf && x.poly.is_constant()) {
    return b.scaled(x.poly.leading().coeff);
  } else if (y.kind == K::Leaf && y.poly.is_constant()) {
    return a.scaled(y.poly.leading().coeff);
  }
  return PolyExpr::unfolded_product(a, b);
}

MultiPoly PolyExpr::expand() const {
  std::unordered_map<const Node*, MultiPoly> memo;
  auto go = [&](auto& self, const Node* n) -> const MultiPoly& {
    if (n->kind == Node::Kind::Leaf) return n->poly;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    MultiPoly r;
    if (n->kind == Node::Kind::Sum) {
      r = n->poly;
      for (const auto& [c, ch] : n->children) r += self(self, ch.get()).scaled(c);
    } else {
      r = self(self, n->a.get()) * self(self, n->b.get());
    }
    return memo.emplace(n, std::move(r)).first->second;
  };
  return go(go, node_.get());
}

const Rational& ExprEvaluator::eval(const PolyExpr::Node* n) {
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  Rational r;
  switch (n->kind) {
    case Node::Kind::Leaf:
      r = n->poly.evaluate(point_);
      break;
    case Node::Kind::Sum:
      r = n->poly.evaluate(point_);
      for (const auto& [c, ch] : n->children) r += c * eval(ch.get());
      break;
    case Node::Kind::Product: {
      const Rational& x = eval(n->a.get());
      if (sgn(x) == 0) {
        r = 0;
        break;
      }
      r = x * eval(n->b.get());
      break;
    }
  }
  return memo_.emplace(n, std::move(r)).first->second;
}

Rational PolyExpr::evaluate(const std::vector<Rational>& point) const {
  ExprEvaluator ev(point);
  return ev(*this);
}

std::vector<PolyExpr> PolyExpr::slices(std::size_t var, std::size_t count) const {
  std::unordered_map<const Node*, std::vector<PolyExpr>> memo;
  auto go = [&](auto& self, const NodePtr& np) -> const std::vector<PolyExpr>& {
    const Node* n = np.get();
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    const std::size_t len = static_cast<std::size_t>(n->deg[var]) + 1;
    std::vector<PolyExpr> out(len);
    if (n->deg[var] == 0) {
      out[0] = PolyExpr(np);
    } else if (n->kind == Node::Kind::Leaf || n->kind == Node::Kind::Sum) {
      std::vector<std::vector<Term>> split(len);
      for (const auto& t : n->poly.terms()) {
        Term s = t;
        s.exp[var] = 0;
        split[t.exp[var]].push_back(std::move(s));
      }
      for (std::size_t k = 0; k < len; ++k)
        if (!split[k].empty()) out[k] = PolyExpr(MultiPoly::from_terms(n->poly.vars(), std::move(split[k]), n->poly.order()));
      for (const auto& [c, ch] : n->children) {
        const auto& cs = self(self, ch);
        for (std::size_t k = 0; k < cs.size(); ++k) out[k] += cs[k].scaled(c);
      }
    } else {
      const auto& as = self(self, n->a);
      const auto& bs = self(self, n->b);
      for (std::size_t i = 0; i < as.size(); ++i) {
        if (as[i].is_structural_zero()) continue;
        for (std::size_t j = 0; j < bs.size() && i + j < len; ++j) out[i + j] += as[i] * bs[j];
      }
    }
    return memo.emplace(n, std::move(out)).first->second;
  };
  auto res = go(go, node_);
  res.resize(std::max(count, res.size()));
  res.resize(count);
  return res;
}

}  // namespace premetric
