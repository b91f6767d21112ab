#pragma once

// Buchberger's algorithm with the product and chain criteria.

#include <vector>

#include "premetric/budget.hpp"
#include "premetric/multipoly.hpp"

namespace premetric {

struct GroebnerBasis {
  MonomialOrder order;
  std::vector<MultiPoly> polys;  // reduced, monic, ascending by leading monomial
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t product_skips = 0;
  std::size_t chain_skips = 0;
};

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);

/// Full reduction: no term of the remainder is divisible by a leading term.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis, const MonomialOrder& order);

GroebnerBasis buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order, const Deadline& deadline = {},
                         GroebnerStats* stats = nullptr);

/// Every S-polynomial of the basis reduces to zero.
bool is_groebner_basis(const std::vector<MultiPoly>& basis, const MonomialOrder& order);

}  // namespace premetric
