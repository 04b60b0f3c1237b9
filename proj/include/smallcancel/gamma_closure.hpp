#pragma once

#include <optional>
#include <set>
#include <vector>

#include "smallcancel/factor_group.hpp"

namespace smallcancel {

using ElementSet = std::set<int>;

namespace detail {
inline void check_subset(const FactorGroup& g, const ElementSet& z) {
  if (g.is_cyclic()) throw CheckError("element sets require a finite group");
  for (int e : z)
    if (e < 0 || e >= g.order())
      throw CheckError("element index " + std::to_string(e) + " outside group of order " +
                       std::to_string(g.order()));
}
}  // namespace detail

// Z together with the identity, all inverses from Z, and all two-element
// products from Z.
inline ElementSet gamma(const ElementSet& z, const FactorGroup& g) {
  detail::check_subset(g, z);
  ElementSet out = z;
  out.insert(g.identity());
  for (int e : z) out.insert(g.inv(e));
  for (int a : z)
    for (int b : z) out.insert(g.mul(a, b));
  return out;
}

// Saturation levels Z0 subset Z1 subset ... up to the first fixpoint.
struct GammaChain {
  std::vector<ElementSet> levels;
  std::optional<size_t> stabilized_at;
  const ElementSet& fixpoint() const { return levels.back(); }
};

inline GammaChain gamma_chain(const FactorGroup& g, const ElementSet& z0) {
  detail::check_subset(g, z0);
  GammaChain chain;
  chain.levels.push_back(z0);
  for (;;) {
    ElementSet next = gamma(chain.levels.back(), g);
    if (next == chain.levels.back()) {
      chain.stabilized_at = chain.levels.size() - 1;
      return chain;
    }
    chain.levels.push_back(std::move(next));
  }
}

}  // namespace smallcancel
