#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "smallcancel/free_product.hpp"

namespace smallcancel {

using Rational = boost::rational<long long>;

// Data backing a successful C'(eta) check: both defining conditions restated
// as exact integer inequalities over the set.
struct EtaCertificate {
  Rational eta;
  long long min_relator_length = 0;
  long long max_piece_length = 0;
  // max_piece_prefix[i] = longest piece occurring as a semi-reduced prefix of
  // relator i (0 when none), aligned with SymmetrizedSet::relators.
  std::vector<long long> max_piece_prefix;
};

// A finite relator set closed under weakly cyclically reduced cyclic
// conjugation (at letter boundaries, with the wrap-around pair of same-factor
// letters merged) and under inversion. Sorted and deduplicated.
struct SymmetrizedSet {
  std::vector<NormalForm> relators;
  std::vector<NormalForm> source;
  std::optional<EtaCertificate> eta_certificate;

  bool contains(const NormalForm& w) const {
    return std::binary_search(relators.begin(), relators.end(), w);
  }
};

namespace detail {

// All letter-boundary cyclic conjugates of a weakly cyclically reduced word.
// If the two end letters share a factor they merge in the cyclic word (the
// product is nonidentity precisely because w is weakly cyclically reduced);
// every cut of that cyclic word is cyclically reduced, and w itself is the
// one conjugate in the family that is not a cut.
inline std::vector<NormalForm> cyclic_conjugates(const FreeProductContext& ctx,
                                                 const NormalForm& w) {
  if (w.size() <= 1) return {w};
  std::vector<NormalForm> out;
  Word cycle;
  if (w.front().factor == w.back().factor) {
    auto m = ctx.mul_same(w.back(), w.front());
    if (!m) throw CheckError("word is not weakly cyclically reduced: '" +
                             format_word(ctx, w) + "'");
    cycle.push_back(*m);
    cycle.insert(cycle.end(), w.letters().begin() + 1, w.letters().end() - 1);
    out.push_back(w);
  } else {
    cycle = w.letters();
  }
  for (size_t i = 0; i < cycle.size(); ++i) {
    Word rot(cycle.begin() + static_cast<long>(i), cycle.end());
    rot.insert(rot.end(), cycle.begin(), cycle.begin() + static_cast<long>(i));
    out.emplace_back(detail::unchecked, std::move(rot));
  }
  return out;
}

}  // namespace detail

// Closure of a relator set under weakly cyclically reduced conjugation and
// inversion. Input words must be nonempty and weakly cyclically reduced.
inline SymmetrizedSet symmetrize(const FreeProductContext& ctx,
                                 const std::vector<NormalForm>& gamma) {
  SymmetrizedSet r;
  r.source = gamma;
  for (const NormalForm& g : gamma) {
    if (g.empty()) throw CheckError("cannot symmetrize the empty word");
    if (!is_weakly_cyclically_reduced(ctx, g))
      throw CheckError("input to symmetrize is not weakly cyclically reduced: '" +
                       format_word(ctx, g) + "'");
    for (const NormalForm& word : {g, invert(ctx, g)}) {
      auto rots = detail::cyclic_conjugates(ctx, word);
      r.relators.insert(r.relators.end(), rots.begin(), rots.end());
    }
  }
  std::sort(r.relators.begin(), r.relators.end());
  r.relators.erase(std::unique(r.relators.begin(), r.relators.end()), r.relators.end());
  return r;
}

}  // namespace smallcancel
