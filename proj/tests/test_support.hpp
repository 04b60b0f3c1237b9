#pragma once

// Shared fixtures and independent reference implementations ("oracles") used
// by the unit and acceptance suites. Everything here is deliberately naive
// and written against the definitions, not against the library code paths.

#include <random>
#include <vector>

#include "smallcancel/free_product.hpp"

namespace testsupport {

using smallcancel::FactorGroup;
using smallcancel::FreeProductContext;
using smallcancel::Letter;
using smallcancel::NormalForm;
using smallcancel::Word;

inline FreeProductContext ctx_with(FactorGroup g) {
  return FreeProductContext::with_cyclic(std::move(g));
}

// Reference normalization: multiply one letter at a time onto a normal form,
// applying the two-normal-forms rule by hand (cancel, else merge, else append).
inline Word oracle_append(const FreeProductContext& ctx, Word nf, const Letter& l) {
  if (!nf.empty() && nf.back().factor == l.factor) {
    auto m = ctx.mul_same(nf.back(), l);
    if (!m) {
      nf.pop_back();
      return nf;
    }
    nf.back() = *m;
    return nf;
  }
  nf.push_back(l);
  return nf;
}

inline Word oracle_normalize(const FreeProductContext& ctx, const Word& raw) {
  Word nf;
  for (const Letter& l : raw) nf = oracle_append(ctx, nf, l);
  return nf;
}

// Random raw words: every letter valid (nonidentity), factors arbitrary, so
// consecutive same-factor letters and long cancellations both occur.
inline Letter random_letter(std::mt19937& rng, const FreeProductContext& ctx,
                            long long max_exp = 5) {
  std::uniform_int_distribution<int> pick_factor(0, ctx.factor_count() - 1);
  for (;;) {
    int f = pick_factor(rng);
    const FactorGroup& g = ctx.factor(f);
    if (g.is_cyclic()) {
      std::uniform_int_distribution<long long> e(-max_exp, max_exp);
      long long v = e(rng);
      if (v == 0) continue;
      return Letter{f, v};
    }
    if (g.order() < 2) continue;
    std::uniform_int_distribution<int> e(0, g.order() - 1);
    int v = e(rng);
    if (v == g.identity()) continue;
    return Letter{f, v};
  }
}

inline Word random_word(std::mt19937& rng, const FreeProductContext& ctx, size_t len,
                        long long max_exp = 5) {
  Word w;
  w.reserve(len);
  for (size_t i = 0; i < len; ++i) w.push_back(random_letter(rng, ctx, max_exp));
  return w;
}

}  // namespace testsupport
