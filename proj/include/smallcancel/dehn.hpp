#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "smallcancel/pieces.hpp"
#include "smallcancel/symmetrized.hpp"

namespace smallcancel {

struct DehnOptions {
  long long max_steps = 1'000'000;
  long long max_word_letters = 1'000'000;
};

// One rewrite: the matched piece s (a semi-reduced subword of the scanned
// word, more than half of relator `relator`) was replaced by the inverse of
// the relator's complementary part.
struct DehnStep {
  NormalForm result;
  size_t pos = 0;      // index of the scanned word's letter where s starts
  size_t relator = 0;  // index into the relator set
  long long s_len = 0;
  bool partial_start = false;  // s's first letter is a right part of the letter at pos
  bool partial_end = false;    // s's last letter fully consumes a word letter but
                               // only partially consumes the relator's letter
};

// Word-problem solver for quotients by a C'(1/6)-certified symmetrized set.
// Matching works on prefixes of relators: the set is closed under cyclic
// conjugation, so every occurrence of a relator segment is the prefix of some
// member. A match may begin or end inside a single letter (within one
// factor); only rewrites that strictly shorten the word are taken.
class DehnSolver {
 public:
  DehnSolver(const FreeProductContext& ctx, const SymmetrizedSet& r, DehnOptions opts = {})
      : ctx_(ctx), r_(r), opts_(opts) {
    if (!r.eta_certificate)
      throw CheckError("Dehn solver requires a symmetrized set with a C'(1/6) certificate");
    if (!(r.eta_certificate->eta <= Rational(1, 6)))
      throw CheckError("certificate eta " + std::to_string(r.eta_certificate->eta.numerator()) +
                       "/" + std::to_string(r.eta_certificate->eta.denominator()) +
                       " is weaker than 1/6; Dehn rewriting is not justified");
    for (size_t idx = 0; idx < r_.relators.size(); ++idx) {
      const NormalForm& rel = r_.relators[idx];
      // certificate condition (1) forces length > 6, so two letters exist
      by_first_two_[{rel[0], rel[1]}].push_back(idx);
      by_factor_second_[{rel[0].factor, rel[1]}].push_back(idx);
    }
  }

  const SymmetrizedSet& relators() const { return r_; }

  // Best strictly shortening rewrite for a linear (non-cyclic) scan:
  // leftmost position first, then longest match, then lowest relator index.
  std::optional<DehnStep> find_step(const NormalForm& w) const {
    struct Cand {
      long long s_len;
      size_t rel;
      bool pstart, pend;
      size_t k;  // full-letter run after the (possibly partial) start
    };
    const size_t n = w.size();
    std::vector<Cand> cands;
    for (size_t i = 0; i + 1 < n; ++i) {
      cands.clear();
      auto exact = by_first_two_.find({w[i], w[i + 1]});
      if (exact != by_first_two_.end())
        for (size_t idx : exact->second) {
          const NormalForm& rel = r_.relators[idx];
          size_t k = 2;
          while (i + k < n && k < rel.size() && w[i + k] == rel[k]) ++k;
          bool pend = i + k < n && k < rel.size() && w[i + k].factor == rel[k].factor;
          long long s_len = static_cast<long long>(k) + (pend ? 1 : 0);
          if (2 * s_len > length(rel)) cands.push_back({s_len, idx, false, pend, k});
        }
      auto part = by_factor_second_.find({w[i].factor, w[i + 1]});
      if (part != by_factor_second_.end())
        for (size_t idx : part->second) {
          const NormalForm& rel = r_.relators[idx];
          if (rel[0] == w[i]) continue;  // that is the exact mode
          size_t k = 1;
          while (i + 1 + k < n && 1 + k < rel.size() && w[i + 1 + k] == rel[1 + k]) ++k;
          bool pend =
              i + 1 + k < n && 1 + k < rel.size() && w[i + 1 + k].factor == rel[1 + k].factor;
          long long s_len = 1 + static_cast<long long>(k) + (pend ? 1 : 0);
          if (2 * s_len > length(rel)) cands.push_back({s_len, idx, true, pend, k});
        }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.s_len != b.s_len ? a.s_len > b.s_len : a.rel < b.rel;
      });
      for (const Cand& c : cands) {
        NormalForm out = apply(w, i, c.rel, c.pstart, c.pend, c.k);
        if (length(out) < length(w))
          return DehnStep{std::move(out), i, c.rel, c.s_len, c.pstart, c.pend};
      }
    }
    return std::nullopt;
  }

  // Rewrites until the weakly cyclically reduced core admits no shortening
  // match; conjugating ends are preserved, so the result equals the input in
  // the quotient. Output length never exceeds input length.
  NormalForm reduce(const NormalForm& w) const {
    check_size(w);
    NormalForm cur = w;
    long long steps = 0;
    for (;;) {
      CyclicReduction cr = weakly_cyclically_reduce(ctx_, cur);
      auto step = find_step(cr.reduced);
      if (!step) return cur;
      bump(steps);
      cur = multiply(ctx_, multiply(ctx_, cr.conjugator, step->result),
                     invert(ctx_, cr.conjugator));
    }
  }
  NormalForm reduce(const Word& w) const { return reduce(normalize(ctx_, w)); }

  // Triviality test in the quotient. Conjugation preserves triviality, so the
  // scan drops conjugators and retries on every cyclic conjugate of the core;
  // a matched segment straddling the wrap point is contiguous in one of them.
  bool is_identity(const NormalForm& w) const {
    check_size(w);
    NormalForm cur = w;
    long long steps = 0;
    for (;;) {
      cur = weakly_cyclically_reduce(ctx_, cur).reduced;
      if (cur.empty()) return true;
      auto step = find_step(cur);
      if (!step) {
        auto rots = detail::cyclic_conjugates(ctx_, cur);
        for (size_t t = 1; t < rots.size() && !step; ++t) step = find_step(rots[t]);
      }
      if (!step) return false;
      bump(steps);
      cur = std::move(step->result);
    }
  }
  bool is_identity(const Word& w) const { return is_identity(normalize(ctx_, w)); }

 private:
  void check_size(const NormalForm& w) const {
    if (length(w) > opts_.max_word_letters)
      throw ResourceError("word of " + std::to_string(length(w)) +
                          " letters exceeds the cap of " +
                          std::to_string(opts_.max_word_letters));
  }
  void bump(long long& steps) const {
    if (++steps > opts_.max_steps)
      throw ResourceError("rewrite step cap of " + std::to_string(opts_.max_steps) +
                          " exceeded");
  }

  // w = a s b, relator = s t (both semi-reduced); returns a t^-1 b.
  NormalForm apply(const NormalForm& w, size_t i, size_t rel_idx, bool pstart, bool pend,
                   size_t k) const {
    const NormalForm& rel = r_.relators[rel_idx];
    Word a(w.letters().begin(), w.letters().begin() + static_cast<long>(i));
    size_t rs;       // relator letters wholly consumed by s
    size_t w_next;   // first w letter after the fully consumed ones
    if (pstart) {
      auto alpha = ctx_.mul_same(w[i], ctx_.inv(rel[0]));
      if (!alpha) throw Error("internal: partial start with identical letters");
      a.push_back(*alpha);
      rs = 1 + k;
      w_next = i + 1 + k;
    } else {
      rs = k;
      w_next = i + k;
    }
    Word t;
    size_t b_from = w_next;
    if (pend) {
      auto first = ctx_.mul_same(ctx_.inv(w[w_next]), rel[rs]);
      if (!first) throw Error("internal: partial end with identical letters");
      t.push_back(*first);
      t.insert(t.end(), rel.letters().begin() + static_cast<long>(rs + 1), rel.letters().end());
      b_from = w_next + 1;
    } else {
      t.assign(rel.letters().begin() + static_cast<long>(rs), rel.letters().end());
    }
    Word b(w.letters().begin() + static_cast<long>(b_from), w.letters().end());
    NormalForm an(detail::unchecked, std::move(a));
    NormalForm tn(detail::unchecked, std::move(t));
    NormalForm bn(detail::unchecked, std::move(b));
    return multiply(ctx_, multiply(ctx_, an, invert(ctx_, tn)), bn);
  }

  const FreeProductContext& ctx_;
  const SymmetrizedSet& r_;
  DehnOptions opts_;
  std::map<std::pair<Letter, Letter>, std::vector<size_t>> by_first_two_;
  std::map<std::pair<int, Letter>, std::vector<size_t>> by_factor_second_;
};

inline NormalForm dehn_reduce(const FreeProductContext& ctx, const NormalForm& w,
                              const SymmetrizedSet& r, DehnOptions opts = {}) {
  return DehnSolver(ctx, r, opts).reduce(w);
}
inline NormalForm dehn_reduce(const FreeProductContext& ctx, const Word& w,
                              const SymmetrizedSet& r, DehnOptions opts = {}) {
  return DehnSolver(ctx, r, opts).reduce(w);
}
inline bool dehn_is_identity(const FreeProductContext& ctx, const NormalForm& w,
                             const SymmetrizedSet& r, DehnOptions opts = {}) {
  return DehnSolver(ctx, r, opts).is_identity(w);
}

}  // namespace smallcancel
