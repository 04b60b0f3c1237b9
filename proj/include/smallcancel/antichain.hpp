#pragma once

#include <functional>
#include <string>
#include <vector>

#include "smallcancel/filtration.hpp"
#include "smallcancel/set_algebra.hpp"

namespace smallcancel {

// Search controls for the antichain extraction. Candidates are finite
// subsets of the current remainder drawn from points below support_bound,
// visited in binary-counter order over the remainder's available points.
// naive_search walks that order literally; the default skips straight to
// the first counter value that can satisfy the level threshold, which picks
// the same candidate.
struct AntichainOptions {
  long long support_bound = 64;
  bool naive_search = false;
  unsigned long long naive_limit = 1ULL << 20;
};

struct AntichainStep {
  FinCofSet c_before;
  FinCofSet candidate;
  long long threshold = 0;
  bool else_branch = false;
  FinCofSet a;
  FinCofSet c_after;
};

struct AntichainResult {
  std::vector<FinCofSet> antichain;
  std::vector<AntichainStep> trace;
};

// f(c - a') + 1 >= f(a') for a recorded step; the level of the kept
// remainder can trail the candidate's level by at most one.
inline bool step_resolution_inequality(const AntichainStep& s) {
  FinCofSet rest = fincof_difference(s.c_before, s.candidate);
  return SupportFiltration::induced_f(rest) + 1 >= SupportFiltration::induced_f(s.candidate);
}

namespace detail {

// Points of c usable for candidates, in increasing order, below bound.
inline std::vector<long long> available_points(const FinCofSet& c, long long bound) {
  std::vector<long long> pts;
  if (c.cofinite) {
    size_t idx = 0;
    for (long long p = 0; p < bound; ++p) {
      while (idx < c.support.size() && c.support[idx] < p) ++idx;
      if (idx < c.support.size() && c.support[idx] == p) continue;
      pts.push_back(p);
    }
  } else {
    for (long long p : c.support)
      if (p < bound) pts.push_back(p);
  }
  return pts;
}

}  // namespace detail

// Builds a pairwise disjoint sequence a_0, a_1, ... whose levels strictly
// increase, splitting off one piece of the remainder at a time. in_l answers
// whether a set still has members of unbounded level beneath it; the level
// function is the one induced by the support filtration. Each step selects
// the first finite candidate (counter order) whose level clears
// max(level(a_prev), level(c)) + 2 (no threshold on the first step), then
// keeps whichever half of the split the collection still accepts.
template <typename Oracle>
inline AntichainResult extract_antichain(Oracle&& in_l, long long count,
                                         AntichainOptions opt = {}) {
  if (count < 1) throw CheckError("antichain extraction needs count >= 1");
  if (opt.support_bound < 1 || opt.support_bound > 64)
    throw CheckError("antichain support bound must lie in [1, 64]");
  AntichainResult res;
  FinCofSet c = fincof_top();
  if (!in_l(c))
    throw CheckError("the collection rejects the whole space; nothing to extract");
  for (long long n = 0; n < count; ++n) {
    long long threshold = 0;
    if (n > 0) {
      long long fa = SupportFiltration::induced_f(res.antichain.back());
      long long fc = SupportFiltration::induced_f(c);
      threshold = std::max(fa, fc) + 2;
    }
    std::vector<long long> pts = detail::available_points(c, opt.support_bound);
    FinCofSet candidate;
    bool found = false;
    if (opt.naive_search) {
      size_t bits = std::min<size_t>(pts.size(), 62);
      unsigned long long limit = std::min(opt.naive_limit, (1ULL << bits) - 1);
      for (unsigned long long v = 1; v <= limit && !found; ++v) {
        std::vector<long long> sup;
        for (size_t i = 0; i < bits; ++i)
          if (v & (1ULL << i)) sup.push_back(pts[i]);
        FinCofSet cand = fin(sup);
        if (SupportFiltration::induced_f(cand) >= threshold) {
          candidate = cand;
          found = true;
        }
      }
    } else {
      // Counter values below 2^i only touch points below pts[i], so the
      // first value whose candidate reaches the threshold is the singleton
      // at the first sufficiently high point.
      for (size_t i = 0; i < pts.size(); ++i)
        if (pts[i] >= threshold) {
          candidate = fin({pts[i]});
          found = true;
          break;
        }
    }
    if (!found)
      throw ResourceError("antichain search exhausted at step " + std::to_string(n) +
                          ": no candidate below support bound " +
                          std::to_string(opt.support_bound) + " reaches level " +
                          std::to_string(threshold));
    FinCofSet rest = fincof_difference(c, candidate);
    AntichainStep step;
    step.c_before = c;
    step.candidate = candidate;
    step.threshold = threshold;
    if (in_l(rest)) {
      step.else_branch = false;
      step.a = candidate;
      c = rest;
    } else if (in_l(candidate)) {
      step.else_branch = true;
      step.a = rest;
      c = candidate;
    } else {
      throw CheckError("the collection rejected both halves at step " + std::to_string(n) +
                       "; no valid c_" + std::to_string(n + 1) + " exists");
    }
    step.c_after = c;
    res.antichain.push_back(step.a);
    res.trace.push_back(step);
  }
  return res;
}

// The shipped collection for the support filtration: beneath a cofinite set
// the level function is unbounded, beneath a finite set it is capped by the
// largest supported point.
inline bool cofinite_oracle(const FinCofSet& s) { return s.cofinite; }

}  // namespace smallcancel
