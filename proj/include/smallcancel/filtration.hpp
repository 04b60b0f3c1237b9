#pragma once

#include <random>
#include <string>
#include <vector>

#include "smallcancel/set_algebra.hpp"

namespace smallcancel {

// Z together with bottom, top, and all complements, joins, meets, and
// differences of members of Z.
inline std::vector<Mask> r_closure(const std::vector<Mask>& z, const SetAlgebra& a) {
  for (Mask m : z)
    if (!a.contains(m))
      throw CheckError("r_closure input " + a.format_member(m) + " is not a member");
  std::vector<Mask> out = z;
  out.push_back(0);
  out.push_back(a.full_mask());
  for (Mask x : z) out.push_back(a.complement_of(x));
  for (Mask x : z)
    for (Mask y : z) {
      out.push_back(x | y);
      out.push_back(x & y);
      out.push_back(x & ~y);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Verdict for a proposed filtration. prefix_ok covers the finitely checkable
// clauses of the supplied levels; proper_filtration answers whether the
// definition's infinite properly-growing chain can exist at all.
struct FiltrationCheck {
  bool prefix_ok = true;
  std::vector<std::string> violations;
  bool proper_filtration = false;
  std::string verdict_note;
};

// Finite algebras never admit a proper filtration: each level must grow
// strictly, and the member count caps the chain length. The supplied prefix
// is still validated clause by clause.
inline FiltrationCheck check_finite_filtration(const SetAlgebra& a,
                                               const std::vector<std::vector<Mask>>& levels) {
  FiltrationCheck rep;
  auto flag = [&](const std::string& msg) {
    rep.prefix_ok = false;
    rep.violations.push_back(msg);
  };
  std::vector<std::vector<Mask>> canon;
  for (size_t i = 0; i < levels.size(); ++i) {
    std::vector<Mask> level = levels[i];
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    for (Mask m : level)
      if (!a.contains(m))
        flag("level " + std::to_string(i) + " member " + a.format_member(m) +
             " is outside the algebra");
    canon.push_back(std::move(level));
  }
  for (size_t i = 0; i + 1 < canon.size(); ++i) {
    if (!std::includes(canon[i + 1].begin(), canon[i + 1].end(), canon[i].begin(),
                       canon[i].end())) {
      flag("level " + std::to_string(i) + " is not included in level " + std::to_string(i + 1));
      continue;
    }
    if (canon[i + 1].size() == canon[i].size())
      flag("level " + std::to_string(i) + " does not grow properly into level " +
           std::to_string(i + 1));
    std::vector<Mask> closed = r_closure(canon[i], a);
    for (Mask m : closed)
      if (!std::binary_search(canon[i + 1].begin(), canon[i + 1].end(), m)) {
        flag("R-step fails: " + a.format_member(m) + " from level " + std::to_string(i) +
             " is missing from level " + std::to_string(i + 1));
        break;
      }
  }
  if (!canon.empty()) {
    std::vector<Mask> all;
    for (const auto& level : canon) all.insert(all.end(), level.begin(), level.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all != a.members()) {
      for (Mask m : a.members())
        if (!std::binary_search(all.begin(), all.end(), m)) {
          flag("exhaustion fails: " + a.format_member(m) + " is in no level");
          break;
        }
    }
  }
  rep.proper_filtration = false;
  rep.verdict_note = "a finite algebra of " + std::to_string(a.members().size()) +
                     " members admits at most " + std::to_string(a.members().size()) +
                     " proper growth steps, so no infinite proper chain exists";
  return rep;
}

// The shipped countable instance over the finite/cofinite algebra on omega:
// level n holds exactly the sets with support inside [0, n].
struct SupportFiltration {
  static bool level_contains(long long n, const FinCofSet& s) {
    return fincof_support_bound(s) <= n + 1;
  }
  // Least level containing s: the largest supported point (0 when the
  // support is empty).
  static long long induced_f(const FinCofSet& s) {
    return s.support.empty() ? 0 : s.support.back();
  }
  // All members of level n: each subset of [0, n] as a support, with both
  // flags. Intended for small n.
  static std::vector<FinCofSet> level_members(long long n) {
    if (n < 0 || n > 20) throw CheckError("level enumeration supported for 0 <= n <= 20");
    std::vector<FinCofSet> out;
    const unsigned long long count = 1ULL << (n + 1);
    for (unsigned long long bits = 0; bits < count; ++bits) {
      std::vector<long long> sup;
      for (long long p = 0; p <= n; ++p)
        if (bits & (1ULL << p)) sup.push_back(p);
      out.push_back(fin(sup));
      out.push_back(cof(sup));
    }
    return out;
  }
};

// Clause-by-clause check of the support filtration up to level max_n.
// Properness and exhaustion are structural; the R-step is checked on all
// pairs for small levels and on seeded samples beyond that.
inline FiltrationCheck check_support_filtration(long long max_n, int exact_limit = 8,
                                                unsigned seed = 20260821) {
  if (max_n < 0 || max_n > 12)
    throw CheckError("support filtration check covers 0 <= max_n <= 12");
  FiltrationCheck rep;
  auto flag = [&](const std::string& msg) {
    rep.prefix_ok = false;
    rep.violations.push_back(msg);
  };
  std::mt19937 rng(seed);
  for (long long n = 0; n <= max_n; ++n) {
    // Proper growth: {n+1} enters exactly at level n+1.
    FinCofSet fresh = fin({n + 1});
    if (SupportFiltration::level_contains(n, fresh) ||
        !SupportFiltration::level_contains(n + 1, fresh))
      flag("properness witness " + format_fincof(fresh) + " misplaced at level " +
           std::to_string(n));
    // R-step on pairs.
    auto step_ok = [&](const FinCofSet& x, const FinCofSet& y) {
      for (const FinCofSet& r :
           {fincof_complement(x), fincof_join(x, y), fincof_meet(x, y),
            fincof_difference(x, y), fincof_bottom(), fincof_top()})
        if (!SupportFiltration::level_contains(n + 1, r)) {
          flag("R-step fails at level " + std::to_string(n) + ": " + format_fincof(r) +
               " from " + format_fincof(x) + ", " + format_fincof(y));
          return false;
        }
      return true;
    };
    if (n <= exact_limit) {
      std::vector<FinCofSet> members = SupportFiltration::level_members(n);
      for (const FinCofSet& x : members)
        for (const FinCofSet& y : members)
          if (!step_ok(x, y)) goto next_level;
    } else {
      std::uniform_int_distribution<unsigned long long> bits(0, (1ULL << (n + 1)) - 1);
      std::uniform_int_distribution<int> coin(0, 1);
      for (int trial = 0; trial < 200; ++trial) {
        auto draw = [&] {
          std::vector<long long> sup;
          unsigned long long b = bits(rng);
          for (long long p = 0; p <= n; ++p)
            if (b & (1ULL << p)) sup.push_back(p);
          return coin(rng) ? cof(sup) : fin(sup);
        };
        if (!step_ok(draw(), draw())) goto next_level;
      }
    }
  next_level:;
  }
  // Exhaustion and the level function, spot-checked on random sets.
  std::uniform_int_distribution<long long> point(0, 40);
  std::uniform_int_distribution<int> size(0, 6), coin(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<long long> sup;
    for (int i = size(rng); i > 0; --i) sup.push_back(point(rng));
    FinCofSet s = coin(rng) ? cof(sup) : fin(sup);
    long long f = SupportFiltration::induced_f(s);
    if (!SupportFiltration::level_contains(f, s))
      flag("exhaustion fails: " + format_fincof(s) + " not in its own level " +
           std::to_string(f));
    if (f > 0 && SupportFiltration::level_contains(f - 1, s))
      flag("level function overshoots: " + format_fincof(s) + " already in level " +
           std::to_string(f - 1));
  }
  rep.proper_filtration = rep.prefix_ok;
  rep.verdict_note =
      "every finite or cofinite set lies in the level indexed by its largest "
      "supported point, and level n+1 adds the fresh witness {n+1}";
  return rep;
}

}  // namespace smallcancel
