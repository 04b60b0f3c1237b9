#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smallcancel/errors.hpp"

namespace smallcancel {

// A rule n |-> T_n assigning each index a set of naturals with |T_n| <= n+1.
// Built-in rules are total; an explicit rule only covers the levels it lists
// and reports the demanded index when asked beyond them.
class ChTower {
 public:
  enum class Rule { interval, constant, explicit_levels };

  static ChTower interval() { return ChTower(Rule::interval); }
  static ChTower constant() { return ChTower(Rule::constant); }
  static ChTower from_levels(std::vector<std::vector<long long>> levels) {
    ChTower t(Rule::explicit_levels);
    t.levels_ = std::move(levels);
    for (size_t i = 0; i < t.levels_.size(); ++i) t.level(static_cast<long long>(i));
    return t;
  }

  Rule rule() const { return rule_; }
  size_t defined_levels() const { return levels_.size(); }

  // T_n, sorted without duplicates. The size bound is enforced on every
  // access.
  std::vector<long long> level(long long n) const {
    if (n < 0) throw CheckError("tower level index must be nonnegative");
    std::vector<long long> out;
    switch (rule_) {
      case Rule::interval:
        out.resize(static_cast<size_t>(n) + 1);
        for (long long i = 0; i <= n; ++i) out[static_cast<size_t>(i)] = i;
        break;
      case Rule::constant:
        out = {0};
        break;
      case Rule::explicit_levels:
        if (static_cast<size_t>(n) >= levels_.size())
          throw CheckError("tower rule not defined far enough: level " + std::to_string(n) +
                           " demanded, only " + std::to_string(levels_.size()) + " given");
        out = levels_[static_cast<size_t>(n)];
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        break;
    }
    for (long long v : out)
      if (v < 0) throw CheckError("tower level " + std::to_string(n) + " holds a negative value");
    if (out.size() > static_cast<size_t>(n) + 1)
      throw CheckError("tower level " + std::to_string(n) + " has " +
                       std::to_string(out.size()) + " elements, bound is " +
                       std::to_string(n + 1));
    return out;
  }

  // max(T_n), -1 for an empty level.
  long long level_max(long long n) const {
    std::vector<long long> t = level(n);
    return t.empty() ? -1 : t.back();
  }

 private:
  explicit ChTower(Rule r) : rule_(r) {}
  Rule rule_;
  std::vector<std::vector<long long>> levels_;
};

// g(0) = max(T_0)+1, g(n+1) = max(T_{g(n)+2} together with g(n)) + 1.
// Strictly increasing with g(n) > n, and every nondecreasing walk through
// the tower stays strictly below it.
inline std::vector<long long> dominating_g(const ChTower& t, long long depth) {
  if (depth < 1) throw CheckError("domination depth must be at least 1");
  if (depth > 100000) throw ResourceError("domination depth capped at 100000");
  std::vector<long long> g;
  g.push_back(t.level_max(0) + 1);
  while (static_cast<long long>(g.size()) < depth) {
    long long prev = g.back();
    g.push_back(std::max(t.level_max(prev + 2), prev) + 1);
  }
  return g;
}

struct DominationReport {
  std::vector<long long> g;
  long long branches_checked = 0;
  bool ok = true;
  std::string failure;
};

// Exhaustively enumerates every strictly increasing walk f with f(n) in T_n
// for n < depth and checks, alongside g's own growth properties, that
//   (a) f(n) < g(n) at every index, and
//   (b) g(n) >= f(m) implies g(n+1) > f(m+2) wherever both sides are defined.
inline DominationReport verify_domination(const ChTower& t, long long depth,
                                          long long branch_limit = 2000000) {
  DominationReport rep;
  rep.g = dominating_g(t, depth);
  for (long long n = 0; n < depth; ++n) {
    if (rep.g[static_cast<size_t>(n)] <= n) {
      rep.ok = false;
      rep.failure = "g(" + std::to_string(n) + ") = " +
                    std::to_string(rep.g[static_cast<size_t>(n)]) + " does not exceed its index";
      return rep;
    }
    if (n > 0 && rep.g[static_cast<size_t>(n)] <= rep.g[static_cast<size_t>(n) - 1]) {
      rep.ok = false;
      rep.failure = "g is not strictly increasing at index " + std::to_string(n);
      return rep;
    }
  }
  std::vector<std::vector<long long>> levels;
  for (long long n = 0; n < depth; ++n) levels.push_back(t.level(n));
  const std::vector<long long>& g = rep.g;
  std::vector<long long> walk;
  auto fail_walk = [&](const std::string& why) {
    rep.ok = false;
    std::ostringstream os;
    os << "walk";
    for (long long w : walk) os << " " << w;
    os << ": " << why;
    rep.failure = os.str();
  };
  auto check_walk = [&]() {
    ++rep.branches_checked;
    if (rep.branches_checked > branch_limit)
      throw ResourceError("domination check exceeded " + std::to_string(branch_limit) +
                          " walks");
    for (long long n = 0; n < depth; ++n)
      if (walk[static_cast<size_t>(n)] >= g[static_cast<size_t>(n)]) {
        fail_walk("f(" + std::to_string(n) + ") reaches g(" + std::to_string(n) + ") = " +
                  std::to_string(g[static_cast<size_t>(n)]));
        return;
      }
    for (long long n = 0; n + 1 < depth; ++n)
      for (long long m = 0; m + 2 < depth; ++m)
        if (g[static_cast<size_t>(n)] >= walk[static_cast<size_t>(m)] &&
            g[static_cast<size_t>(n) + 1] <= walk[static_cast<size_t>(m) + 2]) {
          fail_walk("g(" + std::to_string(n) + ") >= f(" + std::to_string(m) + ") but g(" +
                    std::to_string(n + 1) + ") <= f(" + std::to_string(m + 2) + ")");
          return;
        }
  };
  auto dfs = [&](auto&& self, long long n, long long prev) -> void {
    if (!rep.ok) return;
    if (n == depth) {
      check_walk();
      return;
    }
    for (long long v : levels[static_cast<size_t>(n)]) {
      if (v <= prev) continue;
      walk.push_back(v);
      self(self, n + 1, v);
      walk.pop_back();
      if (!rep.ok) return;
    }
  };
  dfs(dfs, 0, -1);
  return rep;
}

// Text format:
//   tower interval | tower constant | tower explicit
//   level <naturals...>   (explicit only, line k gives T_k)
//   end
inline ChTower parse_tower_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool saw_header = false, saw_end = false;
  std::string rule;
  std::vector<std::vector<long long>> levels;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (saw_end) throw ParseError("tower line " + std::to_string(lineno) + ": content after end");
    if (!saw_header) {
      if (word != "tower")
        throw ParseError("tower line " + std::to_string(lineno) + ": expected tower header");
      if (!(ls >> rule) || (rule != "interval" && rule != "constant" && rule != "explicit"))
        throw ParseError("tower line " + std::to_string(lineno) +
                         ": rule must be interval, constant, or explicit");
      std::string junk;
      if (ls >> junk)
        throw ParseError("tower line " + std::to_string(lineno) + ": trailing text " + junk);
      saw_header = true;
      continue;
    }
    if (word == "end") {
      saw_end = true;
      continue;
    }
    if (word != "level")
      throw ParseError("tower line " + std::to_string(lineno) + ": expected level or end, got " +
                       word);
    if (rule != "explicit")
      throw ParseError("tower line " + std::to_string(lineno) +
                       ": level lines only belong to explicit towers");
    std::vector<long long> vals;
    std::string tok;
    while (ls >> tok) {
      try {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        vals.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("tower line " + std::to_string(lineno) + ": bad level value " + tok);
      }
    }
    levels.push_back(std::move(vals));
  }
  if (!saw_header) throw ParseError("tower text has no header");
  if (!saw_end) throw ParseError("tower text has no end");
  if (rule == "interval") return ChTower::interval();
  if (rule == "constant") return ChTower::constant();
  if (levels.empty()) throw ParseError("explicit tower needs at least one level");
  try {
    return ChTower::from_levels(std::move(levels));
  } catch (const CheckError& e) {
    throw ParseError(std::string("explicit tower invalid: ") + e.what());
  }
}

inline ChTower parse_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tower file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tower_text(buf.str());
}

inline std::string write_tower_text(const ChTower& t) {
  std::ostringstream os;
  switch (t.rule()) {
    case ChTower::Rule::interval:
      os << "tower interval\n";
      break;
    case ChTower::Rule::constant:
      os << "tower constant\n";
      break;
    case ChTower::Rule::explicit_levels:
      os << "tower explicit\n";
      for (size_t i = 0; i < t.defined_levels(); ++i) {
        os << "level";
        for (long long v : t.level(static_cast<long long>(i))) os << " " << v;
        os << "\n";
      }
      break;
  }
  os << "end\n";
  return os.str();
}

}  // namespace smallcancel
