#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smallcancel/errors.hpp"

namespace smallcancel {

enum class GroupKind { finite_table, infinite_cyclic };

// One factor of a free product: either a finite group given by its full
// multiplication table, or the infinite cyclic group (elements = exponents).
// Finite elements are referred to by index into `elements`; names are opaque.
class FactorGroup {
 public:
  FactorGroup() = default;

  static FactorGroup infinite_cyclic(int id, std::string name = "c") {
    FactorGroup g;
    g.id_ = id;
    g.kind_ = GroupKind::infinite_cyclic;
    g.name_ = std::move(name);
    return g;
  }

  // rows[i][j] = name of elements[i] * elements[j].
  static FactorGroup from_table(int id, std::string name,
                                std::vector<std::string> elements,
                                const std::string& identity_name,
                                const std::vector<std::vector<std::string>>& rows) {
    FactorGroup g;
    g.id_ = id;
    g.kind_ = GroupKind::finite_table;
    g.name_ = std::move(name);
    g.elements_ = std::move(elements);
    const int n = static_cast<int>(g.elements_.size());
    if (n == 0) throw CheckError("group '" + g.name_ + "': empty element list");
    for (int i = 0; i < n; ++i) {
      const std::string& e = g.elements_[i];
      if (e.empty() || e.find_first_of(" \t@#") != std::string::npos ||
          e.rfind("c^", 0) == 0) {
        throw CheckError("group '" + g.name_ + "': element name '" + e +
                         "' is empty, contains '@'/'#'/whitespace, or starts with 'c^'");
      }
      for (int j = i + 1; j < n; ++j) {
        if (g.elements_[i] == g.elements_[j]) {
          throw CheckError("group '" + g.name_ + "': duplicate element name '" +
                           g.elements_[i] + "'");
        }
      }
    }
    auto idx = g.element_index(identity_name);
    if (!idx) {
      throw CheckError("group '" + g.name_ + "': identity '" + identity_name +
                       "' is not in the element list");
    }
    g.identity_ = *idx;
    if (static_cast<int>(rows.size()) != n) {
      throw CheckError("group '" + g.name_ + "': table has " +
                       std::to_string(rows.size()) + " rows, expected " +
                       std::to_string(n));
    }
    g.table_.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) {
        throw CheckError("group '" + g.name_ + "': table row " + std::to_string(i) +
                         " has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(n));
      }
      for (int j = 0; j < n; ++j) {
        auto e = g.element_index(rows[i][j]);
        if (!e) {
          throw CheckError("group '" + g.name_ + "': table entry '" + rows[i][j] +
                           "' at row " + std::to_string(i) + ", column " +
                           std::to_string(j) + " is not an element");
        }
        g.table_[static_cast<size_t>(i) * n + j] = *e;
      }
    }
    g.validate({});
    g.build_inverses();
    return g;
  }

  int id() const { return id_; }
  void set_id(int id) { id_ = id; }
  GroupKind kind() const { return kind_; }
  bool is_cyclic() const { return kind_ == GroupKind::infinite_cyclic; }
  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int identity() const { return identity_; }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element_name(int i) const { return elements_.at(static_cast<size_t>(i)); }

  std::optional<int> element_index(const std::string& name) const {
    for (int i = 0; i < order(); ++i) {
      if (elements_[static_cast<size_t>(i)] == name) return i;
    }
    return std::nullopt;
  }

  int mul(int a, int b) const {
    return table_[static_cast<size_t>(a) * order() + b];
  }
  int inv(int a) const { return inverse_[static_cast<size_t>(a)]; }

  // Group-axiom validation: identity law, two-sided inverses, and
  // associativity (exhaustive up to exhaustive_limit elements, otherwise
  // checked on all triples whose middle element is a generator, which
  // suffices once the generators multiplicatively span the table).
  void validate(const std::vector<int>& generator_hint,
                int exhaustive_limit = 200) const {
    const int n = order();
    if (kind_ != GroupKind::finite_table) return;
    for (int i = 0; i < n; ++i) {
      if (mul(identity_, i) != i || mul(i, identity_) != i) {
        throw CheckError("group '" + name_ + "': identity law fails at element '" +
                         elements_[static_cast<size_t>(i)] + "'");
      }
    }
    std::vector<char> has_inv(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      bool found = false;
      for (int j = 0; j < n; ++j) {
        if (mul(i, j) == identity_ && mul(j, i) == identity_) {
          found = true;
          break;
        }
      }
      if (!found) {
        throw CheckError("group '" + name_ + "': element '" +
                         elements_[static_cast<size_t>(i)] + "' has no two-sided inverse");
      }
      has_inv[static_cast<size_t>(i)] = 1;
    }
    if (n <= exhaustive_limit) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw CheckError("group '" + name_ + "': associativity fails at (" +
                               elements_[static_cast<size_t>(a)] + ", " +
                               elements_[static_cast<size_t>(b)] + ", " +
                               elements_[static_cast<size_t>(c)] + ")");
      return;
    }
    std::vector<int> gens = generator_hint.empty() ? find_generators() : generator_hint;
    if (!spans(gens)) {
      throw CheckError("group '" + name_ +
                       "': generator set does not span the table; cannot certify associativity");
    }
    for (int g : gens)
      for (int a = 0; a < n; ++a) {
        const int ag = mul(a, g);
        for (int b = 0; b < n; ++b)
          if (mul(ag, b) != mul(a, mul(g, b)))
            throw CheckError("group '" + name_ + "': associativity fails at (" +
                             elements_[static_cast<size_t>(a)] + ", " +
                             elements_[static_cast<size_t>(g)] + ", " +
                             elements_[static_cast<size_t>(b)] + ")");
      }
  }

  // --- built-in groups ---

  // Z/n written additively; element names are "0".."n-1".
  static FactorGroup cyclic_group(int n, int id = 0) {
    if (n < 1) throw CheckError("cyclic_group: order must be >= 1");
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::vector<std::vector<std::string>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      rows[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j)
        rows[static_cast<size_t>(i)].push_back(std::to_string((i + j) % n));
    }
    return from_table(id, "Z" + std::to_string(n), std::move(names), "0", rows);
  }

  // All permutations of {0..n-1}; a permutation p is named by its image
  // string p(0)p(1)...p(n-1). Supports n <= 5.
  static FactorGroup symmetric_group(int n, int id = 0) {
    return permutation_group(n, id, "S" + std::to_string(n), /*even_only=*/false);
  }

  // Even permutations of {0,1,2,3}.
  static FactorGroup alternating_group_4(int id = 0) {
    return permutation_group(4, id, "A4", /*even_only=*/true);
  }

 private:
  static FactorGroup permutation_group(int n, int id, const std::string& name,
                                       bool even_only) {
    if (n < 1 || n > 5) throw CheckError(name + ": supported degrees are 1..5");
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
      if (!even_only || parity(p) == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(perms.begin(), perms.end());
    auto pname = [](const std::vector<int>& q) {
      std::string s;
      for (int v : q) s += static_cast<char>('0' + v);
      return s;
    };
    std::vector<std::string> names;
    names.reserve(perms.size());
    for (const auto& q : perms) names.push_back(pname(q));
    std::vector<std::vector<std::string>> rows(perms.size());
    for (size_t i = 0; i < perms.size(); ++i) {
      rows[i].reserve(perms.size());
      for (size_t j = 0; j < perms.size(); ++j) {
        std::vector<int> prod(static_cast<size_t>(n));
        // (p*q)(x) = p(q(x))
        for (int x = 0; x < n; ++x)
          prod[static_cast<size_t>(x)] =
              perms[i][static_cast<size_t>(perms[j][static_cast<size_t>(x)])];
        rows[i].push_back(pname(prod));
      }
    }
    std::string identity;
    for (int v = 0; v < n; ++v) identity += static_cast<char>('0' + v);
    return from_table(id, name, std::move(names), identity, rows);
  }

  static int parity(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) ++inv;
    return inv % 2;
  }

  void build_inverses() {
    const int n = order();
    inverse_.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (mul(i, j) == identity_ && mul(j, i) == identity_) {
          inverse_[static_cast<size_t>(i)] = j;
          break;
        }
  }

  // Greedy multiplicative spanning set: repeatedly add the first element not
  // reached by products of the current set.
  std::vector<int> find_generators() const {
    const int n = order();
    std::vector<int> gens;
    std::vector<char> reached(static_cast<size_t>(n), 0);
    reached[static_cast<size_t>(identity_)] = 1;
    auto close = [&] {
      bool grew = true;
      while (grew) {
        grew = false;
        for (int a = 0; a < n; ++a) {
          if (!reached[static_cast<size_t>(a)]) continue;
          for (int g : gens) {
            int x = mul(a, g);
            if (!reached[static_cast<size_t>(x)]) {
              reached[static_cast<size_t>(x)] = 1;
              grew = true;
            }
            x = mul(g, a);
            if (!reached[static_cast<size_t>(x)]) {
              reached[static_cast<size_t>(x)] = 1;
              grew = true;
            }
          }
        }
      }
    };
    for (int i = 0; i < n; ++i) {
      if (reached[static_cast<size_t>(i)]) continue;
      gens.push_back(i);
      close();
    }
    return gens;
  }

  bool spans(const std::vector<int>& gens) const {
    const int n = order();
    std::vector<char> reached(static_cast<size_t>(n), 0);
    reached[static_cast<size_t>(identity_)] = 1;
    for (int g : gens) {
      if (g < 0 || g >= n) return false;
      reached[static_cast<size_t>(g)] = 1;
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < n; ++a) {
        if (!reached[static_cast<size_t>(a)]) continue;
        for (int g : gens) {
          int x = mul(a, g);
          if (!reached[static_cast<size_t>(x)]) {
            reached[static_cast<size_t>(x)] = 1;
            grew = true;
          }
        }
      }
    }
    return std::all_of(reached.begin(), reached.end(), [](char c) { return c != 0; });
  }

  int id_ = 0;
  GroupKind kind_ = GroupKind::finite_table;
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<int> table_;  // row-major order x order
  std::vector<int> inverse_;
  int identity_ = 0;
};

// --- group table files ---
//
//   # comment
//   group S3
//   elements 012 021 102 120 201 210
//   identity 012
//   table
//   <order rows of <order> entries, entry (i,j) = elements[i]*elements[j]>
//   end

inline FactorGroup parse_group_text(const std::string& text, int id = 0,
                                    const std::string& origin = "<string>") {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  auto next_tokens = [&](std::vector<std::string>& out) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      out.clear();
      std::string tok;
      while (ls >> tok) out.push_back(tok);
      if (!out.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> toks;
  if (!next_tokens(toks) || toks[0] != "group" || toks.size() != 2)
    fail("expected 'group <name>'");
  std::string name = toks[1];
  if (!next_tokens(toks) || toks[0] != "elements" || toks.size() < 2)
    fail("expected 'elements <name>...'");
  std::vector<std::string> elements(toks.begin() + 1, toks.end());
  if (!next_tokens(toks) || toks[0] != "identity" || toks.size() != 2)
    fail("expected 'identity <name>'");
  std::string identity = toks[1];
  if (!next_tokens(toks) || toks[0] != "table" || toks.size() != 1)
    fail("expected 'table'");
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (!next_tokens(toks)) fail("table ended early: expected row " + std::to_string(i));
    rows.push_back(toks);
  }
  if (!next_tokens(toks) || toks[0] != "end") fail("expected 'end' after the table");
  return FactorGroup::from_table(id, name, std::move(elements), identity, rows);
}

inline FactorGroup parse_group_file(const std::string& path, int id = 0) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_group_text(ss.str(), id, path);
}

inline std::string write_group_text(const FactorGroup& g) {
  if (g.is_cyclic())
    throw CheckError("write_group_text: the infinite cyclic factor has no table file form");
  std::ostringstream out;
  out << "group " << g.name() << "\nelements";
  for (const auto& e : g.elements()) out << ' ' << e;
  out << "\nidentity " << g.element_name(g.identity()) << "\ntable\n";
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < g.order(); ++j)
      out << (j ? " " : "") << g.element_name(g.mul(i, j));
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

}  // namespace smallcancel
