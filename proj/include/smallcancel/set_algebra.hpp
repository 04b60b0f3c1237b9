#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smallcancel/errors.hpp"

namespace smallcancel {

// ---------------------------------------------------------------------------
// Finite algebras of sets over a named carrier of at most 64 points.
// Members are bitmasks over the carrier; the member list is sorted and the
// closure axioms are checked eagerly on construction.
// ---------------------------------------------------------------------------

using Mask = std::uint64_t;

class SetAlgebra {
 public:
  static SetAlgebra from_masks(std::vector<std::string> points, std::vector<Mask> members) {
    SetAlgebra a;
    if (points.size() > 64) throw CheckError("carrier larger than 64 points");
    for (const std::string& p : points) {
      if (p.empty()) throw CheckError("empty point name");
      if (std::count(points.begin(), points.end(), p) > 1)
        throw CheckError("duplicate point name '" + p + "'");
    }
    a.points_ = std::move(points);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    a.members_ = std::move(members);
    const Mask full = a.full_mask();
    for (Mask m : a.members_)
      if (m & ~full) throw CheckError("member uses points outside the carrier");
    a.require(0, "the empty set");
    a.require(full, "the whole carrier");
    for (Mask m : a.members_) a.require(full & ~m, "the complement of " + a.format_member(m));
    for (Mask m : a.members_)
      for (Mask n : a.members_) {
        a.require(m & n, "the meet of " + a.format_member(m) + " and " + a.format_member(n));
        a.require(m | n, "the join of " + a.format_member(m) + " and " + a.format_member(n));
        a.require(m & ~n, "the difference of " + a.format_member(m) + " and " + a.format_member(n));
      }
    return a;
  }

  static SetAlgebra from_subsets(std::vector<std::string> points,
                                 const std::vector<std::vector<std::string>>& subsets) {
    SetAlgebra probe;
    probe.points_ = points;
    std::vector<Mask> members;
    for (const auto& s : subsets) {
      Mask m = 0;
      for (const std::string& p : s) m |= Mask{1} << probe.point_index(p);
      members.push_back(m);
    }
    return from_masks(std::move(points), std::move(members));
  }

  static SetAlgebra powerset(std::vector<std::string> points) {
    if (points.size() > 20) throw CheckError("powerset carrier limited to 20 points");
    std::vector<Mask> members;
    const Mask full = points.empty() ? 0 : (Mask{1} << points.size()) - 1;
    for (Mask m = 0;; ++m) {
      members.push_back(m);
      if (m == full) break;
    }
    return from_masks(std::move(points), std::move(members));
  }

  static SetAlgebra trivial(std::vector<std::string> points) {
    const Mask full = points.empty() ? 0 : (Mask{1} << points.size()) - 1;
    return from_masks(std::move(points), {0, full});
  }

  size_t carrier_size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<Mask>& members() const { return members_; }
  Mask full_mask() const {
    return points_.empty() ? 0 : (Mask{1} << points_.size()) - 1;
  }
  Mask complement_of(Mask m) const { return full_mask() & ~m; }

  bool contains(Mask m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
  }

  size_t point_index(const std::string& name) const {
    auto it = std::find(points_.begin(), points_.end(), name);
    if (it == points_.end()) throw CheckError("unknown point '" + name + "'");
    return static_cast<size_t>(it - points_.begin());
  }

  Mask parse_member(const std::vector<std::string>& names) const {
    Mask m = 0;
    for (const std::string& p : names) m |= Mask{1} << point_index(p);
    return m;
  }

  std::string format_member(Mask m) const {
    std::string out = "{";
    bool first = true;
    for (size_t i = 0; i < points_.size(); ++i)
      if (m & (Mask{1} << i)) {
        if (!first) out += ",";
        out += points_[i];
        first = false;
      }
    return out + "}";
  }

 private:
  void require(Mask m, const std::string& what) const {
    if (!contains(m))
      throw CheckError("not an algebra: " + what + " = " + format_member(m) + " is missing");
  }

  std::vector<std::string> points_;
  std::vector<Mask> members_;
};

// File format:
//   algebra
//   points a b c
//   set            (one line per member; an empty line body is the empty set)
//   set b c
//   ...
//   end
// '#' starts a comment.
inline SetAlgebra parse_algebra_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool started = false, ended = false;
  std::vector<std::string> points;
  bool saw_points = false;
  std::vector<std::vector<std::string>> subsets;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("algebra line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (ended) fail("content after end");
    if (key == "algebra") {
      if (started) fail("duplicate algebra line");
      started = true;
    } else if (!started) {
      fail("file must start with an algebra line");
    } else if (key == "points") {
      if (saw_points) fail("duplicate points line");
      saw_points = true;
      std::string p;
      while (ls >> p) points.push_back(p);
    } else if (key == "set") {
      if (!saw_points) fail("set before points");
      std::vector<std::string> names;
      std::string p;
      while (ls >> p) names.push_back(p);
      subsets.push_back(std::move(names));
    } else if (key == "end") {
      ended = true;
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!started) throw ParseError("algebra file has no algebra line");
  if (!saw_points) throw ParseError("algebra file has no points line");
  if (!ended) throw ParseError("algebra file has no end line");
  return SetAlgebra::from_subsets(std::move(points), subsets);
}

inline SetAlgebra parse_algebra_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open algebra file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_algebra_text(ss.str());
}

inline std::string write_algebra_text(const SetAlgebra& a) {
  std::ostringstream out;
  out << "algebra\npoints";
  for (const std::string& p : a.points()) out << ' ' << p;
  out << '\n';
  for (Mask m : a.members()) {
    out << "set";
    for (size_t i = 0; i < a.carrier_size(); ++i)
      if (m & (Mask{1} << i)) out << ' ' << a.points()[i];
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// The finite/cofinite algebra on the naturals. A set is a sorted finite
// support plus a flag: the support itself, or its complement in omega. The
// representation is canonical, so equality is structural.
// ---------------------------------------------------------------------------

struct FinCofSet {
  std::vector<long long> support;  // sorted, unique, nonnegative
  bool cofinite = false;

  auto operator<=>(const FinCofSet&) const = default;
};

inline FinCofSet fin(std::vector<long long> support) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (!support.empty() && support.front() < 0)
    throw CheckError("supports live in the naturals");
  return FinCofSet{std::move(support), false};
}

inline FinCofSet cof(std::vector<long long> support) {
  FinCofSet s = fin(std::move(support));
  s.cofinite = true;
  return s;
}

inline FinCofSet fincof_bottom() { return fin({}); }
inline FinCofSet fincof_top() { return cof({}); }

inline bool fincof_contains(const FinCofSet& s, long long x) {
  bool in_support = std::binary_search(s.support.begin(), s.support.end(), x);
  return s.cofinite ? !in_support : in_support;
}

inline FinCofSet fincof_complement(FinCofSet s) {
  s.cofinite = !s.cofinite;
  return s;
}

namespace detail {
inline std::vector<long long> support_union(const std::vector<long long>& a,
                                            const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline std::vector<long long> support_intersection(const std::vector<long long>& a,
                                                   const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline std::vector<long long> support_difference(const std::vector<long long>& a,
                                                 const std::vector<long long>& b) {
  std::vector<long long> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
}  // namespace detail

inline FinCofSet fincof_meet(const FinCofSet& a, const FinCofSet& b) {
  if (!a.cofinite && !b.cofinite)
    return FinCofSet{detail::support_intersection(a.support, b.support), false};
  if (a.cofinite && b.cofinite)
    return FinCofSet{detail::support_union(a.support, b.support), true};
  const FinCofSet& f = a.cofinite ? b : a;  // finite one
  const FinCofSet& c = a.cofinite ? a : b;  // cofinite one
  return FinCofSet{detail::support_difference(f.support, c.support), false};
}

inline FinCofSet fincof_join(const FinCofSet& a, const FinCofSet& b) {
  return fincof_complement(fincof_meet(fincof_complement(a), fincof_complement(b)));
}

inline FinCofSet fincof_difference(const FinCofSet& a, const FinCofSet& b) {
  return fincof_meet(a, fincof_complement(b));
}

// Largest point mentioned by the representation, plus one; 0 for the empty
// and full sets. Every set with support bound at most n is determined by its
// behavior on [0, n).
inline long long fincof_support_bound(const FinCofSet& s) {
  return s.support.empty() ? 0 : s.support.back() + 1;
}

inline std::string format_fincof(const FinCofSet& s) {
  std::string out = s.cofinite ? "omega-{" : "{";
  for (size_t i = 0; i < s.support.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.support[i]);
  }
  return out + "}";
}

}  // namespace smallcancel
