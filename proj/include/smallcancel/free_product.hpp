#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smallcancel/errors.hpp"
#include "smallcancel/factor_group.hpp"

namespace smallcancel {

// One syllable of a free product word. For a finite factor, `value` is the
// element index (never the identity); for the infinite cyclic factor it is
// the exponent (never 0). A maximal run of c's is stored as one letter.
struct Letter {
  int factor = 0;
  long long value = 0;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// The ambient free product: an ordered list of factors, at most one of which
// is infinite cyclic (so the c^k token form is unambiguous).
class FreeProductContext {
 public:
  explicit FreeProductContext(std::vector<FactorGroup> factors)
      : factors_(std::move(factors)) {
    if (factors_.empty()) throw CheckError("free product needs at least one factor");
    for (int i = 0; i < static_cast<int>(factors_.size()); ++i) {
      factors_[static_cast<size_t>(i)].set_id(i);
      if (factors_[static_cast<size_t>(i)].is_cyclic()) {
        if (cyclic_ >= 0)
          throw CheckError("free product supports at most one infinite cyclic factor");
        cyclic_ = i;
      }
    }
  }

  // The standard shape used by the encoding machinery: factor 0 = <c>,
  // factor 1 = G.
  static FreeProductContext with_cyclic(FactorGroup g) {
    std::vector<FactorGroup> fs;
    fs.push_back(FactorGroup::infinite_cyclic(0));
    fs.push_back(std::move(g));
    return FreeProductContext(std::move(fs));
  }

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const FactorGroup& factor(int i) const { return factors_.at(static_cast<size_t>(i)); }
  bool has_cyclic() const { return cyclic_ >= 0; }
  int cyclic_index() const { return cyclic_; }

  void check_letter(const Letter& l) const {
    if (l.factor < 0 || l.factor >= factor_count())
      throw CheckError("letter refers to factor " + std::to_string(l.factor) +
                       " but the free product has " + std::to_string(factor_count()) +
                       " factors");
    const FactorGroup& g = factor(l.factor);
    if (g.is_cyclic()) {
      if (l.value == 0) throw CheckError("identity letter: c^0 is not a letter");
    } else {
      if (l.value < 0 || l.value >= g.order())
        throw CheckError("letter value " + std::to_string(l.value) +
                         " out of range for factor " + std::to_string(l.factor));
      if (l.value == g.identity())
        throw CheckError("identity letter: '" + g.element_name(g.identity()) + "@" +
                         std::to_string(l.factor) + "' is not a letter");
    }
  }

  Letter inv(const Letter& l) const {
    const FactorGroup& g = factor(l.factor);
    if (g.is_cyclic()) return Letter{l.factor, -l.value};
    return Letter{l.factor, g.inv(static_cast<int>(l.value))};
  }

  // Product of two letters of the same factor; nullopt if it is the identity.
  std::optional<Letter> mul_same(const Letter& a, const Letter& b) const {
    const FactorGroup& g = factor(a.factor);
    if (g.is_cyclic()) {
      long long e = a.value + b.value;
      if (e == 0) return std::nullopt;
      return Letter{a.factor, e};
    }
    int p = g.mul(static_cast<int>(a.value), static_cast<int>(b.value));
    if (p == g.identity()) return std::nullopt;
    return Letter{a.factor, p};
  }

  bool cancels(const Letter& a, const Letter& b) const {
    return a.factor == b.factor && !mul_same(a, b).has_value();
  }

 private:
  std::vector<FactorGroup> factors_;
  int cyclic_ = -1;
};

namespace detail {
struct unchecked_t {};
inline constexpr unchecked_t unchecked{};
}  // namespace detail

// A word in normal form: valid letters, no two consecutive letters from the
// same factor. The validating constructor throws; library algorithms use the
// unchecked one only on sequences they have just proven to be normal forms.
class NormalForm {
 public:
  NormalForm() = default;

  NormalForm(const FreeProductContext& ctx, Word letters) : letters_(std::move(letters)) {
    for (size_t i = 0; i < letters_.size(); ++i) {
      ctx.check_letter(letters_[i]);
      if (i > 0 && letters_[i - 1].factor == letters_[i].factor)
        throw CheckError("not a normal form: consecutive letters at positions " +
                         std::to_string(i - 1) + "," + std::to_string(i) +
                         " lie in factor " + std::to_string(letters_[i].factor));
    }
  }

  NormalForm(detail::unchecked_t, Word letters) : letters_(std::move(letters)) {}

  const Word& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  bool operator==(const NormalForm& o) const { return letters_ == o.letters_; }
  // Lexicographic letter order; a proper prefix sorts before its extensions.
  auto operator<=>(const NormalForm& o) const {
    return std::lexicographical_compare_three_way(
        letters_.begin(), letters_.end(), o.letters_.begin(), o.letters_.end());
  }

 private:
  Word letters_;
};

// Free product length L: the number of letters.
inline long long length(const NormalForm& w) { return static_cast<long long>(w.size()); }

// Left-to-right reduction of an arbitrary letter sequence to the normal form.
// Rejects identity letters in the input; cancellation created by merging is
// of course allowed.
inline NormalForm normalize(const FreeProductContext& ctx, const Word& raw) {
  Word out;
  out.reserve(raw.size());
  for (const Letter& l : raw) {
    ctx.check_letter(l);
    if (!out.empty() && out.back().factor == l.factor) {
      auto m = ctx.mul_same(out.back(), l);
      if (m)
        out.back() = *m;
      else
        out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return NormalForm(detail::unchecked, std::move(out));
}

// Cancellation depth between u and v: the maximal s such that the last s
// letters of u cancel the first s letters of v pairwise.
inline size_t cancellation_depth(const FreeProductContext& ctx, const NormalForm& u,
                                 const NormalForm& v) {
  size_t s = 0;
  const size_t maxs = u.size() < v.size() ? u.size() : v.size();
  while (s < maxs && ctx.cancels(u[u.size() - 1 - s], v[s])) ++s;
  return s;
}

// Product of two normal forms: cancel the maximal boundary block, then merge
// the two letters either side of the cancellation if they share a factor.
// Maximality of s guarantees the merged letter is not the identity.
inline NormalForm multiply(const FreeProductContext& ctx, const NormalForm& u,
                           const NormalForm& v) {
  const size_t s = cancellation_depth(ctx, u, v);
  const size_t ku = u.size() - s;
  Word out;
  out.reserve(ku + v.size() - s);
  out.insert(out.end(), u.letters().begin(), u.letters().begin() + static_cast<long>(ku));
  size_t vstart = s;
  if (ku > 0 && vstart < v.size() && out.back().factor == v[vstart].factor) {
    auto m = ctx.mul_same(out.back(), v[vstart]);
    if (!m)
      throw Error("internal: boundary merge produced the identity past maximal cancellation");
    out.back() = *m;
    ++vstart;
  }
  out.insert(out.end(), v.letters().begin() + static_cast<long>(vstart), v.letters().end());
  return NormalForm(detail::unchecked, std::move(out));
}

inline NormalForm invert(const FreeProductContext& ctx, const NormalForm& w) {
  Word out;
  out.reserve(w.size());
  for (size_t i = w.size(); i-- > 0;) out.push_back(ctx.inv(w[i]));
  return NormalForm(detail::unchecked, std::move(out));
}

// uv is a semi-reduced product when no boundary letters cancel outright;
// a within-factor merge is fine.
inline bool is_semi_reduced(const FreeProductContext& ctx, const NormalForm& u,
                            const NormalForm& v) {
  return cancellation_depth(ctx, u, v) == 0;
}

inline bool is_weakly_cyclically_reduced(const FreeProductContext& ctx,
                                         const NormalForm& w) {
  if (w.size() <= 1) return true;
  return !ctx.cancels(w.back(), w.front());
}

inline bool is_cyclically_reduced(const NormalForm& w) {
  if (w.size() <= 1) return true;
  return w.front().factor != w.back().factor;
}

struct CyclicReduction {
  NormalForm reduced;     // weakly cyclically reduced
  NormalForm conjugator;  // input = conjugator * reduced * conjugator^-1
};

// Strip cancelling first/last letter pairs, collecting them as a conjugator.
inline CyclicReduction weakly_cyclically_reduce(const FreeProductContext& ctx,
                                                const NormalForm& w) {
  size_t lo = 0, hi = w.size();
  Word conj;
  while (hi - lo >= 2 && ctx.cancels(w[hi - 1], w[lo])) {
    conj.push_back(w[lo]);
    ++lo;
    --hi;
  }
  Word mid(w.letters().begin() + static_cast<long>(lo),
           w.letters().begin() + static_cast<long>(hi));
  return CyclicReduction{NormalForm(detail::unchecked, std::move(mid)),
                         NormalForm(detail::unchecked, std::move(conj))};
}

// --- token syntax ---
//
// A word is whitespace-separated tokens; "c^<int>" is a letter of the
// infinite cyclic factor, "<element-name>@<factor-id>" a letter of a finite
// factor. The empty string is the identity.

inline std::string format_letter(const FreeProductContext& ctx, const Letter& l) {
  if (ctx.factor(l.factor).is_cyclic()) return "c^" + std::to_string(l.value);
  return ctx.factor(l.factor).element_name(static_cast<int>(l.value)) + "@" +
         std::to_string(l.factor);
}

inline std::string format_word(const FreeProductContext& ctx, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_letter(ctx, w[i]);
  }
  return out;
}

inline std::string format_word(const FreeProductContext& ctx, const NormalForm& w) {
  return format_word(ctx, w.letters());
}

inline Letter parse_letter(const FreeProductContext& ctx, const std::string& tok) {
  if (tok.rfind("c^", 0) == 0) {
    if (!ctx.has_cyclic())
      throw ParseError("token '" + tok + "': this free product has no infinite cyclic factor");
    long long e = 0;
    try {
      size_t used = 0;
      e = std::stoll(tok.substr(2), &used);
      if (used != tok.size() - 2) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw ParseError("token '" + tok + "': expected c^<integer>");
    }
    if (e == 0) throw ParseError("token '" + tok + "': c^0 is the identity, not a letter");
    return Letter{ctx.cyclic_index(), e};
  }
  auto at = tok.rfind('@');
  if (at == std::string::npos || at == 0 || at + 1 == tok.size())
    throw ParseError("token '" + tok + "': expected <element-name>@<factor-id> or c^<int>");
  int fid = 0;
  try {
    size_t used = 0;
    fid = std::stoi(tok.substr(at + 1), &used);
    if (used != tok.size() - at - 1) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw ParseError("token '" + tok + "': factor id is not an integer");
  }
  if (fid < 0 || fid >= ctx.factor_count())
    throw ParseError("token '" + tok + "': factor id " + std::to_string(fid) +
                     " out of range");
  const FactorGroup& g = ctx.factor(fid);
  if (g.is_cyclic())
    throw ParseError("token '" + tok + "': factor " + std::to_string(fid) +
                     " is the cyclic factor; write c^<int>");
  const std::string name = tok.substr(0, at);
  auto idx = g.element_index(name);
  if (!idx)
    throw ParseError("token '" + tok + "': '" + name + "' is not an element of factor " +
                     std::to_string(fid));
  if (*idx == g.identity())
    throw ParseError("token '" + tok + "': the identity element is not a letter");
  return Letter{fid, *idx};
}

inline Word parse_word(const FreeProductContext& ctx, const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(parse_letter(ctx, tok));
  return out;
}

}  // namespace smallcancel
