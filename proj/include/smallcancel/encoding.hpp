#pragma once

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smallcancel/dehn.hpp"
#include "smallcancel/pieces.hpp"

namespace smallcancel {

// A finite group G, an arity n, a repetition count k, and a total table
// f : (nontrivial tuples of length n) -> G. Tuples are ranked
// lexicographically over the nontrivial elements in table order.
struct EncodingSpec {
  FactorGroup g;
  int n = 1;
  long long k = 32;
  std::vector<int> f;  // f[rank] = element index; size (|G|-1)^n
};

inline long long encoding_tuple_count(const FactorGroup& g, int n) {
  const long long m = g.order() - 1;
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m;
    if (total > 1'000'000)
      throw ResourceError("tuple domain larger than 1000000; refusing to enumerate");
  }
  return total;
}

inline EncodingSpec make_encoding_spec(FactorGroup g, int n, std::vector<int> f,
                                       long long k = 32) {
  if (g.is_cyclic()) throw CheckError("the encoded group must be finite");
  if (g.order() < 2) throw CheckError("the encoded group must have a nontrivial element");
  if (n < 1) throw CheckError("arity n must be at least 1");
  if (k < 1) throw CheckError("repetition count k must be at least 1");
  const long long tuples = encoding_tuple_count(g, n);
  if (static_cast<long long>(f.size()) != tuples)
    throw CheckError("function table has " + std::to_string(f.size()) + " entries but the domain has " +
                     std::to_string(tuples) + " tuples");
  for (int v : f)
    if (v < 0 || v >= g.order())
      throw CheckError("function value index " + std::to_string(v) + " out of range");
  return EncodingSpec{std::move(g), n, k, std::move(f)};
}

// Nontrivial elements in table order; tuple entries are element indices.
inline std::vector<int> nontrivial_elements(const FactorGroup& g) {
  std::vector<int> out;
  for (int i = 0; i < g.order(); ++i)
    if (i != g.identity()) out.push_back(i);
  return out;
}

inline std::vector<int> unrank_tuple(const EncodingSpec& s, long long rank) {
  const std::vector<int> nt = nontrivial_elements(s.g);
  const long long m = static_cast<long long>(nt.size());
  std::vector<int> tuple(static_cast<size_t>(s.n));
  for (int i = s.n - 1; i >= 0; --i) {
    tuple[static_cast<size_t>(i)] = nt[static_cast<size_t>(rank % m)];
    rank /= m;
  }
  return tuple;
}

inline long long rank_tuple(const EncodingSpec& s, const std::vector<int>& tuple) {
  const std::vector<int> nt = nontrivial_elements(s.g);
  long long rank = 0;
  for (int e : tuple) {
    auto it = std::find(nt.begin(), nt.end(), e);
    if (it == nt.end()) throw CheckError("tuple entry is not a nontrivial element");
    rank = rank * static_cast<long long>(nt.size()) + (it - nt.begin());
  }
  return rank;
}

// [g0][c][g1][c]...[g_{n-1}]: 2n-1 letters.
inline Word build_u_word(const EncodingSpec& s, const std::vector<int>& tuple) {
  if (static_cast<int>(tuple.size()) != s.n)
    throw CheckError("tuple arity mismatch");
  Word u;
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] == s.g.identity())
      throw CheckError("tuple entries must be nontrivial");
    if (i) u.push_back(Letter{0, 1});
    u.push_back(Letter{1, tuple[i]});
  }
  return u;
}

// [c^k] u [c^{k-1}] u ... [c^1] u: k + k(2n-1) = 2nk letters.
inline Word build_w_word(const EncodingSpec& s, const std::vector<int>& tuple) {
  const Word u = build_u_word(s, tuple);
  Word w;
  for (long long j = s.k; j >= 1; --j) {
    w.push_back(Letter{0, j});
    w.insert(w.end(), u.begin(), u.end());
  }
  return w;
}

// Per-tuple relators. Writing f for the function value and glast for the
// tuple's final entry, the relator is the reduction of f^-1 w, except that
// when f = glast that word is not weakly cyclically reduced and the weak
// cyclic reduction of w f^-1 is used instead. Lengths: 2nk+1 / 2nk / 2nk-1
// as f is neither / the identity / glast.
struct RelatorBuild {
  std::vector<NormalForm> per_tuple;  // aligned with tuple rank
  std::vector<NormalForm> gamma;      // deduplicated, in first-appearance order
  std::vector<std::pair<long long, long long>> duplicates;  // (earlier rank, later rank)
  long long count_f_other = 0, count_f_trivial = 0, count_f_last = 0;
};

inline RelatorBuild build_relators(const FreeProductContext& ctx, const EncodingSpec& s) {
  RelatorBuild out;
  const long long tuples = encoding_tuple_count(s.g, s.n);
  for (long long r = 0; r < tuples; ++r) {
    const std::vector<int> tuple = unrank_tuple(s, r);
    const int f = s.f[static_cast<size_t>(r)];
    const int glast = tuple.back();
    const Word w = build_w_word(s, tuple);
    NormalForm rel;
    if (f == s.g.identity()) {
      rel = normalize(ctx, w);
      ++out.count_f_trivial;
    } else if (f == glast) {
      Word wf = w;
      wf.push_back(Letter{1, s.g.inv(f)});
      rel = weakly_cyclically_reduce(ctx, normalize(ctx, wf)).reduced;
      ++out.count_f_last;
    } else {
      Word fw;
      fw.push_back(Letter{1, s.g.inv(f)});
      fw.insert(fw.end(), w.begin(), w.end());
      rel = normalize(ctx, fw);
      ++out.count_f_other;
    }
    out.per_tuple.push_back(std::move(rel));
  }
  std::map<NormalForm, long long> first_seen;
  for (long long r = 0; r < tuples; ++r) {
    const NormalForm& rel = out.per_tuple[static_cast<size_t>(r)];
    auto [it, fresh] = first_seen.emplace(rel, r);
    if (fresh)
      out.gamma.push_back(rel);
    else
      out.duplicates.emplace_back(it->second, r);
  }
  return out;
}

// The quotient presentation: <c> * G modulo the symmetrized, certified
// relator set built from the spec.
struct ExtensionGroup {
  FreeProductContext ctx;
  SymmetrizedSet relators;
  EncodingSpec spec;
  RelatorBuild build;
};

inline ExtensionGroup build_extension(EncodingSpec spec, const Rational& eta = Rational(1, 6)) {
  FreeProductContext ctx = FreeProductContext::with_cyclic(spec.g);
  RelatorBuild rb = build_relators(ctx, spec);
  SymmetrizedSet r = symmetrize(ctx, rb.gamma);
  CPrimeOutcome chk = check_cprime(ctx, r, eta);
  if (!chk.ok())
    throw CheckError("relator set fails C'(" + std::to_string(eta.numerator()) + "/" +
                     std::to_string(eta.denominator()) + "): " + chk.violation->message);
  r.eta_certificate = chk.certificate;
  return ExtensionGroup{std::move(ctx), std::move(r), std::move(spec), std::move(rb)};
}

// Checks, in the quotient: (a) distinct elements of G stay distinct; (b) c is
// neither trivial nor an element of G; (c) every tuple's w-word equals its
// function value; (d) the generators are exactly G and c (by construction).
struct Lemma24Report {
  bool embedding_ok = false, c_fresh_ok = false, encodes_ok = false, generated_ok = true;
  long long pair_checks = 0, c_checks = 0, tuple_checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return embedding_ok && c_fresh_ok && encodes_ok && generated_ok; }
};

inline Lemma24Report verify_lemma24(const ExtensionGroup& ext, DehnOptions opts = {}) {
  DehnSolver solver(ext.ctx, ext.relators, opts);
  const FactorGroup& g = ext.spec.g;
  Lemma24Report rep;
  rep.embedding_ok = true;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      if (a == b) continue;
      Word w = {Letter{1, a}, Letter{1, g.inv(b)}};
      // the two letters merge into one nontrivial letter
      if (a == g.identity()) w.erase(w.begin());
      if (b == g.identity()) w.pop_back();
      ++rep.pair_checks;
      if (solver.is_identity(w)) {
        rep.embedding_ok = false;
        rep.failures.push_back("collapsed pair: " + g.element_name(a) + ", " + g.element_name(b));
      }
    }
  rep.c_fresh_ok = true;
  for (int a = 0; a < g.order(); ++a) {
    Word w = {Letter{0, 1}};
    if (a != g.identity()) w.push_back(Letter{1, g.inv(a)});
    ++rep.c_checks;
    if (solver.is_identity(w)) {
      rep.c_fresh_ok = false;
      rep.failures.push_back("c collapsed onto " + g.element_name(a));
    }
  }
  rep.encodes_ok = true;
  const long long tuples = encoding_tuple_count(g, ext.spec.n);
  for (long long r = 0; r < tuples; ++r) {
    const std::vector<int> tuple = unrank_tuple(ext.spec, r);
    const int f = ext.spec.f[static_cast<size_t>(r)];
    Word w;
    if (f != g.identity()) w.push_back(Letter{1, g.inv(f)});
    const Word ww = build_w_word(ext.spec, tuple);
    w.insert(w.end(), ww.begin(), ww.end());
    ++rep.tuple_checks;
    if (!solver.is_identity(w)) {
      rep.encodes_ok = false;
      rep.failures.push_back("tuple rank " + std::to_string(r) + " does not encode: " +
                             format_word(ext.ctx, w));
    }
  }
  return rep;
}

// The ambient word length 2nk drives the saturation-step bound; the tighter
// doubling bound ceil(log2(2nk)) + 1 is reported alongside it.
struct GammaStepBound {
  long long j = 0;
  long long doubling = 0;
};

inline GammaStepBound gamma_step_bound(const EncodingSpec& s) {
  GammaStepBound b;
  b.j = 2LL * s.n * s.k;
  b.doubling =
      static_cast<long long>(std::bit_width(static_cast<unsigned long long>(b.j - 1))) + 1;
  return b;
}

// --- spec file format ---
//
//   group <path>        group table file, relative to the spec file
//   n <int>
//   k <int>             optional, default 32
//   f
//   a,b -> v            one line per tuple, entries and value by element name
//   ...
//   end
//
// '#' starts a comment. The f table must cover every tuple exactly once.

inline EncodingSpec parse_encoding_spec_text(const std::string& text,
                                             const std::filesystem::path& base_dir) {
  std::istringstream in(text);
  std::string line;
  std::optional<FactorGroup> g;
  int n = -1;
  long long k = 32;
  bool saw_f = false, saw_end = false;
  std::vector<int> nt;  // nontrivial elements, fixed once the f table opens
  std::vector<std::optional<int>> f;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("spec line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (saw_end) fail("content after end");
    if (key == "group") {
      std::string path;
      if (!(ls >> path)) fail("group needs a file path");
      std::filesystem::path p(path);
      if (p.is_relative()) p = base_dir / p;
      g = parse_group_file(p.string());
    } else if (key == "n") {
      if (!(ls >> n) || n < 1) fail("n needs a positive integer");
    } else if (key == "k") {
      if (!(ls >> k) || k < 1) fail("k needs a positive integer");
    } else if (key == "f") {
      if (!g) fail("f table must follow the group line");
      if (n < 0) fail("f table must follow the n line");
      saw_f = true;
      nt = nontrivial_elements(*g);
      f.assign(static_cast<size_t>(encoding_tuple_count(*g, n)), std::nullopt);
    } else if (key == "end") {
      saw_end = true;
    } else if (saw_f) {
      // "<e0,...,en-1> -> <value>"; key holds the tuple part
      std::string arrow, value;
      if (!(ls >> arrow >> value) || arrow != "->") fail("expected '<tuple> -> <value>'");
      std::string extra;
      if (ls >> extra) fail("trailing text '" + extra + "'");
      std::vector<int> tuple;
      std::istringstream ts(key);
      std::string name;
      while (std::getline(ts, name, ',')) {
        auto idx = g->element_index(name);
        if (!idx) fail("'" + name + "' is not an element");
        if (*idx == g->identity()) fail("tuple entries must be nontrivial");
        tuple.push_back(*idx);
      }
      if (static_cast<int>(tuple.size()) != n) fail("tuple arity is not n");
      auto vidx = g->element_index(value);
      if (!vidx) fail("'" + value + "' is not an element");
      long long rank = 0;
      for (int e : tuple) {
        auto it = std::find(nt.begin(), nt.end(), e);
        rank = rank * static_cast<long long>(nt.size()) + (it - nt.begin());
      }
      if (f[static_cast<size_t>(rank)]) fail("tuple listed twice");
      f[static_cast<size_t>(rank)] = *vidx;
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!g) throw ParseError("spec has no group line");
  if (n < 1) throw ParseError("spec has no n line");
  if (!saw_f) throw ParseError("spec has no f table");
  if (!saw_end) throw ParseError("spec has no end line");
  std::vector<int> table;
  for (size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) {
      std::string names;
      long long rank = static_cast<long long>(i);
      for (int pos = n - 1; pos >= 0; --pos) {
        names = g->element_name(nt[static_cast<size_t>(rank % nt.size())]) +
                (names.empty() ? "" : ",") + names;
        rank /= static_cast<long long>(nt.size());
      }
      throw CheckError("function table is not total: tuple " + names + " is missing");
    }
    table.push_back(*f[i]);
  }
  return make_encoding_spec(std::move(*g), n, std::move(table), k);
}

inline EncodingSpec parse_encoding_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_encoding_spec_text(buf.str(), std::filesystem::path(path).parent_path());
}

}  // namespace smallcancel
