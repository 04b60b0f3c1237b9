#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "smallcancel/symmetrized.hpp"

namespace smallcancel {

// Exact maximum piece data for a symmetrized set. A piece is a word u that is
// a semi-reduced prefix of two distinct relators; the prefix may end inside a
// letter (u's last letter multiplied by a remainder in the same factor gives
// the relator's letter), and such a partially matched letter counts 1.
struct PieceReport {
  long long max_piece_length = 0;  // 0 when no nonempty piece exists
  Word witness_piece;
  NormalForm witness_relator1, witness_relator2;  // distinct, both prefixed by the piece
  long long min_relator_length = 0;
  // Per relator (aligned with R.relators): the longest piece that is a
  // semi-reduced prefix of it.
  std::vector<long long> max_piece_prefix;
};

namespace detail {

// For two distinct relators sharing exactly q leading letters, the longest
// common semi-reduced prefix has q letters, plus one more when both have a
// letter at position q and those letters lie in the same factor (any
// nonidentity element of that factor can head both remainders).
struct PieceScan {
  const std::vector<NormalForm>& words;  // sorted, deduplicated
  std::vector<long long>& prefix_max;    // per-word running maxima
  long long best = 0;
  size_t best_i = 0, best_j = 0;  // indices of the witness pair
  long long best_q = 0;           // shared full letters in the witness
  bool best_partial = false;      // witness ends with a partially shared letter
  bool any_pair = false;

  void offer(long long value, size_t i, size_t j, long long q, bool partial) {
    any_pair = true;
    if (value > best) {
      best = value;
      best_i = i;
      best_j = j;
      best_q = q;
      best_partial = partial;
    }
  }

  // Words in [lo,hi) share their first `depth` letters.
  void run(size_t lo, size_t hi, long long depth) {
    if (hi - lo < 2) return;
    size_t start = lo;
    const bool exhausted = words[lo].size() == static_cast<size_t>(depth);
    if (exhausted) {
      // words[lo] is a proper letter-prefix of every longer word here
      prefix_max[lo] = std::max(prefix_max[lo], depth);
      for (size_t t = lo + 1; t < hi; ++t) prefix_max[t] = std::max(prefix_max[t], depth);
      offer(depth, lo, lo + 1, depth, false);
      ++start;
    }
    // contiguous runs with equal letter at `depth`; run keys ascend in
    // (factor, value) order, so equal-factor runs are adjacent
    std::vector<size_t> cut = {start};
    for (size_t t = start + 1; t < hi; ++t)
      if (!(words[t][static_cast<size_t>(depth)] == words[cut.back()][static_cast<size_t>(depth)]))
        cut.push_back(t);
    cut.push_back(hi);
    const size_t runs = cut.size() - 1;
    for (size_t r = 0; r + 1 < cut.size(); ++r) {
      const Letter key = words[cut[r]][static_cast<size_t>(depth)];
      bool factor_mate =
          (r > 0 && words[cut[r - 1]][static_cast<size_t>(depth)].factor == key.factor) ||
          (r + 2 < cut.size() && words[cut[r + 1]][static_cast<size_t>(depth)].factor == key.factor);
      long long contrib = -1;
      if (factor_mate)
        contrib = depth + 1;
      else if (runs > 1 || exhausted)
        contrib = depth;
      if (contrib >= 0) {
        for (size_t t = cut[r]; t < cut[r + 1]; ++t)
          prefix_max[t] = std::max(prefix_max[t], contrib);
        if (factor_mate) {
          size_t mate = (r > 0 && words[cut[r - 1]][static_cast<size_t>(depth)].factor == key.factor)
                            ? cut[r - 1]
                            : cut[r + 1];
          offer(depth + 1, std::min(cut[r], mate), std::max(cut[r], mate), depth, true);
        } else if (runs > 1) {
          size_t other = r > 0 ? cut[r - 1] : cut[r + 1];
          offer(depth, std::min(cut[r], other), std::max(cut[r], other), depth, false);
        }
      }
      run(cut[r], cut[r + 1], depth + 1);
    }
  }
};

inline Word witness_piece_word(const PieceScan& scan) {
  const NormalForm& w1 = scan.words[scan.best_i];
  Word u(w1.letters().begin(), w1.letters().begin() + static_cast<long>(scan.best_q));
  if (scan.best_partial) u.push_back(w1[static_cast<size_t>(scan.best_q)]);
  return u;
}

}  // namespace detail

// Exact piece maxima over all relator pairs, by recursive partition of the
// sorted set on successive letters (linear in total letter count).
inline PieceReport enumerate_pieces(const FreeProductContext& ctx, const SymmetrizedSet& r) {
  (void)ctx;
  PieceReport rep;
  rep.max_piece_prefix.assign(r.relators.size(), 0);
  if (r.relators.empty()) return rep;
  rep.min_relator_length = length(r.relators.front());
  for (const NormalForm& w : r.relators)
    rep.min_relator_length = std::min(rep.min_relator_length, length(w));
  detail::PieceScan scan{r.relators, rep.max_piece_prefix};
  scan.run(0, r.relators.size(), 0);
  rep.max_piece_length = scan.best;
  if (scan.any_pair && scan.best > 0) {
    rep.witness_piece = detail::witness_piece_word(scan);
    rep.witness_relator1 = r.relators[scan.best_i];
    rep.witness_relator2 = r.relators[scan.best_j];
  }
  return rep;
}

struct CPrimeViolation {
  enum class Kind { short_relator, long_piece };
  Kind kind;
  NormalForm relator;
  Word piece;          // empty for short_relator
  NormalForm partner;  // second relator witnessing the piece
  std::string message;
};

struct CPrimeOutcome {
  std::optional<EtaCertificate> certificate;
  std::optional<CPrimeViolation> violation;
  bool ok() const { return certificate.has_value(); }
};

// Metric small cancellation over the free product length, in exact rational
// arithmetic: (1) L(w) > 1/eta for every relator; (2) L(u) < eta*L(w) for
// every piece u that is a semi-reduced prefix of the relator w.
inline CPrimeOutcome check_cprime(const FreeProductContext& ctx, const SymmetrizedSet& r,
                                  const Rational& eta) {
  if (eta <= Rational(0)) throw CheckError("eta must be positive");
  CPrimeOutcome out;
  if (r.relators.empty()) throw CheckError("cannot certify an empty relator set");
  PieceReport rep = enumerate_pieces(ctx, r);
  const long long num = eta.numerator(), den = eta.denominator();
  for (size_t i = 0; i < r.relators.size(); ++i) {
    const NormalForm& w = r.relators[i];
    // (1)  L(w) > 1/eta  <=>  L(w)*num > den
    if (!(length(w) * num > den)) {
      CPrimeViolation v{CPrimeViolation::Kind::short_relator, w, {}, {}, ""};
      v.message = "relator '" + format_word(ctx, w) + "' has length " +
                  std::to_string(length(w)) + ", not greater than 1/eta";
      out.violation = std::move(v);
      return out;
    }
  }
  for (size_t i = 0; i < r.relators.size(); ++i) {
    const NormalForm& w = r.relators[i];
    // (2)  P(w) < eta*L(w)  <=>  P(w)*den < L(w)*num
    if (!(rep.max_piece_prefix[i] * den < length(w) * num)) {
      // rebuild a concrete piece of this length prefixing w
      CPrimeViolation v{CPrimeViolation::Kind::long_piece, w, {}, {}, ""};
      for (size_t j = 0; j < r.relators.size() && v.piece.empty(); ++j) {
        if (j == i) continue;
        const NormalForm& o = r.relators[j];
        size_t q = 0;
        while (q < w.size() && q < o.size() && w[q] == o[q]) ++q;
        bool partial = q < w.size() && q < o.size() && w[q].factor == o[q].factor;
        long long p = static_cast<long long>(q) + (partial ? 1 : 0);
        if (p == rep.max_piece_prefix[i]) {
          v.piece.assign(w.letters().begin(), w.letters().begin() + static_cast<long>(q));
          if (partial) v.piece.push_back(w[q]);
          v.partner = o;
        }
      }
      v.message = "piece '" + format_word(ctx, v.piece) + "' of length " +
                  std::to_string(rep.max_piece_prefix[i]) + " is not shorter than eta * " +
                  std::to_string(length(w)) + " for relator '" + format_word(ctx, w) + "'";
      out.violation = std::move(v);
      return out;
    }
  }
  EtaCertificate cert;
  cert.eta = eta;
  cert.min_relator_length = rep.min_relator_length;
  cert.max_piece_length = rep.max_piece_length;
  cert.max_piece_prefix = rep.max_piece_prefix;
  out.certificate = std::move(cert);
  return out;
}

// Symmetrize, check, and attach the certificate on success.
inline SymmetrizedSet symmetrize_and_certify(const FreeProductContext& ctx,
                                             const std::vector<NormalForm>& gamma,
                                             const Rational& eta) {
  SymmetrizedSet r = symmetrize(ctx, gamma);
  CPrimeOutcome out = check_cprime(ctx, r, eta);
  if (!out.ok())
    throw CheckError("C'(" + std::to_string(eta.numerator()) + "/" +
                     std::to_string(eta.denominator()) +
                     ") violation: " + out.violation->message);
  r.eta_certificate = out.certificate;
  return r;
}

}  // namespace smallcancel
