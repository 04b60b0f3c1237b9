#include <catch2/catch_amalgamated.hpp>

#include "smallcancel/dehn.hpp"
#include "test_support.hpp"

using namespace smallcancel;
using namespace testsupport;

namespace {

// [c^1][a][c^2][a]...[c^7][a] over <c> * Z/2: length 14, max piece 2 (a shared
// [a] plus a partial power), so C'(1/6) holds with room to spare.
NormalForm ladder_word(const FreeProductContext& ctx, int m) {
  Word w;
  for (int j = 1; j <= m; ++j) {
    w.push_back(Letter{0, j});
    w.push_back(Letter{1, 1});
  }
  return NormalForm(ctx, w);
}

struct Instance {
  FreeProductContext ctx;
  SymmetrizedSet r;
};

Instance ladder_instance() {
  FreeProductContext ctx = ctx_with(FactorGroup::cyclic_group(2));
  SymmetrizedSet r = symmetrize_and_certify(ctx, {ladder_word(ctx, 7)}, Rational(1, 6));
  return Instance{std::move(ctx), std::move(r)};
}

}  // namespace

TEST_CASE("solver refuses uncertified or weakly certified sets", "[dehn]") {
  auto ctx = ctx_with(FactorGroup::cyclic_group(2));
  SymmetrizedSet bare = symmetrize(ctx, {ladder_word(ctx, 7)});
  REQUIRE_FALSE(bare.eta_certificate.has_value());
  REQUIRE_THROWS_AS(DehnSolver(ctx, bare), CheckError);
  // a 1/5 certificate holds here but is too weak to justify rewriting
  SymmetrizedSet weak = symmetrize_and_certify(ctx, {ladder_word(ctx, 7)}, Rational(1, 5));
  REQUIRE_THROWS_AS(DehnSolver(ctx, weak), CheckError);
}

TEST_CASE("every relator and relator power reduces to the identity", "[dehn]") {
  Instance inst = ladder_instance();
  DehnSolver solver(inst.ctx, inst.r);
  for (const NormalForm& rel : inst.r.relators) {
    REQUIRE(solver.reduce(rel).empty());
    REQUIRE(solver.is_identity(rel));
  }
  NormalForm g = ladder_word(inst.ctx, 7);
  NormalForm gg = multiply(inst.ctx, g, g);
  REQUIRE(solver.is_identity(gg));
  REQUIRE(solver.reduce(gg).empty());
}

TEST_CASE("short nonidentity words stay nonidentity", "[dehn][oracle]") {
  Instance inst = ladder_instance();
  DehnSolver solver(inst.ctx, inst.r);
  REQUIRE(solver.is_identity(NormalForm()));
  // a match needs more than 7 of a relator's 14 letters, so any nonempty
  // normal form of at most 6 letters is nontrivial in the quotient; the
  // nonempty normal form is the oracle here
  std::mt19937 rng(777);
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    NormalForm w = normalize(inst.ctx, random_word(rng, inst.ctx, rng() % 7, 8));
    if (w.empty()) continue;
    REQUIRE(length(w) <= 6);
    REQUIRE_FALSE(solver.is_identity(w));
    ++checked;
  }
  REQUIRE(checked > 1500);
  // factor embedding at the letter level
  REQUIRE_FALSE(solver.is_identity(NormalForm(inst.ctx, {Letter{1, 1}})));
  REQUIRE_FALSE(solver.is_identity(NormalForm(inst.ctx, {Letter{0, 5}})));
}

TEST_CASE("conjugated relator products are identities", "[dehn]") {
  Instance inst = ladder_instance();
  DehnSolver solver(inst.ctx, inst.r);
  std::mt19937 rng(2024);
  for (int t = 0; t < 150; ++t) {
    NormalForm p;
    int factors = 1 + static_cast<int>(rng() % 3);
    for (int f = 0; f < factors; ++f) {
      const NormalForm& rel = inst.r.relators[rng() % inst.r.relators.size()];
      NormalForm v = normalize(inst.ctx, random_word(rng, inst.ctx, rng() % 5, 9));
      NormalForm conj = multiply(inst.ctx, multiply(inst.ctx, v, rel), invert(inst.ctx, v));
      p = multiply(inst.ctx, p, conj);
    }
    INFO("trial " << t);
    REQUIRE(solver.is_identity(p));
    REQUIRE(solver.reduce(p).empty());
  }
}

TEST_CASE("conjugates and intra-letter rotations of a relator are identities", "[dehn]") {
  Instance inst = ladder_instance();
  DehnSolver solver(inst.ctx, inst.r);
  NormalForm g = ladder_word(inst.ctx, 7);
  for (int p = 1; p < 7; ++p) {
    // cut the cyclic word inside the c^7 letter
    Word w;
    w.push_back(Letter{0, 7 - p});
    w.push_back(Letter{1, 1});
    for (int j = 1; j <= 6; ++j) {
      w.push_back(Letter{0, j});
      w.push_back(Letter{1, 1});
    }
    w.push_back(Letter{0, p});
    NormalForm cut(inst.ctx, w);
    REQUIRE(is_weakly_cyclically_reduced(inst.ctx, cut));
    REQUIRE(solver.is_identity(cut));
  }
  for (long long e = -3; e <= 3; ++e) {
    if (e == 0) continue;
    Word conj = {Letter{0, e}};
    NormalForm w = multiply(inst.ctx, multiply(inst.ctx, NormalForm(inst.ctx, conj), g),
                            invert(inst.ctx, NormalForm(inst.ctx, conj)));
    REQUIRE(solver.is_identity(w));
  }
}

TEST_CASE("partial boundary matching fires and preserves the quotient class", "[dehn]") {
  Instance inst = ladder_instance();
  DehnSolver solver(inst.ctx, inst.r);
  // [c^6] [a][c^2][a][c^3][a][c^4][a] [c^9]: the first letter carries an extra
  // c^5 and the last letter extends the relator's c^5 by c^4
  Word raw = {Letter{0, 6}, Letter{1, 1}, Letter{0, 2}, Letter{1, 1}, Letter{0, 3},
              Letter{1, 1}, Letter{0, 4}, Letter{1, 1}, Letter{0, 9}};
  NormalForm w(inst.ctx, raw);
  auto step = solver.find_step(w);
  REQUIRE(step.has_value());
  REQUIRE(step->pos == 0);
  REQUIRE(step->partial_start);
  REQUIRE(step->partial_end);
  REQUIRE(step->s_len == 9);
  REQUIRE(length(step->result) < length(w));
  // the rewrite must not change the element of the quotient
  REQUIRE(solver.is_identity(multiply(inst.ctx, w, invert(inst.ctx, step->result))));
}

TEST_CASE("reduce is deterministic, never grows, and is a one-call fixpoint", "[dehn]") {
  Instance inst = ladder_instance();
  DehnSolver solver(inst.ctx, inst.r);
  std::mt19937 rng(606);
  for (int t = 0; t < 80; ++t) {
    NormalForm w = normalize(inst.ctx, random_word(rng, inst.ctx, rng() % 20, 9));
    // splice a relator segment in to make matches likely
    const NormalForm& rel = inst.r.relators[rng() % inst.r.relators.size()];
    w = multiply(inst.ctx, w, rel);
    NormalForm once = solver.reduce(w);
    REQUIRE(length(once) <= length(w));
    REQUIRE(solver.reduce(w) == once);       // deterministic
    REQUIRE(solver.reduce(once) == once);    // fixpoint in one call
    REQUIRE(solver.is_identity(multiply(inst.ctx, w, invert(inst.ctx, once))));
  }
}

TEST_CASE("resource guards trigger", "[dehn]") {
  Instance inst = ladder_instance();
  NormalForm g = ladder_word(inst.ctx, 7);
  NormalForm gg = multiply(inst.ctx, g, g);
  DehnSolver capped(inst.ctx, inst.r, DehnOptions{1, 1'000'000});
  REQUIRE_THROWS_AS(capped.reduce(gg), ResourceError);
  DehnSolver tiny(inst.ctx, inst.r, DehnOptions{1'000'000, 10});
  REQUIRE_THROWS_AS(tiny.reduce(gg), ResourceError);
  REQUIRE_THROWS_AS(tiny.is_identity(gg), ResourceError);
}
