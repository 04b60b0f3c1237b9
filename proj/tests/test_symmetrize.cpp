#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "smallcancel/symmetrized.hpp"
#include "test_support.hpp"

using namespace smallcancel;
using namespace testsupport;

namespace {

// Reference closure: every raw rotation of the letter list, merged back into
// a normal form, kept when weakly cyclically reduced; then inverses of all.
std::set<NormalForm> oracle_symmetrize(const FreeProductContext& ctx,
                                       const std::vector<NormalForm>& gamma) {
  std::set<NormalForm> out;
  for (const NormalForm& g : gamma) {
    for (const NormalForm& base : {g, invert(ctx, g)}) {
      const Word& ls = base.letters();
      for (size_t i = 0; i < ls.size(); ++i) {
        Word rot(ls.begin() + static_cast<long>(i), ls.end());
        rot.insert(rot.end(), ls.begin(), ls.begin() + static_cast<long>(i));
        NormalForm nf = normalize(ctx, rot);
        if (is_weakly_cyclically_reduced(ctx, nf)) out.insert(nf);
      }
    }
  }
  return out;
}

std::set<NormalForm> as_set(const SymmetrizedSet& r) {
  return std::set<NormalForm>(r.relators.begin(), r.relators.end());
}

}  // namespace

TEST_CASE("symmetrize one-letter and two-letter words", "[symmetrize]") {
  auto ctx = ctx_with(FactorGroup::symmetric_group(3));
  Letter g{1, *ctx.factor(1).element_index("120")};
  Letter c1{0, 1};

  // [c^3] -> itself and its inverse
  auto r1 = symmetrize(ctx, {NormalForm(ctx, {Letter{0, 3}})});
  REQUIRE(as_set(r1) == std::set<NormalForm>{NormalForm(ctx, {Letter{0, 3}}),
                                             NormalForm(ctx, {Letter{0, -3}})});

  // [g][c] -> 4 words: both rotations and both rotations of the inverse
  auto r2 = symmetrize(ctx, {NormalForm(ctx, {g, c1})});
  std::set<NormalForm> expect{
      NormalForm(ctx, {g, c1}), NormalForm(ctx, {c1, g}),
      NormalForm(ctx, {Letter{0, -1}, ctx.inv(g)}), NormalForm(ctx, {ctx.inv(g), Letter{0, -1}})};
  REQUIRE(as_set(r2) == expect);
}

TEST_CASE("symmetrize glues wrap-around same-factor letters", "[symmetrize]") {
  auto ctx = ctx_with(FactorGroup::symmetric_group(3));
  Letter g{1, *ctx.factor(1).element_index("120")};
  // [c^2][g][c^3]: weakly cyclically reduced but not cyclically reduced
  NormalForm w(ctx, {Letter{0, 2}, g, Letter{0, 3}});
  auto r = symmetrize(ctx, {w});
  std::set<NormalForm> expect{
      w,
      NormalForm(ctx, {Letter{0, 5}, g}),
      NormalForm(ctx, {g, Letter{0, 5}}),
      NormalForm(ctx, {Letter{0, -3}, ctx.inv(g), Letter{0, -2}}),
      NormalForm(ctx, {Letter{0, -5}, ctx.inv(g)}),
      NormalForm(ctx, {ctx.inv(g), Letter{0, -5}})};
  REQUIRE(as_set(r) == expect);
  REQUIRE(as_set(r) == oracle_symmetrize(ctx, {w}));
}

TEST_CASE("symmetrize rejects bad input", "[symmetrize]") {
  auto ctx = ctx_with(FactorGroup::symmetric_group(3));
  Letter g{1, *ctx.factor(1).element_index("120")};
  REQUIRE_THROWS_AS(symmetrize(ctx, {NormalForm()}), CheckError);
  // [c][g][c^-1] is not weakly cyclically reduced
  REQUIRE_THROWS_AS(symmetrize(ctx, {NormalForm(ctx, {Letter{0, 1}, g, Letter{0, -1}})}),
                    CheckError);
}

TEST_CASE("symmetrize agrees with the rotation oracle on random words",
          "[symmetrize][oracle]") {
  auto ctx = ctx_with(FactorGroup::symmetric_group(3));
  std::mt19937 rng(1113);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<NormalForm> gamma;
    for (int j = 0; j < 1 + static_cast<int>(rng() % 3); ++j) {
      NormalForm w = normalize(ctx, random_word(rng, ctx, 1 + rng() % 8, 3));
      NormalForm red = weakly_cyclically_reduce(ctx, w).reduced;
      if (!red.empty()) gamma.push_back(red);
    }
    if (gamma.empty()) continue;
    REQUIRE(as_set(symmetrize(ctx, gamma)) == oracle_symmetrize(ctx, gamma));
  }
}

TEST_CASE("symmetrize is a closure operator", "[symmetrize]") {
  auto ctx = ctx_with(FactorGroup::symmetric_group(3));
  std::mt19937 rng(88);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<NormalForm> gamma;
    for (int j = 0; j < 1 + static_cast<int>(rng() % 2); ++j) {
      NormalForm red =
          weakly_cyclically_reduce(ctx, normalize(ctx, random_word(rng, ctx, 1 + rng() % 10, 4)))
              .reduced;
      if (!red.empty()) gamma.push_back(red);
    }
    if (gamma.empty()) continue;
    SymmetrizedSet r = symmetrize(ctx, gamma);
    // extensive
    for (const NormalForm& g : gamma) REQUIRE(r.contains(g));
    // idempotent
    SymmetrizedSet rr = symmetrize(ctx, r.relators);
    REQUIRE(rr.relators == r.relators);
    // every member weakly cyclically reduced, no duplicates, sorted
    for (size_t i = 0; i < r.relators.size(); ++i) {
      REQUIRE(is_weakly_cyclically_reduced(ctx, r.relators[i]));
      if (i) REQUIRE(r.relators[i - 1] < r.relators[i]);
    }
    // closed under inversion
    for (const NormalForm& w : r.relators) REQUIRE(r.contains(invert(ctx, w)));
  }
}
