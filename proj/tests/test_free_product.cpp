#include <catch2/catch_amalgamated.hpp>

#include "smallcancel/free_product.hpp"
#include "test_support.hpp"

using namespace smallcancel;
using namespace testsupport;

namespace {
FreeProductContext s3ctx() { return ctx_with(FactorGroup::symmetric_group(3)); }

Letter G(const FreeProductContext& ctx, const std::string& name) {
  return Letter{1, *ctx.factor(1).element_index(name)};
}
Letter C(long long e) { return Letter{0, e}; }
}  // namespace

TEST_CASE("normalize merges and cancels within factors", "[free_product]") {
  auto ctx = s3ctx();
  // c^2 then c^3 is one letter c^5
  NormalForm w = normalize(ctx, {C(2), C(3)});
  REQUIRE(w.letters() == Word{C(5)});
  // full cancellation
  REQUIRE(normalize(ctx, {C(2), C(-2)}).empty());
  REQUIRE(normalize(ctx, {G(ctx, "021"), G(ctx, "021")}).empty());
  // cascade: g c c^-1 g' with g' = g^-1 collapses entirely
  Letter g = G(ctx, "120"), ginv = G(ctx, "201");
  REQUIRE(normalize(ctx, {g, C(1), C(-1), ginv}).empty());
  REQUIRE(normalize(ctx, {}).empty());
}

TEST_CASE("normalize rejects identity letters with a diagnostic", "[free_product]") {
  auto ctx = s3ctx();
  REQUIRE_THROWS_AS(normalize(ctx, {C(0)}), CheckError);
  REQUIRE_THROWS_AS(normalize(ctx, {Letter{1, ctx.factor(1).identity()}}), CheckError);
  REQUIRE_THROWS_AS(normalize(ctx, {Letter{7, 1}}), CheckError);
}

TEST_CASE("normal form constructor validates alternation", "[free_product]") {
  auto ctx = s3ctx();
  REQUIRE_NOTHROW(NormalForm(ctx, {G(ctx, "120"), C(2), G(ctx, "021")}));
  REQUIRE_THROWS_AS(NormalForm(ctx, {C(1), C(2)}), CheckError);
}

TEST_CASE("normalize agrees with the letter-at-a-time reference on random words",
          "[free_product][oracle]") {
  auto ctx = s3ctx();
  std::mt19937 rng(20240817);
  for (int i = 0; i < 3000; ++i) {
    Word raw = random_word(rng, ctx, static_cast<size_t>(rng() % 30));
    REQUIRE(normalize(ctx, raw).letters() == oracle_normalize(ctx, raw));
  }
}

TEST_CASE("multiply equals normalize of the concatenation", "[free_product][oracle]") {
  auto ctx = s3ctx();
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    NormalForm u = normalize(ctx, random_word(rng, ctx, static_cast<size_t>(rng() % 16)));
    NormalForm v = normalize(ctx, random_word(rng, ctx, static_cast<size_t>(rng() % 16)));
    Word cat = u.letters();
    cat.insert(cat.end(), v.letters().begin(), v.letters().end());
    NormalForm prod = multiply(ctx, u, v);
    REQUIRE(prod.letters() == oracle_normalize(ctx, cat));
    REQUIRE(length(prod) <= length(u) + length(v));
  }
}

TEST_CASE("multiply is associative and inverts correctly", "[free_product]") {
  auto ctx = s3ctx();
  std::mt19937 rng(99);
  for (int i = 0; i < 1500; ++i) {
    NormalForm a = normalize(ctx, random_word(rng, ctx, static_cast<size_t>(rng() % 10)));
    NormalForm b = normalize(ctx, random_word(rng, ctx, static_cast<size_t>(rng() % 10)));
    NormalForm c = normalize(ctx, random_word(rng, ctx, static_cast<size_t>(rng() % 10)));
    REQUIRE(multiply(ctx, multiply(ctx, a, b), c) == multiply(ctx, a, multiply(ctx, b, c)));
    REQUIRE(multiply(ctx, a, invert(ctx, a)).empty());
    REQUIRE(multiply(ctx, invert(ctx, a), a).empty());
    REQUIRE(invert(ctx, invert(ctx, a)) == a);
  }
}

TEST_CASE("boundary merge example", "[free_product]") {
  auto ctx = s3ctx();
  // [x][c] * [c^2][y] = [x][c^3][y]
  Letter x = G(ctx, "021"), y = G(ctx, "102");
  NormalForm u(ctx, {x, C(1)});
  NormalForm v(ctx, {C(2), y});
  REQUIRE(multiply(ctx, u, v).letters() == Word{x, C(3), y});
}

TEST_CASE("semi-reduced products", "[free_product]") {
  auto ctx = s3ctx();
  // merge at the boundary: fine
  REQUIRE(is_semi_reduced(ctx, NormalForm(ctx, {C(2)}), NormalForm(ctx, {C(3)})));
  // outright cancellation: not semi-reduced
  REQUIRE_FALSE(is_semi_reduced(ctx, NormalForm(ctx, {C(2)}), NormalForm(ctx, {C(-2), G(ctx, "021")})));
  Letter g = G(ctx, "120");
  REQUIRE_FALSE(is_semi_reduced(ctx, NormalForm(ctx, {C(1), g}),
                                NormalForm(ctx, {ctx.inv(g), C(5)})));
  // empty sides are vacuously semi-reduced
  REQUIRE(is_semi_reduced(ctx, NormalForm(), NormalForm(ctx, {C(1)})));
  REQUIRE(is_semi_reduced(ctx, NormalForm(ctx, {C(1)}), NormalForm()));
}

TEST_CASE("weak cyclic reduction strips conjugating pairs", "[free_product]") {
  auto ctx = s3ctx();
  Letter g = G(ctx, "120"), h = G(ctx, "021");
  // g c h c^-1 g^-1 -> reduced [h], conjugator [g][c]
  NormalForm w(ctx, {g, C(1), h, C(-1), ctx.inv(g)});
  auto red = weakly_cyclically_reduce(ctx, w);
  REQUIRE(red.reduced.letters() == Word{h});
  REQUIRE(red.conjugator.letters() == Word{g, C(1)});
  REQUIRE(is_weakly_cyclically_reduced(ctx, red.reduced));
  // recomposition returns the input
  NormalForm back = multiply(ctx, multiply(ctx, red.conjugator, red.reduced),
                             invert(ctx, red.conjugator));
  REQUIRE(back == w);
}

TEST_CASE("weak cyclic reduction on random words recomposes", "[free_product]") {
  auto ctx = s3ctx();
  std::mt19937 rng(4242);
  for (int i = 0; i < 2000; ++i) {
    NormalForm w = normalize(ctx, random_word(rng, ctx, static_cast<size_t>(rng() % 20)));
    auto red = weakly_cyclically_reduce(ctx, w);
    REQUIRE(is_weakly_cyclically_reduced(ctx, red.reduced));
    REQUIRE(multiply(ctx, multiply(ctx, red.conjugator, red.reduced),
                     invert(ctx, red.conjugator)) == w);
    if (is_weakly_cyclically_reduced(ctx, w)) REQUIRE(red.conjugator.empty());
  }
}

TEST_CASE("cyclically reduced vs weakly cyclically reduced", "[free_product]") {
  auto ctx = s3ctx();
  Letter g = G(ctx, "120"), h = G(ctx, "021");
  // same factor at both ends but not inverse: weakly reduced, not cyclically
  NormalForm w(ctx, {g, C(1), h});
  REQUIRE(is_weakly_cyclically_reduced(ctx, w));
  REQUIRE_FALSE(is_cyclically_reduced(w));
  NormalForm v(ctx, {C(1), h});
  REQUIRE(is_cyclically_reduced(v));
  REQUIRE(is_weakly_cyclically_reduced(ctx, NormalForm(ctx, {g})));
  REQUIRE(is_weakly_cyclically_reduced(ctx, NormalForm()));
}

TEST_CASE("token syntax round trip", "[free_product]") {
  auto ctx = s3ctx();
  Word w = {G(ctx, "120"), C(-3), G(ctx, "021"), C(7)};
  std::string text = format_word(ctx, w);
  REQUIRE(text == "120@1 c^-3 021@1 c^7");
  REQUIRE(parse_word(ctx, text) == w);
  REQUIRE(parse_word(ctx, "").empty());
  REQUIRE(format_word(ctx, Word{}) == "");
}

TEST_CASE("token parse errors", "[free_product]") {
  auto ctx = s3ctx();
  REQUIRE_THROWS_AS(parse_word(ctx, "c^0"), ParseError);
  REQUIRE_THROWS_AS(parse_word(ctx, "c^x"), ParseError);
  REQUIRE_THROWS_AS(parse_word(ctx, "zzz@1"), ParseError);
  REQUIRE_THROWS_AS(parse_word(ctx, "021@9"), ParseError);
  REQUIRE_THROWS_AS(parse_word(ctx, "021@0"), ParseError);  // factor 0 is <c>
  REQUIRE_THROWS_AS(parse_word(ctx, "012@1"), ParseError);  // identity element
  REQUIRE_THROWS_AS(parse_word(ctx, "021"), ParseError);
}
