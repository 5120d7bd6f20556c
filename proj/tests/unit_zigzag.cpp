#include <doctest.h>

#include <string>

#include "freetwist/barcx.hpp"
#include "freetwist/error.hpp"
#include "freetwist/zigzag.hpp"
#include "oracles.hpp"

using namespace freetwist;
using namespace freetwist::zigzag;

namespace {
std::string error_of(const std::string& text) {
    try {
        parse_sphere(text);
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}
} // namespace

TEST_CASE("word grammar") {
    const auto s = parse_sphere("t2 t3^2 t2^-1 @1");
    CHECK(s.base == 1);
    REQUIRE(s.word.letters.size() == 3);
    CHECK(s.word.letters[1] == std::pair<std::size_t, int>{3, 2});
    CHECK(s.word.letters[2] == std::pair<std::size_t, int>{2, -1});
    CHECK(s.to_string() == "t2 t3^2 t2^-1 @1");
    CHECK(parse_sphere("@2").word.empty());
    CHECK(parse_word("").empty());
    CHECK(parse_word("  t1   t1^+3 ").reduced().to_string() == "t1^4");

    CHECK(error_of("t2 x3 @1").find("'x3' at position 4") != std::string::npos);
    CHECK(error_of("t2 t3^0 @1").find("'t3^0' at position 4") != std::string::npos);
    CHECK(error_of("t2 t3").find("lacks a base") != std::string::npos);
    CHECK(error_of("t2 @1 @2").find("second '@'") != std::string::npos);
    CHECK(error_of("t2 @1 2").find("single base") != std::string::npos);
    CHECK(error_of("t0 @1").find("'t0'") != std::string::npos);
    CHECK_THROWS_AS(parse_word("t1 @1"), InvalidInput);
}

TEST_CASE("word algebra") {
    const auto w = parse_word("t1 t2^2 t1^-1");
    CHECK((w * w.inverse()).empty());
    CHECK(w.length() == 4);
    CHECK(parse_word("t1 t1^-1 t2").reduced() == parse_word("t2"));
    const SphereSpec s = parse_sphere("t1 @2");
    CHECK(sphere_twist_word(s, 3).to_string() == "t1 t2^3 t1^-1");
    CHECK(sphere_twist_word(parse_sphere("@2"), -1).to_string() == "t2^-1");
    CHECK_THROWS_AS(check_word(parse_word("t4"), 3), InvalidInput);
}

TEST_CASE("spheres and fingerprints") {
    const auto c = zigzag::zigzag(3);
    CHECK(rank_of(*c) == 3);
    CHECK(fingerprint(sphere(c, parse_sphere("@2"))) == std::vector<std::size_t>{1, 2, 1});
    const auto x = sphere(c, parse_sphere("t2 t3^2 t2^2 t3^2 t2 @1"));
    CHECK(tw::hf(tw::TwObject::plain(c, 0), x) == 4);
    CHECK(tw::hf(x, x) == 2);
    CHECK_THROWS_AS(sphere(c, parse_sphere("@4")), InvalidInput);
    CHECK_THROWS_AS(zigzag::zigzag(0), InvalidInput);

    // A sphere and its twist along itself agree up to quasi-isomorphism.
    const SphereSpec s = parse_sphere("t1 t2 @1");
    const auto y = sphere(c, s);
    const auto ty = apply_word(sphere_twist_word(s, 1), y);
    CHECK(fingerprint(ty) == fingerprint(y));
    CHECK(tw::hf(ty, y) == 2);
}

TEST_CASE("extracted modules are valid and feed the bar complex") {
    oracle::Rng rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + rng() % 3;
        const auto c = zigzag::zigzag(m);
        const auto x = sphere(c, oracle::random_sphere(rng, m, 4));
        const std::size_t l = 1 + rng() % m;
        const std::size_t j = 1 + rng() % m;
        const auto mr = hom_module_right(l, x);
        const auto ml = hom_module_left(tw::TwObject::plain(c, j - 1), l);
        CHECK(mr.side == amod::Side::Right);
        CHECK(ml.side == amod::Side::Left);
        CHECK(amod::is_valid(mr));
        CHECK(amod::is_valid(ml));
        CHECK(ungraded_cohomology_rank(mr.action(1)) == tw::hf(tw::TwObject::plain(c, l - 1), x));
        if (mr.dim > 0 && ml.dim > 0) {
            const std::size_t n = 1 + rng() % 4;
            tw::TwObject t = x;
            for (std::size_t i = 0; i < n; ++i) t = tw::reduce(tw::twist(l - 1, t));
            const auto pj = tw::TwObject::plain(c, j - 1);
            CHECK(tw::hf(t, pj) + tw::hf(x, pj) >= barcx::bar_rank(mr, ml, n));
        }
    }
}
