#include <doctest.h>

#include <set>

#include "freetwist/barcx.hpp"
#include "freetwist/error.hpp"
#include "oracles.hpp"

using namespace freetwist;
using namespace freetwist::amod;

namespace {
AModule R(std::size_t k) { return standard(StandardModuleKind::right(k)); }
AModule L(std::size_t k) { return standard(StandardModuleKind::left(k)); }
} // namespace

TEST_CASE("figure values against the definitional oracle") {
    CHECK(barcx::bar_rank(R(2), L(3), 3) == 4);
    CHECK(oracle::bar_rank(R(2), L(3), 3) == 4);
    for (auto [k, j, n] : {std::tuple{3, 3, 4}, {3, 4, 4}, {3, 4, 5}}) {
        const std::size_t got = barcx::bar_rank(R(k), L(j), n);
        CHECK(got == oracle::bar_rank(R(k), L(j), n));
        CHECK(got >= 8);
    }
}

TEST_CASE("bar complex layout") {
    const auto bc = barcx::build_bar(R(2), L(3), 3);
    CHECK(bc.total_dim() == 12);
    CHECK(bc.index(2, 1, 1) == 11);
    CHECK((bc.differential * bc.differential).is_zero());
    CHECK(oracle::dense(bc.differential) == oracle::bar_differential(R(2), L(3), 3));
}

TEST_CASE("bar rank agrees with the oracle on random module pairs") {
    oracle::Rng rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = oracle::random_module(rng, Side::Right, 4, 4);
        const auto n = oracle::random_module(rng, Side::Left, 4, 4);
        const std::size_t len = 1 + rng() % 4;
        const auto bc = barcx::build_bar(m, n, len);
        REQUIRE(oracle::is_zero(oracle::multiply(oracle::dense(bc.differential), oracle::dense(bc.differential))));
        CHECK(barcx::bar_rank(m, n, len) == oracle::bar_rank(m, n, len));
    }
}

TEST_CASE("bar complex input errors") {
    CHECK_THROWS_AS(barcx::build_bar(L(2), L(3), 2), InvalidInput);
    CHECK_THROWS_AS(barcx::build_bar(R(2), R(3), 2), InvalidInput);
    CHECK_THROWS_AS(barcx::build_bar(R(2), L(3), 0), InvalidInput);
    AModule bad(Side::Right, 2);
    bad.set_action(1, F2Matrix{{1, 0}, {0, 0}});
    CHECK_THROWS_AS(barcx::build_bar(bad, L(3), 2), ValidationFailure);
}

TEST_CASE("minimal module enumeration") {
    const auto specs = barcx::enumerate_minimal(8, 2, 6);
    CHECK(specs.size() == 293);
    std::set<std::pair<std::size_t, std::vector<std::size_t>>> seen;
    for (const auto& s : specs) {
        CHECK(s.dim() >= 1);
        CHECK(s.dim() <= 8);
        CHECK(seen.insert({s.trivial, s.orders}).second);
        CHECK(classify(s.build(Side::Right)) == s.barcode());
    }
    CHECK(barcx::enumerate_minimal(2, 2, 6).size() == 7); // Z2, Z2+Z2, R_2..R_6
}

TEST_CASE("small sweep has no counterexamples") {
    barcx::SweepBounds b;
    b.max_dim = 4;
    b.max_n = 4;
    b.guard_fraction = 0.5;
    const auto rep = barcx::inequality_sweep(b);
    CHECK(rep.ok());
    CHECK(rep.cases > 0);
    CHECK(rep.guard_cases > 0);
    CHECK(rep.strengthened_cases > 0);
}
