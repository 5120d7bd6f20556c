#include <doctest.h>

#include "freetwist/amod.hpp"
#include "freetwist/error.hpp"
#include "oracles.hpp"

using namespace freetwist;
using namespace freetwist::amod;

TEST_CASE("standard modules") {
    CHECK(is_valid(standard(StandardModuleKind::trivial())));
    for (std::size_t k = 1; k <= 8; ++k) {
        const auto r = standard(StandardModuleKind::right(k));
        const auto l = standard(StandardModuleKind::left(k));
        CHECK(r.side == Side::Right);
        CHECK(l.side == Side::Left);
        CHECK(r.dim == 2);
        CHECK(r.order() == k);
        CHECK(is_valid(r));
        CHECK(is_valid(l));
    }
    CHECK_THROWS_AS(standard(StandardModuleKind::right(0)), InvalidInput);
}

TEST_CASE("classification of the standard pieces") {
    CHECK(classify(standard(StandardModuleKind::trivial())) == Barcode{1, {}});
    CHECK(classify(standard(StandardModuleKind::right(1))) == Barcode{0, {}});
    for (std::size_t k = 2; k <= 8; ++k) {
        CHECK(classify(standard(StandardModuleKind::right(k))) == Barcode{0, {k - 1}});
        CHECK(classify(standard(StandardModuleKind::left(k))) == Barcode{0, {k - 1}});
    }
    CHECK(classify(AModule(Side::Right, 0)) == Barcode{});
}

TEST_CASE("validation reports the failing relation") {
    AModule bad(Side::Right, 2);
    bad.set_action(1, F2Matrix{{1, 0}, {0, 0}});
    const auto v = validate(bad);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().n == 1);
    CHECK_THROWS_AS(classify(bad), ValidationFailure);

    // m_1 = 0, m_2 nilpotent of order two is fine; m_2 = identity is not.
    AModule ok(Side::Right, 2);
    ok.set_action(2, F2Matrix{{0, 0}, {1, 0}});
    CHECK(is_valid(ok));
    AModule idem(Side::Right, 2);
    idem.set_action(2, F2Matrix::identity(2));
    CHECK_FALSE(is_valid(idem));

    AModule shape(Side::Right, 2);
    CHECK_THROWS_AS(shape.set_action(1, F2Matrix(3, 3)), InvalidInput);
    CHECK_THROWS_AS(parse_side("up"), InvalidInput);
}

TEST_CASE("t matrix truncation bounds") {
    const auto r3 = standard(StandardModuleKind::right(3));
    CHECK_THROWS_AS(t_matrix(r3, 0), InvalidInput);
    CHECK_THROWS_AS(t_matrix(r3, 4), InvalidInput);
    CHECK(t_matrix(r3, 5).truncation() == 5);
    CHECK(classification_truncation(r3) == 7);
}

TEST_CASE("classify matches the rank oracle and is a quasi-isomorphism invariant") {
    oracle::Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const Side side = (rng() & 1) ? Side::Right : Side::Left;
        const auto a = oracle::random_module(rng, side, 6, 5);
        const auto b = oracle::random_module(rng, side, 6, 5);
        REQUIRE(is_valid(a));
        const Barcode ba = classify(a);
        CHECK(ba == oracle::barcode(a));
        CHECK(classify(oracle::conjugate(a, oracle::random_invertible(rng, a.dim))) == ba);
        Barcode sum = ba;
        sum += classify(b);
        CHECK(classify(direct_sum(a, b)) == sum);
        const auto can = canonical(ba, side);
        CHECK(classify(can) == ba);
        CHECK(quasi_iso(a, can));
        CHECK(can.dim == ba.total_dimension());
    }
}

TEST_CASE("canonical and direct sums") {
    const auto m = canonical(Barcode{2, {1, 3}}, Side::Left);
    CHECK(m.dim == 6);
    CHECK(m.side == Side::Left);
    CHECK(m.order() == 4);
    CHECK_THROWS_AS(canonical(Barcode{0, {0}}, Side::Right), InvalidInput);
    CHECK_THROWS_AS(direct_sum(standard(StandardModuleKind::right(2)), standard(StandardModuleKind::left(2))),
                    InvalidInput);
    CHECK_FALSE(quasi_iso(standard(StandardModuleKind::right(2)), standard(StandardModuleKind::right(3))));
}
