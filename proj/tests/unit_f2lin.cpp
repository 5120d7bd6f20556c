#include <doctest.h>

#include "freetwist/error.hpp"
#include "freetwist/f2lin.hpp"
#include "oracles.hpp"

using namespace freetwist;

namespace {

F2Matrix random_matrix(oracle::Rng& rng, std::size_t r, std::size_t c, unsigned density = 2) {
    F2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng() % density == 0) m.set(i, j);
    return m;
}

// A random square matrix with d*d = 0: P N P^-1 with N strictly block shaped.
F2Matrix random_differential(oracle::Rng& rng, std::size_t n) {
    F2Matrix d(n, n);
    const std::size_t half = n / 2;
    for (std::size_t i = half; i < n; ++i)
        for (std::size_t j = 0; j < half; ++j)
            if (rng() & 1) d.set(i, j);
    const auto p = oracle::random_invertible(rng, n);
    return p * d * *inverse(p);
}

} // namespace

TEST_CASE("bit vectors") {
    BitVec v(130);
    CHECK(v.none());
    v.set(0);
    v.set(129);
    CHECK(v.count() == 2);
    CHECK(v.lowest() == 0);
    v.flip(0);
    CHECK(v.lowest() == 129);
    BitVec w = BitVec::unit(130, 129);
    CHECK(v == w);
    CHECK(v.dot(w));
    v ^= w;
    CHECK(v.none());
    CHECK(BitVec(5).lowest() == 5);
}

TEST_CASE("matrix basics") {
    F2Matrix a{{1, 1}, {0, 1}};
    CHECK(a * a == F2Matrix::identity(2));
    CHECK(a.transpose() == F2Matrix{{1, 0}, {1, 1}});
    CHECK(a.apply(BitVec::unit(2, 1)) == (BitVec::unit(2, 0) ^ BitVec::unit(2, 1)));
    CHECK_THROWS_AS(a.get(2, 0), InvalidInput);
    CHECK_THROWS_AS(F2Matrix(2, 3) * F2Matrix(2, 3), InvalidInput);
    F2Matrix big(3, 3);
    big.add_block(1, 1, a);
    CHECK(big.block(1, 1, 2, 2) == a);
    CHECK(big.count_ones() == 3);
}

TEST_CASE("rank agrees with a byte-per-entry elimination") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 90, c = 1 + rng() % 90;
        const auto m = random_matrix(rng, r, c, 1 + rng() % 4);
        const std::size_t expect = oracle::rank(oracle::dense(m));
        REQUIRE(rank(m) == expect);
        REQUIRE(rank(m.transpose()) == expect);
    }
}

TEST_CASE("component-wise rank equals rank") {
    oracle::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 60;
        const auto m = random_matrix(rng, n, n, 8 + rng() % 20);
        REQUIRE(rank_by_components(m) == rank(m));
    }
}

TEST_CASE("kernel, solve and inverse") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
        const auto m = random_matrix(rng, r, c);
        const auto ker = kernel_basis(m);
        CHECK(ker.size() == c - rank(m));
        for (const auto& v : ker) CHECK(m.apply(v).none());

        BitVec x(c);
        for (std::size_t i = 0; i < c; ++i)
            if (rng() & 1) x.set(i);
        const auto sol = solve(m, m.apply(x));
        REQUIRE(sol);
        CHECK(m.apply(*sol) == m.apply(x));
    }
    const auto p = oracle::random_invertible(rng, 17);
    CHECK(p * *inverse(p) == F2Matrix::identity(17));
    CHECK_FALSE(inverse(F2Matrix{{1, 1}, {1, 1}}));
    CHECK_FALSE(solve(F2Matrix{{1, 0}, {0, 0}}, BitVec::unit(2, 1)));
}

TEST_CASE("echelon coordinates") {
    Echelon e(4);
    const BitVec a = BitVec::unit(4, 0) ^ BitVec::unit(4, 2);
    const BitVec b = BitVec::unit(4, 2) ^ BitVec::unit(4, 3);
    CHECK(e.insert(a));
    CHECK(e.insert(b));
    CHECK_FALSE(e.insert(a ^ b));
    const auto co = e.coordinates(a ^ b);
    REQUIRE(co);
    CHECK(co->get(0));
    CHECK(co->get(1));
    CHECK_FALSE(e.coordinates(BitVec::unit(4, 1)));
}

TEST_CASE("cohomology of square-zero matrices") {
    oracle::Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 24;
        const auto d = random_differential(rng, n);
        REQUIRE((d * d).is_zero());
        const std::size_t h = ungraded_cohomology_rank(d);
        CHECK(h == n - 2 * oracle::rank(oracle::dense(d)));
        const CohomologyBasis cb(d);
        CHECK(cb.dim() == h);
        for (std::size_t i = 0; i < cb.dim(); ++i) {
            const auto& rep = cb.representatives()[i];
            CHECK(cb.is_cocycle(rep));
            CHECK(cb.coordinates(rep) == BitVec::unit(cb.dim(), i));
            // Adding a coboundary does not change the class.
            const BitVec shifted = rep ^ d.apply(BitVec::unit(n, rng() % n));
            CHECK(cb.coordinates(shifted) == BitVec::unit(cb.dim(), i));
        }
    }
    CHECK_THROWS_AS(ungraded_cohomology_rank(F2Matrix{{1, 0}, {0, 0}}), NotAComplex);
    CHECK_THROWS_AS(ungraded_cohomology_rank(F2Matrix(2, 3)), InvalidInput);
    CHECK_THROWS_AS(CohomologyBasis(F2Matrix{{1}}), NotAComplex);
}

TEST_CASE("truncated polynomials") {
    TruncPoly u(6);
    u.set_coeff(0);
    u.set_coeff(1);
    u.set_coeff(4);
    CHECK(u * u.unit_inverse() == TruncPoly::monomial(6, 0));
    CHECK(TruncPoly::monomial(6, 3).valuation() == 3);
    CHECK((TruncPoly::monomial(6, 3) * TruncPoly::monomial(6, 3)).is_zero());
    CHECK(TruncPoly::monomial(6, 3).shifted_down(2) == TruncPoly::monomial(6, 1));
}

TEST_CASE("barcodes of small deformed differentials") {
    // t e_1 <- e_0: one torsion bar of exponent 1.
    F2Matrix m1(2, 2), m2(2, 2);
    m2.set(1, 0);
    const F2Matrix parts[] = {m1, m2};
    const auto d = PolyMatrix::from_coefficients(parts, 4);
    const auto bd = barcode_decomposition(d);
    CHECK(bd.barcode == Barcode{0, {1}});
    CHECK(bd.unit_factors == 0);

    const F2Matrix unit_parts[] = {m2};
    CHECK(barcode(PolyMatrix::from_coefficients(unit_parts, 3)) == Barcode{0, {}});
    CHECK(barcode(PolyMatrix(3, 3, 2)) == Barcode{3, {}});

    CHECK_THROWS_AS(barcode(PolyMatrix(2, 2, 0)), InvalidInput);
    CHECK_THROWS_AS(barcode(PolyMatrix(2, 3, 2)), InvalidInput);
    const F2Matrix bad[] = {F2Matrix{{1, 0}, {1, 0}}};
    CHECK_THROWS_AS(barcode(PolyMatrix::from_coefficients(bad, 2)), NotAComplex);
}
