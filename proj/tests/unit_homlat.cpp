#include <doctest.h>

#include "freetwist/error.hpp"
#include "freetwist/homlat.hpp"
#include "freetwist/tw.hpp"
#include "oracles.hpp"

using namespace freetwist;
using namespace freetwist::homlat;

namespace {

using IntMatrix = std::vector<Vector>;

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix out(n, Vector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Vector random_vector(oracle::Rng& rng, std::size_t m) {
    Vector v(m);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % 11) - 5;
    return v;
}

} // namespace

TEST_CASE("sign table") {
    for (int n = 0; n < 4; ++n) {
        const auto lat = make_lattice(4, n);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(lat.form[i][j] == (lat.odd() ? -1 : 1) * lat.form[j][i]);
        CHECK(lat.sign == (n == 0 || n == 3 ? 1 : -1));
    }
    CHECK(make_lattice(2, 1).chi == 0);
    CHECK(make_lattice(2, 2).chi == 2);
    CHECK(make_lattice(2, 0).chi == -2);
    CHECK_THROWS_AS(make_lattice(0, 1), InvalidInput);
    CHECK_THROWS_AS(make_lattice(2, 4), InvalidInput);
}

TEST_CASE("single twists") {
    for (int n = 0; n < 4; ++n) {
        const auto lat = make_lattice(3, n);
        const Vector d1 = lat.basis(1), d2 = lat.basis(2);
        const Vector self = pl_twist(lat, d2, d2, 1);
        if (lat.odd()) {
            CHECK(self == d2);
        } else {
            CHECK(self == Vector{0, -1, 0});
        }
        // tau_{d1}(d2) = d2 + s (d2 . d1) d1
        Vector expect = d2;
        expect[0] += lat.sign * pairing(lat, d2, d1);
        CHECK(pl_twist(lat, d1, d2, 1) == expect);
        CHECK(pl_twist(lat, d1, lat.basis(3), 1) == lat.basis(3));
    }
}

TEST_CASE("braid relations, isometry and inverses") {
    oracle::Rng rng(61);
    for (int n = 0; n < 4; ++n) {
        const auto lat = make_lattice(4, n);
        for (std::size_t i = 1; i < 4; ++i) {
            const auto a = twist_matrix(lat, i, 1), b = twist_matrix(lat, i + 1, 1);
            CHECK(mul(mul(a, b), a) == mul(mul(b, a), b));
            CHECK(mul(twist_matrix(lat, i, 1), twist_matrix(lat, i, -1)) == twist_matrix(lat, i, 0));
        }
        CHECK(mul(twist_matrix(lat, 1, 1), twist_matrix(lat, 3, 1)) ==
              mul(twist_matrix(lat, 3, 1), twist_matrix(lat, 1, 1)));
        for (int trial = 0; trial < 50; ++trial) {
            const Vector s = lat.basis(1 + rng() % 4);
            const Vector x = random_vector(rng, 4), y = random_vector(rng, 4);
            const int e = static_cast<int>(rng() % 5) - 2;
            CHECK(pairing(lat, pl_twist(lat, s, x, e), pl_twist(lat, s, y, e)) == pairing(lat, x, y));
            CHECK(pl_twist(lat, s, pl_twist(lat, s, x, e), -e) == x);
        }
    }
}

TEST_CASE("classes of braid-word spheres") {
    const auto lat = make_lattice(3, 1);
    CHECK(homology_class(lat, zigzag::parse_sphere("@2")) == lat.basis(2));
    const auto c = homology_class(lat, zigzag::parse_sphere("t2 t3^2 t2^2 t3^2 t2 @1"));
    CHECK((c == lat.basis(1) || c == Vector{-1, 0, 0}));
    CHECK(pairing(lat, lat.basis(1), c) == 0);
    CHECK_THROWS_AS(homology_class(lat, zigzag::parse_sphere("t4 @1")), InvalidInput);
    CHECK_THROWS_AS(homology_class(lat, zigzag::parse_sphere("@4")), InvalidInput);
    CHECK_THROWS_AS(pairing(lat, Vector{1}, Vector{1, 0, 0}), InvalidInput);
}

TEST_CASE("parity of hf matches the intersection number") {
    oracle::Rng rng(62);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + rng() % 3;
        const auto cat = zigzag::zigzag(m);
        const auto a = oracle::random_sphere(rng, m, 4), b = oracle::random_sphere(rng, m, 4);
        const std::size_t h = tw::hf(zigzag::sphere(cat, a), zigzag::sphere(cat, b));
        for (int n : {1, 3}) {
            const auto lat = make_lattice(m, n);
            const auto p = pairing(lat, homology_class(lat, a), homology_class(lat, b));
            CHECK((h + static_cast<std::size_t>(p < 0 ? -p : p)) % 2 == 0);
        }
    }
}
