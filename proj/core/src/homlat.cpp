#include "freetwist/homlat.hpp"

#include <cstdlib>

#include "freetwist/error.hpp"

namespace freetwist::homlat {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw InvalidInput("lattice arithmetic overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw InvalidInput("lattice arithmetic overflow");
    return r;
}

void check_vector(const MilnorLattice& lat, const Vector& v) {
    if (v.size() != lat.m) throw InvalidInput("lattice vector has wrong length");
}

} // namespace

Vector MilnorLattice::basis(std::size_t i) const {
    if (i < 1 || i > m) throw InvalidInput("basis index out of range");
    Vector v(m, 0);
    v[i - 1] = 1;
    return v;
}

MilnorLattice make_lattice(std::size_t m, int n_mod4) {
    if (m == 0) throw InvalidInput("lattice rank must be at least 1");
    if (n_mod4 < 0 || n_mod4 > 3) throw InvalidInput("dimension must be given mod 4 (0..3)");
    MilnorLattice lat;
    lat.m = m;
    lat.n_mod4 = n_mod4;
    // n(n+1)/2 mod 2 depends only on n mod 4: even for 0 and 3.
    lat.sign = (n_mod4 == 0 || n_mod4 == 3) ? 1 : -1;
    if (lat.odd()) {
        lat.sigma = -1;
        lat.chi = 0;
    } else {
        lat.sigma = 1;
        lat.chi = -2 * lat.sign;
    }
    lat.form.assign(m, Vector(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        lat.form[i][i] = lat.chi;
        if (i + 1 < m) {
            lat.form[i][i + 1] = 1;
            lat.form[i + 1][i] = lat.sigma;
        }
    }
    return lat;
}

std::int64_t pairing(const MilnorLattice& lat, const Vector& x, const Vector& y) {
    check_vector(lat, x);
    check_vector(lat, y);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < lat.m; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < lat.m; ++j) {
            if (y[j] == 0 || lat.form[i][j] == 0) continue;
            acc = checked_add(acc, checked_mul(checked_mul(x[i], lat.form[i][j]), y[j]));
        }
    }
    return acc;
}

Vector pl_twist(const MilnorLattice& lat, const Vector& s, const Vector& x, int exponent) {
    check_vector(lat, s);
    check_vector(lat, x);
    Vector cur = x;
    const std::int64_t ss = pairing(lat, s, s);
    const std::int64_t denom = checked_add(1, checked_mul(lat.sign, ss));
    for (int k = 0; k < std::abs(exponent); ++k) {
        const std::int64_t xs = pairing(lat, cur, s);
        std::int64_t c = 0;
        if (exponent > 0) {
            // x + s (x.S) S
            c = checked_mul(lat.sign, xs);
        } else {
            // Solve y + s (y.S) S = x with y = x - c S:
            // c = s (x.S) / (1 + s (S.S)).
            if (denom != 1 && denom != -1) throw InvalidInput("twist is not invertible over the integers");
            c = -checked_mul(checked_mul(lat.sign, xs), denom);
        }
        for (std::size_t i = 0; i < lat.m; ++i) cur[i] = checked_add(cur[i], checked_mul(c, s[i]));
    }
    return cur;
}

std::vector<Vector> twist_matrix(const MilnorLattice& lat, std::size_t i, int exponent) {
    const Vector s = lat.basis(i);
    std::vector<Vector> mat(lat.m, Vector(lat.m, 0));
    for (std::size_t c = 0; c < lat.m; ++c) {
        const Vector col = pl_twist(lat, s, lat.basis(c + 1), exponent);
        for (std::size_t r = 0; r < lat.m; ++r) mat[r][c] = col[r];
    }
    return mat;
}

Vector homology_class(const MilnorLattice& lat, const zigzag::BraidWord& w, std::size_t base) {
    zigzag::check_word(w, lat.m);
    Vector x = lat.basis(base);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        x = pl_twist(lat, lat.basis(it->first), x, it->second);
    }
    return x;
}

Vector homology_class(const MilnorLattice& lat, const zigzag::SphereSpec& spec) {
    return homology_class(lat, spec.word, spec.base);
}

std::string convention_note(const MilnorLattice& lat) {
    return "d_i.d_{i+1} = 1, d_{i+1}.d_i = " + std::to_string(lat.sigma) + ", d_i.d_i = " +
           std::to_string(lat.chi) + ", twist sign s = " + std::to_string(lat.sign);
}

} // namespace freetwist::homlat
