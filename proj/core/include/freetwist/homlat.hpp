#pragma once

// Middle homology of the A_m Milnor fibre: the lattice Z^m on vanishing
// cycles d_1..d_m with its intersection form, and Picard-Lefschetz twists
//     tau_S(x) = x + s (x . S) S,   s = (-1)^(n(n+1)/2).
//
// Sign table, by n mod 4 (n the complex dimension):
//   n odd:  d_i.d_{i+1} = 1, d_{i+1}.d_i = -1, d_i.d_i = 0      (skew)
//   n even: d_i.d_{i+1} = d_{i+1}.d_i = 1,     d_i.d_i = -2s    (symmetric)
// The even self-intersection is chosen so that tau_S(S) = -S and every
// twist is an isometry.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "freetwist/zigzag.hpp"

namespace freetwist::homlat {

using Vector = std::vector<std::int64_t>;

struct MilnorLattice {
    std::size_t m = 0;
    int n_mod4 = 1;
    int sigma = -1; // d_{i+1}.d_i = sigma * d_i.d_{i+1}
    int chi = 0;    // d_i.d_i
    int sign = -1;  // Picard-Lefschetz sign s
    std::vector<Vector> form;

    bool odd() const { return n_mod4 % 2 == 1; }
    Vector basis(std::size_t i) const; // d_i, 1-based
};

MilnorLattice make_lattice(std::size_t m, int n_mod4);

std::int64_t pairing(const MilnorLattice& lat, const Vector& x, const Vector& y);

// tau_S^exponent(x). Negative exponents invert the formula; throws
// InvalidInput if 1 + s (S.S) is not a unit.
Vector pl_twist(const MilnorLattice& lat, const Vector& s, const Vector& x, int exponent);

// Matrix of tau_{d_i}^exponent acting on column vectors.
std::vector<Vector> twist_matrix(const MilnorLattice& lat, std::size_t i, int exponent);

Vector homology_class(const MilnorLattice& lat, const zigzag::BraidWord& w, std::size_t base);
Vector homology_class(const MilnorLattice& lat, const zigzag::SphereSpec& spec);

std::string convention_note(const MilnorLattice& lat);

} // namespace freetwist::homlat
