#pragma once

// Finite strictly unital A-infinity modules over A = Z2[eps]/(eps^2) and
// their classification by barcodes.
//
// A module is stored as the list of maps m_k (k = 1..K), where m_k(a) is
// mu^k(a, eps, ..., eps) for a right module and mu^k(eps, ..., eps, a) for a
// left module, with k-1 copies of eps. Matrices act on column vectors:
// entry (i, j) of m_k is the coefficient of basis vector i in m_k(e_j).
// Under strict unitality and eps^2 = 0 the module relations reduce to
//     sum_{i+j=n+1} m_i m_j = 0   for every n >= 1.

#include <cstddef>
#include <string>
#include <vector>

#include "freetwist/f2lin.hpp"

namespace freetwist::amod {

enum class Side { Left, Right };

std::string to_string(Side side);
Side parse_side(const std::string& text);

struct AModule {
    Side side = Side::Right;
    std::size_t dim = 0;
    std::vector<F2Matrix> actions; // actions[k-1] is m_k

    AModule() = default;
    AModule(Side s, std::size_t d) : side(s), dim(d) {}

    // Highest k with m_k != 0; zero when every action vanishes.
    std::size_t order() const;
    // m_k, or the zero matrix when k exceeds the stored list.
    F2Matrix action(std::size_t k) const;
    void set_action(std::size_t k, F2Matrix m);
};

struct StandardModuleKind {
    enum class Type { TrivialZ2, R, L };
    Type type = Type::TrivialZ2;
    std::size_t k = 0;

    static StandardModuleKind trivial() { return {Type::TrivialZ2, 0}; }
    static StandardModuleKind right(std::size_t k) { return {Type::R, k}; }
    static StandardModuleKind left(std::size_t k) { return {Type::L, k}; }
};

// Values of n (1 <= n <= 2K) at which sum_{i+j=n+1} m_i m_j fails to vanish,
// plus any shape problems. Empty means valid.
struct Violation {
    std::size_t n = 0; // 0 for structural problems
    std::string message;
};
std::vector<Violation> validate(const AModule& m);
bool is_valid(const AModule& m);

// TrivialZ2 is a right module unless `trivial_side` says otherwise.
AModule standard(StandardModuleKind kind, Side trivial_side = Side::Right);

// D = sum_k t^(k-1) m_k over Z2[t]/(t^N). Requires N >= 2K-1 and N >= 1.
PolyMatrix t_matrix(const AModule& m, std::size_t truncation);

// Truncation used by classify: dim * K + 1 (K the highest nonzero order).
std::size_t classification_truncation(const AModule& m);

// Barcode of the t-deformed differential. A torsion exponent e stands for an
// R_{e+1} (or L_{e+1}) summand. Throws ValidationFailure for invalid input.
Barcode classify(const AModule& m);

// Minimal module with the given barcode: free_rank trivial summands first,
// then one R_{e+1} / L_{e+1} per torsion entry in ascending order.
AModule canonical(const Barcode& b, Side side);

AModule direct_sum(const AModule& a, const AModule& b);
bool quasi_iso(const AModule& a, const AModule& b);

} // namespace freetwist::amod
