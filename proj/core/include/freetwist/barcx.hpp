#pragma once

// Truncated reduced bar complexes (M (x)_A N)_n for a right module M and a
// left module N, and an exhaustive check of the rank lower bounds
//     rk H >= dim M * dim N,
//     rk H >= 2 * dim M * dim N  (all torsion orders >= 3, n >= 2).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "freetwist/amod.hpp"
#include "freetwist/f2lin.hpp"

namespace freetwist::barcx {

// Summand k (k = 1..n) is M (x) eps^(k-1) (x) N. The basis vector
// a (x) eps^c (x) b sits at index c*dimM*dimN + a*dimN + b.
struct BarComplex {
    amod::AModule left;  // right A-module M
    amod::AModule right; // left A-module N
    std::size_t n = 0;
    F2Matrix differential;

    std::size_t total_dim() const { return differential.rows(); }
    std::size_t index(std::size_t eps_count, std::size_t a, std::size_t b) const {
        return (eps_count * left.dim + a) * right.dim + b;
    }
};

// Throws InvalidInput for wrong sides or n = 0, ValidationFailure for modules
// violating the A-infinity relations.
BarComplex build_bar(const amod::AModule& m, const amod::AModule& n_mod, std::size_t n);
std::size_t bar_rank(const amod::AModule& m, const amod::AModule& n_mod, std::size_t n);

// A direct sum of trivial summands and R_k / L_k with k >= 2.
struct MinimalSpec {
    std::size_t trivial = 0;
    std::vector<std::size_t> orders; // ascending

    std::size_t dim() const { return trivial + 2 * orders.size(); }
    amod::AModule build(amod::Side side) const;
    Barcode barcode() const;
};

// All minimal specs of total dimension 1..max_dim with orders in
// [min_order, max_order], in a fixed order.
std::vector<MinimalSpec> enumerate_minimal(std::size_t max_dim, std::size_t min_order,
                                           std::size_t max_order);

struct SweepBounds {
    std::size_t max_dim = 8;
    std::size_t max_n = 6;
    std::size_t min_order = 2;
    std::size_t max_order = 6;
    bool strengthened = true;
    // Fraction of cases recomputed from a scrambled non-minimal
    // representative with a plain dense rank.
    double guard_fraction = 0.1;
    std::uint64_t seed = 0x5eed;
};

struct Counterexample {
    MinimalSpec m;
    MinimalSpec n_mod;
    std::size_t n = 0;
    std::size_t rank = 0;
    std::size_t bound = 0;
    bool strengthened = false;
};

struct GuardMismatch {
    MinimalSpec m;
    MinimalSpec n_mod;
    std::size_t n = 0;
    std::size_t fast_rank = 0;
    std::size_t guard_rank = 0;
};

struct SweepReport {
    SweepBounds bounds;
    std::size_t cases = 0;
    std::size_t strengthened_cases = 0;
    std::size_t guard_cases = 0;
    std::vector<Counterexample> counterexamples;
    std::vector<GuardMismatch> guard_mismatches;

    bool ok() const { return counterexamples.empty() && guard_mismatches.empty(); }
};

SweepReport inequality_sweep(const SweepBounds& bounds);

} // namespace freetwist::barcx
