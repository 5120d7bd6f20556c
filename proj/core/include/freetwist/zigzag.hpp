#pragma once

// The zigzag category of the A_m quiver, braid words acting on it through
// twist and untwist, and the A-modules hom(L, X) and hom(X, L).
//
// Objects are P_1..P_m (ObjectId i-1 is P_i). hom(P_i, P_i) = {1, X_i},
// hom(P_i, P_{i+-1}) = {a}, the only nonunit product is
// a_{j->i} after a_{i->j} = X_i, and there are no higher products.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "freetwist/amod.hpp"
#include "freetwist/tw.hpp"

namespace freetwist::zigzag {

tw::CategoryPtr zigzag(std::size_t m);
std::size_t rank_of(const tw::AInfCategory& cat);

// Letters (generator, exponent) with generator in 1..m and exponent != 0.
// The word acts right to left: the last letter is applied first.
struct BraidWord {
    std::vector<std::pair<std::size_t, int>> letters;

    bool empty() const { return letters.empty(); }
    std::size_t length() const; // sum of |exponent|
    BraidWord inverse() const;
    // Merge adjacent letters with equal generator and drop zero exponents.
    BraidWord reduced() const;
    friend BraidWord operator*(const BraidWord& a, const BraidWord& b); // a after b
    friend bool operator==(const BraidWord&, const BraidWord&) = default;
    std::string to_string() const;
};

struct SphereSpec {
    BraidWord word;
    std::size_t base = 1;
    std::string to_string() const;
};

// "t2 t3^2 t2^-1" and "t2 t3^2 @1". Errors name the token and its position.
BraidWord parse_word(const std::string& text);
SphereSpec parse_sphere(const std::string& text);

void check_word(const BraidWord& w, std::size_t m);

// Applies the word to X, reducing after every twist.
tw::TwObject apply_word(const BraidWord& w, const tw::TwObject& x);
tw::TwObject sphere(const tw::CategoryPtr& cat, const SphereSpec& spec);
tw::TwObject sphere(const tw::CategoryPtr& cat, const BraidWord& w, std::size_t base);

// Word for the twist along the sphere w(P_i), raised to `exponent`:
// w t_i^exponent w^-1.
BraidWord sphere_twist_word(const SphereSpec& spec, int exponent);

// hf(P_j, X) for j = 1..m.
std::vector<std::size_t> fingerprint(const tw::TwObject& x);

// hom(P_L, X) as a right module and hom(X, P_L) as a left module over
// hom(P_L, P_L) = A. L is 1-based. Trailing zero actions are dropped.
amod::AModule hom_module_right(std::size_t l, const tw::TwObject& x);
amod::AModule hom_module_left(const tw::TwObject& x, std::size_t l);

} // namespace freetwist::zigzag
