#pragma once

// Non-isomorphism evidence for a pair of spheres, and hf traces certifying
// that words in the twists along them act nontrivially.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freetwist/tw.hpp"
#include "freetwist/zigzag.hpp"

namespace freetwist::freecert {

struct Evidence {
    std::string kind; // "witness", "product" or "eps-action"
    std::string detail;
    std::string witness;                // witness object, for kind == "witness"
    std::size_t value_a = 0, value_b = 0; // hf against L0 and L1
};

struct PropertySReport {
    std::size_t hf = 0;
    bool hf_ok = false; // hf >= 2
    bool distinct = false;
    std::vector<Evidence> evidence;
    std::vector<std::string> failed; // criteria that did not fire
    bool holds() const { return hf_ok && distinct; }
    std::string verdict() const { return distinct ? "distinct" : "indistinguishable"; }
};

struct Witness {
    std::string name;
    tw::TwObject object;
};

// Default witnesses: P_1..P_m and both spheres.
std::vector<Witness> default_witnesses(const tw::CategoryPtr& cat, const zigzag::SphereSpec& a,
                                       const zigzag::SphereSpec& b);

PropertySReport property_s(const tw::CategoryPtr& cat, const zigzag::SphereSpec& a, const zigzag::SphereSpec& b);
PropertySReport property_s(const tw::CategoryPtr& cat, const zigzag::SphereSpec& a, const zigzag::SphereSpec& b,
                           const std::vector<Witness>& witnesses);

// A word in tau_L (gen 0) and tau_L' (gen 1), acting right to left.
struct CertWord {
    std::vector<std::pair<int, int>> letters; // (gen, exponent)
    CertWord reduced() const;
    bool empty() const { return letters.empty(); }
    std::size_t length() const;
    std::string to_string() const;
    friend bool operator==(const CertWord&, const CertWord&) = default;
};

// Tokens "L", "L^e", "Lp", "Lp^e" separated by spaces.
CertWord parse_cert_word(const std::string& text);

// All freely reduced words of letter length 1..max_length with unit
// exponents, merged into blocks.
std::vector<CertWord> reduced_words(std::size_t max_length);

struct TraceRecord {
    std::string prefix; // the part of the word applied so far
    std::size_t hfL = 0, hfLp = 0;
    std::string predicted; // "hfLp < hfL", "hfL < hfLp" or "none"
    bool observed = true;
};

struct FreenessTrace {
    CertWord word;
    std::vector<TraceRecord> records;
    std::string verdict; // "identity", "nontrivial" or "undetermined"
    std::string witness; // fingerprint entry that moved
    bool predictions_hold() const;
};

// Throws ValidationFailure if the pair does not have property S. Pass a
// precomputed report to skip recomputing it.
FreenessTrace certify_word(const tw::CategoryPtr& cat, const zigzag::SphereSpec& l, const zigzag::SphereSpec& lp,
                           const CertWord& word, const PropertySReport* report = nullptr);

// The braid word of tau_L^e for the sphere L = w(P_i).
zigzag::BraidWord block_word(const zigzag::SphereSpec& s, int exponent);

} // namespace freetwist::freecert
