#pragma once

// Dense linear algebra over the two-element field and over the truncated
// polynomial rings Z2[t]/(t^N).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace freetwist {

// Fixed-length bit vector; the element type of every vector space here.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVec unit(std::size_t size, std::size_t index) {
        BitVec v(size);
        v.set(index);
        return v;
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend bool operator==(const BitVec& a, const BitVec& b) = default;

    bool any() const;
    bool none() const { return !any(); }
    std::size_t count() const;
    // Index of the lowest set bit, or size() when the vector is zero.
    std::size_t lowest() const;
    bool dot(const BitVec& other) const;

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    std::string to_string() const;

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Row-major bit-packed matrix over Z2. Dimensions are fixed at construction.
class F2Matrix {
  public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);
    F2Matrix(std::initializer_list<std::initializer_list<int>> rows);

    static F2Matrix identity(std::size_t n);
    static F2Matrix from_columns(std::size_t rows, std::span<const BitVec> columns);
    static F2Matrix from_rows(std::size_t cols, std::span<const BitVec> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value = true);
    void flip(std::size_t r, std::size_t c);

    std::span<std::uint64_t> row_words(std::size_t r) {
        return {data_.data() + r * stride_, stride_};
    }
    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {data_.data() + r * stride_, stride_};
    }
    BitVec row(std::size_t r) const;
    BitVec column(std::size_t c) const;
    void xor_row(std::size_t target, std::size_t source);
    void swap_rows(std::size_t a, std::size_t b);

    bool is_zero() const;
    std::size_t count_ones() const;

    F2Matrix transpose() const;
    BitVec apply(const BitVec& v) const;

    F2Matrix& operator+=(const F2Matrix& other);
    friend F2Matrix operator+(F2Matrix a, const F2Matrix& b) { return a += b; }
    friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
    friend bool operator==(const F2Matrix& a, const F2Matrix& b) = default;

    // Copy of the block [r0, r0+rows) x [c0, c0+cols).
    F2Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
    // XOR `m` into this matrix with its top-left corner at (r0, c0).
    void add_block(std::size_t r0, std::size_t c0, const F2Matrix& m);

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

std::size_t rank(const F2Matrix& m);

// Rank computed independently on each connected component of the bipartite
// row/column support graph. Exact; fast for matrices that are block diagonal
// up to permutation.
std::size_t rank_by_components(const F2Matrix& m);

// dim ker(d) - rank(d) for a square d with d*d = 0.
// Throws InvalidInput if d is not square, NotAComplex if d*d != 0.
std::size_t ungraded_cohomology_rank(const F2Matrix& d);

// Basis of { x : m x = 0 }.
std::vector<BitVec> kernel_basis(const F2Matrix& m);
// Some x with m x = b, if one exists.
std::optional<BitVec> solve(const F2Matrix& m, const BitVec& b);
std::optional<F2Matrix> inverse(const F2Matrix& m);

// Incrementally built echelon basis of a subspace. Each stored vector keeps
// the combination of inserted generators it came from, so membership tests
// also return coordinates with respect to those generators.
class Echelon {
  public:
    explicit Echelon(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }

    // Returns true if `v` was independent of the current span.
    bool insert(const BitVec& v);
    // Reduces `v` modulo the span. The result is zero iff v lies in the span.
    BitVec reduce(const BitVec& v) const;
    bool contains(const BitVec& v) const { return reduce(v).none(); }
    // Coefficients over the inserted independent generators (in insertion
    // order), or nullopt when v is outside the span.
    std::optional<BitVec> coordinates(const BitVec& v) const;

  private:
    std::size_t ambient_;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<BitVec> combos_;
};

// A chosen basis of H = ker d / im d for a square d with d*d = 0: cocycle
// representatives plus a coordinate map for arbitrary cocycles.
class CohomologyBasis {
  public:
    explicit CohomologyBasis(const F2Matrix& d);

    std::size_t dim() const { return reps_.size(); }
    const std::vector<BitVec>& representatives() const { return reps_; }
    bool is_cocycle(const BitVec& v) const { return d_.apply(v).none(); }
    bool is_coboundary(const BitVec& v) const { return image_.contains(v); }
    // Class of a cocycle in the representative basis. Throws InvalidInput for
    // non-cocycles.
    BitVec coordinates(const BitVec& cocycle) const;

  private:
    F2Matrix d_;
    Echelon image_;
    Echelon image_plus_reps_;
    std::vector<BitVec> reps_;
};

// Element of Z2[t]/(t^N).
class TruncPoly {
  public:
    TruncPoly() = default;
    explicit TruncPoly(std::size_t truncation) : coeffs_(truncation) {}
    static TruncPoly monomial(std::size_t truncation, std::size_t degree);

    std::size_t truncation() const { return coeffs_.size(); }
    bool coeff(std::size_t degree) const { return coeffs_.get(degree); }
    void set_coeff(std::size_t degree, bool value = true) {
        if (degree < coeffs_.size()) coeffs_.set(degree, value);
    }
    bool is_zero() const { return coeffs_.none(); }
    // t-adic valuation; truncation() for the zero element.
    std::size_t valuation() const { return coeffs_.lowest(); }

    TruncPoly& operator+=(const TruncPoly& o) {
        coeffs_ ^= o.coeffs_;
        return *this;
    }
    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
    friend bool operator==(const TruncPoly& a, const TruncPoly& b) = default;

    // Divide by t^k; the low k coefficients must be zero. High bits become 0.
    TruncPoly shifted_down(std::size_t k) const;
    // Inverse of a unit (constant coefficient 1).
    TruncPoly unit_inverse() const;

    std::string to_string() const;

  private:
    BitVec coeffs_;
};

// Dense matrix over Z2[t]/(t^N).
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t truncation);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t truncation() const { return truncation_; }

    const TruncPoly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    TruncPoly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    bool is_zero() const;
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

    // Matrix with entry (r,c) = sum_k t^k * coefficients[k](r,c).
    static PolyMatrix from_coefficients(std::span<const F2Matrix> coefficients,
                                        std::size_t truncation);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t truncation_ = 0;
    std::vector<TruncPoly> entries_;
};

// Free rank plus torsion exponents of ker D / im D over the local ring.
struct Barcode {
    std::size_t free_rank = 0;
    std::vector<std::size_t> torsion; // sorted ascending, every entry >= 1

    friend bool operator==(const Barcode&, const Barcode&) = default;
    Barcode& operator+=(const Barcode& other);
    std::size_t total_dimension() const { return free_rank + 2 * torsion.size(); }
    std::string to_string() const;
};

struct BarcodeDecomposition {
    Barcode barcode;
    // Invariant factors that are units (exponent 0); each kills two
    // dimensions without contributing torsion.
    std::size_t unit_factors = 0;
    // All nonzero invariant-factor exponents in pivot order.
    std::vector<std::size_t> invariant_factors;
};

// Smith-form reduction of a square D with D*D = 0 over Z2[t]/(t^N). Pivots
// are chosen by lowest valuation, leftmost column first, then topmost row.
BarcodeDecomposition barcode_decomposition(const PolyMatrix& d);
Barcode barcode(const PolyMatrix& d);

} // namespace freetwist
