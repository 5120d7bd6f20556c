#include "freetwist/f2lin.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "freetwist/error.hpp"

namespace freetwist {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

} // namespace

// ---------------------------------------------------------------- BitVec

BitVec& BitVec::operator^=(const BitVec& other) {
    if (other.size_ != size_) throw InvalidInput("BitVec size mismatch");
    xor_words(words_, other.words_);
    return *this;
}

bool BitVec::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVec::lowest() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return size_;
}

bool BitVec::dot(const BitVec& other) const {
    if (other.size_ != size_) throw InvalidInput("BitVec size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::string BitVec::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

// ---------------------------------------------------------------- F2Matrix

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(word_count(cols)), data_(rows * stride_, 0) {}

F2Matrix::F2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    stride_ = word_count(cols_);
    data_.assign(rows_ * stride_, 0);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
        std::size_t c = 0;
        for (int v : row) set(r, c++, (v & 1) != 0);
        ++r;
    }
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, std::span<const BitVec> columns) {
    F2Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw InvalidInput("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) {
            if (columns[c].get(r)) m.set(r, c);
        }
    }
    return m;
}

F2Matrix F2Matrix::from_rows(std::size_t cols, std::span<const BitVec> rows) {
    F2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InvalidInput("row length mismatch");
        std::copy(rows[r].words().begin(), rows[r].words().end(), m.row_words(r).begin());
    }
    return m;
}

bool F2Matrix::get(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw InvalidInput("matrix index out of range");
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
}

void F2Matrix::set(std::size_t r, std::size_t c, bool value) {
    if (r >= rows_ || c >= cols_) throw InvalidInput("matrix index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    auto& w = data_[r * stride_ + (c >> 6)];
    w = value ? (w | mask) : (w & ~mask);
}

void F2Matrix::flip(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw InvalidInput("matrix index out of range");
    data_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
}

BitVec F2Matrix::row(std::size_t r) const {
    BitVec v(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

BitVec F2Matrix::column(std::size_t c) const {
    BitVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (get(r, c)) v.set(r);
    }
    return v;
}

void F2Matrix::xor_row(std::size_t target, std::size_t source) {
    xor_words(row_words(target), row_words(source));
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row_words(a).begin(), row_words(a).end(), row_words(b).begin());
}

bool F2Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t F2Matrix::count_ones() const {
    std::size_t c = 0;
    for (auto w : data_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto words = row_words(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            std::uint64_t bits = words[w];
            while (bits) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                t.set(c, r);
            }
        }
    }
    return t;
}

BitVec F2Matrix::apply(const BitVec& v) const {
    if (v.size() != cols_) throw InvalidInput("vector length does not match matrix columns");
    BitVec out(rows_);
    auto vw = v.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & vw[w];
        if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
}

F2Matrix& F2Matrix::operator+=(const F2Matrix& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) throw InvalidInput("matrix sum shape mismatch");
    xor_words(data_, other.data_);
    return *this;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
    F2Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        auto aw = a.row_words(r);
        auto ow = out.row_words(r);
        for (std::size_t w = 0; w < a.stride_; ++w) {
            std::uint64_t bits = aw[w];
            while (bits) {
                const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                xor_words(ow, b.row_words(k));
            }
        }
    }
    return out;
}

F2Matrix F2Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) throw InvalidInput("block out of range");
    F2Matrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (get(r0 + r, c0 + c)) out.set(r, c);
        }
    }
    return out;
}

void F2Matrix::add_block(std::size_t r0, std::size_t c0, const F2Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw InvalidInput("block out of range");
    for (std::size_t r = 0; r < m.rows_; ++r) {
        auto words = m.row_words(r);
        for (std::size_t w = 0; w < m.stride_; ++w) {
            std::uint64_t bits = words[w];
            while (bits) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                flip(r0 + r, c0 + c);
            }
        }
    }
}

std::string F2Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) os << (get(r, c) ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- rank & friends

std::size_t rank(const F2Matrix& m) {
    F2Matrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        std::size_t p = r;
        while (p < a.rows() && !(a.row_words(p)[w] & mask)) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a.row_words(i)[w] & mask) a.xor_row(i, r);
        }
        ++r;
    }
    return r;
}

std::size_t rank_by_components(const F2Matrix& m) {
    // Union-find over rows [0, R) and columns [R, R + C).
    const std::size_t R = m.rows();
    const std::size_t C = m.cols();
    std::vector<std::size_t> parent(R + C);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<std::uint8_t> nonzero_row(R, 0);
    for (std::size_t r = 0; r < R; ++r) {
        auto words = m.row_words(r);
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::uint64_t bits = words[w];
            while (bits) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                nonzero_row[r] = 1;
                parent[find(r)] = find(R + c);
            }
        }
    }

    // (root, index) pairs grouped by root.
    std::vector<std::pair<std::size_t, std::size_t>> rows, cols;
    for (std::size_t r = 0; r < R; ++r) {
        if (nonzero_row[r]) rows.emplace_back(find(r), r);
    }
    if (rows.empty()) return 0;
    for (std::size_t c = 0; c < C; ++c) cols.emplace_back(find(R + c), c);
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());

    std::size_t total = 0;
    std::size_t ci = 0;
    for (std::size_t ri = 0; ri < rows.size();) {
        const std::size_t root = rows[ri].first;
        std::size_t re = ri;
        while (re < rows.size() && rows[re].first == root) ++re;
        while (ci < cols.size() && cols[ci].first < root) ++ci;
        std::size_t ce = ci;
        while (ce < cols.size() && cols[ce].first == root) ++ce;
        const std::size_t nr = re - ri;
        const std::size_t nc = ce - ci;
        if (nr == 1 || nc == 1) {
            total += 1;
        } else {
            F2Matrix sub(nr, nc);
            for (std::size_t i = 0; i < nr; ++i) {
                for (std::size_t j = 0; j < nc; ++j) {
                    if (m.get(rows[ri + i].second, cols[ci + j].second)) sub.set(i, j);
                }
            }
            total += rank(sub);
        }
        ri = re;
        ci = ce;
    }
    return total;
}

std::size_t ungraded_cohomology_rank(const F2Matrix& d) {
    if (!d.square()) throw InvalidInput("differential must be square");
    if (!(d * d).is_zero()) throw NotAComplex("differential does not square to zero");
    return d.rows() - 2 * rank(d);
}

namespace {

// Reduced row echelon form of `a` in place; returns pivot columns.
std::vector<std::size_t> rref(F2Matrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        std::size_t p = r;
        while (p < a.rows() && !(a.row_words(p)[w] & mask)) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i != r && (a.row_words(i)[w] & mask)) a.xor_row(i, r);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::vector<BitVec> kernel_basis(const F2Matrix& m) {
    F2Matrix a = m;
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<BitVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVec v(m.cols());
        v.set(f);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (a.get(i, f)) v.set(pivots[i]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVec> solve(const F2Matrix& m, const BitVec& b) {
    if (b.size() != m.rows()) throw InvalidInput("right-hand side length mismatch");
    F2Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) aug.set(r, c);
        }
        if (b.get(r)) aug.set(r, m.cols());
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    BitVec x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (aug.get(i, m.cols())) x.set(pivots[i]);
    }
    return x;
}

std::optional<F2Matrix> inverse(const F2Matrix& m) {
    if (!m.square()) return std::nullopt;
    const std::size_t n = m.rows();
    F2Matrix aug(n, 2 * n);
    aug.add_block(0, 0, m);
    aug.add_block(0, n, F2Matrix::identity(n));
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    return aug.block(0, n, n, n);
}

// ---------------------------------------------------------------- Echelon

bool Echelon::insert(const BitVec& v) {
    if (v.size() != ambient_) throw InvalidInput("vector outside ambient space");
    // At most ambient_ generators can be independent, so combinations are
    // stored at that fixed width.
    BitVec combo(ambient_);
    combo.set(rows_.size());
    BitVec x = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (x.get(pivots_[i])) {
            x ^= rows_[i];
            combo ^= combos_[i];
        }
    }
    if (x.none()) return false;
    rows_.push_back(std::move(x));
    pivots_.push_back(rows_.back().lowest());
    combos_.push_back(std::move(combo));
    return true;
}

BitVec Echelon::reduce(const BitVec& v) const {
    if (v.size() != ambient_) throw InvalidInput("vector outside ambient space");
    BitVec x = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (x.get(pivots_[i])) x ^= rows_[i];
    }
    return x;
}

std::optional<BitVec> Echelon::coordinates(const BitVec& v) const {
    if (v.size() != ambient_) throw InvalidInput("vector outside ambient space");
    BitVec x = v;
    BitVec wide(ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (x.get(pivots_[i])) {
            x ^= rows_[i];
            wide ^= combos_[i];
        }
    }
    if (x.any()) return std::nullopt;
    BitVec coords(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (wide.get(i)) coords.set(i);
    }
    return coords;
}

// ---------------------------------------------------------------- CohomologyBasis

CohomologyBasis::CohomologyBasis(const F2Matrix& d)
    : d_(d), image_(d.rows()), image_plus_reps_(d.rows()) {
    if (!d.square()) throw InvalidInput("differential must be square");
    if (!(d * d).is_zero()) throw NotAComplex("differential does not square to zero");
    for (std::size_t c = 0; c < d.cols(); ++c) {
        const BitVec col = d.column(c);
        if (image_.insert(col)) image_plus_reps_.insert(col);
    }
    for (const auto& z : kernel_basis(d)) {
        if (image_plus_reps_.insert(z)) reps_.push_back(z);
    }
}

BitVec CohomologyBasis::coordinates(const BitVec& cocycle) const {
    if (!is_cocycle(cocycle)) throw InvalidInput("vector is not a cocycle");
    auto coords = image_plus_reps_.coordinates(cocycle);
    if (!coords) throw NotAComplex("cocycle outside kernel span");
    // Generators were inserted image first, then representatives.
    const std::size_t offset = image_.dim();
    BitVec out(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) {
        if (coords->get(offset + i)) out.set(i);
    }
    return out;
}

// ---------------------------------------------------------------- TruncPoly

TruncPoly TruncPoly::monomial(std::size_t truncation, std::size_t degree) {
    TruncPoly p(truncation);
    p.set_coeff(degree);
    return p;
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    if (a.truncation() != b.truncation()) throw InvalidInput("truncation mismatch");
    const std::size_t n = a.truncation();
    TruncPoly out(n);
    for (std::size_t i = a.coeffs_.lowest(); i < n; ++i) {
        if (!a.coeffs_.get(i)) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b.coeffs_.get(j)) out.coeffs_.flip(i + j);
        }
    }
    return out;
}

TruncPoly TruncPoly::shifted_down(std::size_t k) const {
    TruncPoly out(truncation());
    for (std::size_t i = k; i < truncation(); ++i) {
        if (coeffs_.get(i)) out.coeffs_.set(i - k);
    }
    return out;
}

TruncPoly TruncPoly::unit_inverse() const {
    const std::size_t n = truncation();
    if (n == 0 || !coeffs_.get(0)) throw InvalidInput("not a unit");
    // v_0 = 1, v_k = sum_{i=1..k} u_i v_{k-i}
    TruncPoly v(n);
    v.coeffs_.set(0);
    for (std::size_t k = 1; k < n; ++k) {
        bool acc = false;
        for (std::size_t i = 1; i <= k; ++i) acc ^= coeffs_.get(i) && v.coeffs_.get(k - i);
        v.coeffs_.set(k, acc);
    }
    return v;
}

std::string TruncPoly::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < truncation(); ++i) {
        if (!coeffs_.get(i)) continue;
        if (!s.empty()) s += " + ";
        s += i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i));
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t truncation)
    : rows_(rows), cols_(cols), truncation_(truncation), entries_(rows * cols, TruncPoly(truncation)) {}

bool PolyMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const TruncPoly& p) { return p.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_ || a.truncation_ != b.truncation_) {
        throw InvalidInput("polynomial matrix product shape mismatch");
    }
    PolyMatrix out(a.rows_, b.cols_, a.truncation_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const auto& bkj = b.at(k, j);
                if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

PolyMatrix PolyMatrix::from_coefficients(std::span<const F2Matrix> coefficients,
                                         std::size_t truncation) {
    if (coefficients.empty()) throw InvalidInput("no coefficient matrices");
    const std::size_t rows = coefficients.front().rows();
    const std::size_t cols = coefficients.front().cols();
    PolyMatrix out(rows, cols, truncation);
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (coefficients[k].rows() != rows || coefficients[k].cols() != cols) {
            throw InvalidInput("coefficient matrices differ in shape");
        }
        if (k >= truncation) continue;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (coefficients[k].get(r, c)) out.at(r, c).set_coeff(k);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- Barcode

Barcode& Barcode::operator+=(const Barcode& other) {
    free_rank += other.free_rank;
    torsion.insert(torsion.end(), other.torsion.begin(), other.torsion.end());
    std::sort(torsion.begin(), torsion.end());
    return *this;
}

std::string Barcode::to_string() const {
    std::ostringstream os;
    os << "(" << free_rank << ", {";
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
    os << "})";
    return os.str();
}

BarcodeDecomposition barcode_decomposition(const PolyMatrix& d) {
    if (d.truncation() == 0) throw InvalidInput("truncation must be at least 1");
    if (d.rows() != d.cols()) throw InvalidInput("differential must be square");
    if (!(d * d).is_zero()) throw NotAComplex("differential does not square to zero");

    const std::size_t n = d.rows();
    const std::size_t N = d.truncation();
    PolyMatrix a = d;
    std::vector<bool> row_done(n, false), col_done(n, false);
    BarcodeDecomposition out;
    std::size_t pivots = 0;

    for (;;) {
        std::size_t best = N, pr = n, pc = n;
        for (std::size_t c = 0; c < n && best > 0; ++c) {
            if (col_done[c]) continue;
            for (std::size_t r = 0; r < n; ++r) {
                if (row_done[r]) continue;
                const std::size_t v = a.at(r, c).valuation();
                if (v < best) {
                    best = v;
                    pr = r;
                    pc = c;
                    if (v == 0) break;
                }
            }
        }
        if (best == N) break;

        // Pivot p = t^best * u. Clear the pivot column via row operations;
        // every remaining entry has valuation >= best.
        const TruncPoly uinv = a.at(pr, pc).shifted_down(best).unit_inverse();
        for (std::size_t r = 0; r < n; ++r) {
            if (r == pr || row_done[r] || a.at(r, pc).is_zero()) continue;
            const TruncPoly q = a.at(r, pc).shifted_down(best) * uinv;
            for (std::size_t c = 0; c < n; ++c) {
                if (col_done[c] || a.at(pr, c).is_zero()) continue;
                a.at(r, c) += q * a.at(pr, c);
            }
        }
        // Column operations then only touch the pivot row.
        row_done[pr] = true;
        col_done[pc] = true;
        ++pivots;
        if (best == 0) {
            ++out.unit_factors;
        } else {
            out.barcode.torsion.push_back(best);
            out.invariant_factors.push_back(best);
        }
    }

    out.barcode.free_rank = n - 2 * pivots;
    std::sort(out.barcode.torsion.begin(), out.barcode.torsion.end());
    return out;
}

Barcode barcode(const PolyMatrix& d) { return barcode_decomposition(d).barcode; }

} // namespace freetwist
