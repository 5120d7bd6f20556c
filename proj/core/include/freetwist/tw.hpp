#pragma once

// Twisted complexes over a finite, minimal, strictly unital A-infinity
// category given by structure constants, over Z2 and ungraded.
//
// Conventions. A morphism a in hom(X, Y) goes from X to Y. Compositions are
// written mu^d(a_d, ..., a_1) with a_1 applied first, so mu^2(b, a) is
// "b after a". Internally every list of composable inputs is stored in
// application order a_1, a_2, ..., a_d.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "freetwist/f2lin.hpp"

namespace freetwist::tw {

using ObjectId = std::size_t;

class AInfCategory {
  public:
    // hom_dims[i][j] = dim hom(object i, object j).
    AInfCategory(std::vector<std::string> names, std::vector<std::vector<std::size_t>> hom_dims);

    std::size_t object_count() const { return names_.size(); }
    const std::string& name(ObjectId x) const { return names_.at(x); }
    std::size_t hom_dim(ObjectId x, ObjectId y) const { return hom_dims_.at(x).at(y); }

    void set_unit(ObjectId x, std::size_t basis_index);
    std::optional<std::size_t> unit(ObjectId x) const;
    BitVec unit_vector(ObjectId x) const;

    // mu^d on basis elements: objs = (X_0, ..., X_d), idx[k] is a basis index
    // of hom(X_k, X_{k+1}). `value` lives in hom(X_0, X_d).
    void set_product(std::span<const ObjectId> objs, std::span<const std::size_t> idx, const BitVec& value);
    // nullptr when the product vanishes.
    const BitVec* product(std::span<const ObjectId> objs, std::span<const std::size_t> idx) const;
    // Fill in mu^2(a, 1) = mu^2(1, a) = a for every object with a unit.
    void add_strict_units();

    // Largest d with a nonzero mu^d; at least 2.
    std::size_t max_order() const { return max_order_; }

    // Multilinear extension of mu^d. inputs[k] lies in hom(X_k, X_{k+1}).
    BitVec mu(std::span<const ObjectId> objs, std::span<const BitVec> inputs) const;

  private:
    struct Table {
        std::vector<std::size_t> radix;
        std::vector<BitVec> values;
        std::vector<std::uint8_t> nonzero;
    };
    std::uint64_t key(std::span<const ObjectId> objs) const;
    std::size_t flat_index(const Table& t, std::span<const std::size_t> idx) const;

    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> hom_dims_;
    std::vector<std::optional<std::size_t>> units_;
    std::unordered_map<std::uint64_t, Table> tables_;
    std::size_t max_order_ = 2;
};

using CategoryPtr = std::shared_ptr<const AInfCategory>;

struct CategoryViolation {
    std::size_t n = 0; // number of inputs, 0 for unit axioms
    std::vector<ObjectId> objects;
    std::vector<std::size_t> basis;
    std::string message;
};
std::vector<CategoryViolation> validate_category(const AInfCategory& c);

struct Summand {
    ObjectId object = 0;
    std::size_t multiplicity = 1;
    friend bool operator==(const Summand&, const Summand&) = default;
};

// Element of hom(X, Y) in the additive enlargement: for each pair of
// summands (s of X, t of Y) and each basis element h of hom(X_s, Y_t), a
// mult(Y_t) x mult(X_s) coefficient matrix.
class Morphism {
  public:
    using Key = std::pair<std::size_t, std::size_t>; // (source summand, target summand)
    using Coefficients = std::vector<F2Matrix>;

    const std::map<Key, Coefficients>& blocks() const { return blocks_; }
    const Coefficients* block(std::size_t src, std::size_t dst) const;
    // Creates the block zero-filled if absent.
    Coefficients& block(std::size_t src, std::size_t dst, std::size_t hom_dim, std::size_t rows,
                        std::size_t cols);
    void add(std::size_t src, std::size_t dst, std::size_t h, std::size_t hom_dim, const F2Matrix& m);

    Morphism& operator+=(const Morphism& other);
    void prune();
    bool is_zero() const;
    friend bool operator==(const Morphism& a, const Morphism& b);

  private:
    std::map<Key, Coefficients> blocks_;
};

struct TwObject {
    CategoryPtr cat;
    std::vector<Summand> summands;
    Morphism delta; // from this object to itself

    static TwObject plain(CategoryPtr cat, ObjectId x);
    static TwObject zero(CategoryPtr cat);
    std::size_t total_multiplicity() const;
    bool empty() const { return summands.empty(); }
};

// Basis of hom(X, Y) in the additive enlargement, ordered by source summand,
// target summand, hom basis element, target multiplicity index q and source
// multiplicity index p.
class HomBasis {
  public:
    HomBasis(const TwObject& x, const TwObject& y);
    HomBasis(TwObject&&, const TwObject&) = delete;
    HomBasis(const TwObject&, TwObject&&) = delete;

    std::size_t dim() const { return dim_; }
    std::size_t offset(std::size_t s, std::size_t t) const { return offsets_[s * targets_ + t]; }
    std::size_t index(std::size_t s, std::size_t t, std::size_t h, std::size_t q, std::size_t p) const;

    struct Coord {
        std::size_t s, t, h, q, p;
    };
    Coord coord(std::size_t i) const;

    BitVec flatten(const Morphism& f) const;
    Morphism unflatten(const BitVec& v) const;
    Morphism basis_morphism(std::size_t i) const;

  private:
    const TwObject* x_;
    const TwObject* y_;
    std::size_t targets_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
};

// mu^r of the additive enlargement. objs has r+1 entries X^0..X^r and
// inputs[k] : objs[k] -> objs[k+1].
Morphism mu_sigma(std::span<const TwObject* const> objs, std::span<const Morphism* const> inputs);

// Deformed composition mu^d_Tw: sum over all ways of inserting connections
// between and around the inputs, up to the category's maximal order.
Morphism mu_tw(std::span<const TwObject* const> objs, std::span<const Morphism* const> inputs);

Morphism mu1(const TwObject& x, const TwObject& y, const Morphism& a);
// b after a, with a : x -> y and b : y -> z.
Morphism compose2(const TwObject& x, const TwObject& y, const TwObject& z, const Morphism& b,
                  const Morphism& a);
Morphism identity(const TwObject& x);

struct MCViolation {
    std::string kind; // "filtration", "maurer-cartan" or "shape"
    std::string message;
};
std::vector<MCViolation> validate_mc(const TwObject& x);

struct HomComplex {
    std::size_t dim = 0;
    F2Matrix differential;
};
HomComplex hom_complex(const TwObject& x, const TwObject& y);
std::size_t hf(const TwObject& x, const TwObject& y);

// Throws ValidationFailure if f is not a cocycle.
TwObject cone(const TwObject& x, const TwObject& y, const Morphism& f);

struct Evaluation {
    TwObject source; // hom(L, X) (x) L
    Morphism ev;     // source -> X
};
Evaluation evaluation(ObjectId l, const TwObject& x);

struct Coevaluation {
    TwObject target; // hom(X, L)^dual (x) L
    Morphism coev;   // X -> target
};
Coevaluation coevaluation(const TwObject& x, ObjectId l);

// Throws InvalidInput unless hom(L, L) is two dimensional with eps^2 = 0.
void check_spherical(const AInfCategory& c, ObjectId l);
// Basis index of eps in hom(L, L).
std::size_t eps_index(const AInfCategory& c, ObjectId l);

TwObject twist(ObjectId l, const TwObject& x);
TwObject untwist(ObjectId l, const TwObject& x);

// Gaussian elimination of invertible components between summands over the
// same object. Returns an object with every multiplicity equal to one.
// Requires max_order() == 2.
TwObject reduce(const TwObject& x);

// Quotient by the subobject given as a list of spanning vectors in each
// summand's multiplicity space. Throws InvalidInput if the subobject is not
// closed under the connection.
TwObject quotient(const TwObject& x, const std::vector<std::vector<BitVec>>& sub);

// Cohomology-level composition H(Y,Z) x H(X,Y) -> H(X,Z) on bases chosen by
// CohomologyBasis. Column (i_b * dimH(X,Y) + i_a) holds the class of
// rep_b after rep_a.
struct ProductTable {
    std::size_t dim_xy = 0, dim_yz = 0, dim_xz = 0;
    F2Matrix table;
    std::size_t image_rank = 0;
    bool surjective = false;
    // Only meaningful when X == Z: whether the class of the identity is hit.
    std::optional<bool> unit_in_image;
};
ProductTable h_product(const TwObject& x, const TwObject& y, const TwObject& z, bool x_equals_z = false);

// Module structures over hom(L, L) = A: entry k-1 is m_k with
//   m_k(a) = mu^k_Tw(a, eps, ..., eps)  on hom(L, X)  (right module),
//   m_k(b) = mu^k_Tw(eps, ..., eps, b)  on hom(X, L)  (left module),
// so m_1 is the hom complex differential.
std::vector<F2Matrix> right_actions(ObjectId l, const TwObject& x);
std::vector<F2Matrix> left_actions(const TwObject& x, ObjectId l);

// The twisted complex with summands S_{n-1}, ..., S_0, X where
// S_c = hom(L, X) (x) eps^c (x) L, connected by the evaluation map
// S_0 -> X, eps-evaluation S_c -> S_{c-1} and the module maps
// m_i (x) 1 : S_c -> S_{c-i+1}.
TwObject build_Tn(ObjectId l, const TwObject& x, std::size_t n);
// The same without X: the part whose hom from a plain object is the
// truncated bar complex.
TwObject build_Cn(ObjectId l, const TwObject& x, std::size_t n);

} // namespace freetwist::tw
