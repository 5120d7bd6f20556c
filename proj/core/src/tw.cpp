#include "freetwist/tw.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "freetwist/error.hpp"

namespace freetwist::tw {

// ---------------------------------------------------------------- AInfCategory

AInfCategory::AInfCategory(std::vector<std::string> names,
                           std::vector<std::vector<std::size_t>> hom_dims)
    : names_(std::move(names)), hom_dims_(std::move(hom_dims)), units_(names_.size()) {
    if (hom_dims_.size() != names_.size()) throw InvalidInput("hom dimension table has wrong size");
    for (const auto& row : hom_dims_) {
        if (row.size() != names_.size()) throw InvalidInput("hom dimension table is not square");
    }
}

void AInfCategory::set_unit(ObjectId x, std::size_t basis_index) {
    if (x >= object_count() || basis_index >= hom_dim(x, x)) throw InvalidInput("unit out of range");
    units_[x] = basis_index;
}

std::optional<std::size_t> AInfCategory::unit(ObjectId x) const { return units_.at(x); }

BitVec AInfCategory::unit_vector(ObjectId x) const {
    const auto u = unit(x);
    if (!u) throw InvalidInput("object " + name(x) + " has no unit");
    return BitVec::unit(hom_dim(x, x), *u);
}

std::uint64_t AInfCategory::key(std::span<const ObjectId> objs) const {
    std::uint64_t k = 0;
    const std::uint64_t base = object_count() + 1;
    for (auto it = objs.rbegin(); it != objs.rend(); ++it) k = k * base + (*it + 1);
    return k;
}

std::size_t AInfCategory::flat_index(const Table& t, std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t k = idx.size(); k > 0; --k) f = f * t.radix[k - 1] + idx[k - 1];
    return f;
}

void AInfCategory::set_product(std::span<const ObjectId> objs, std::span<const std::size_t> idx,
                               const BitVec& value) {
    if (objs.size() < 3 || idx.size() + 1 != objs.size()) throw InvalidInput("malformed product signature");
    for (auto o : objs) {
        if (o >= object_count()) throw InvalidInput("object out of range");
    }
    std::vector<std::size_t> radix(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        radix[k] = hom_dim(objs[k], objs[k + 1]);
        if (idx[k] >= radix[k]) throw InvalidInput("basis index out of range");
    }
    if (value.size() != hom_dim(objs.front(), objs.back())) throw InvalidInput("product value has wrong size");

    auto [it, inserted] = tables_.try_emplace(key(objs));
    Table& t = it->second;
    if (inserted) {
        const std::size_t total =
            std::accumulate(radix.begin(), radix.end(), std::size_t{1}, std::multiplies<>());
        t.radix = radix;
        t.values.assign(total, BitVec(value.size()));
        t.nonzero.assign(total, 0);
    }
    const std::size_t f = flat_index(t, idx);
    t.values[f] = value;
    t.nonzero[f] = value.any() ? 1 : 0;
    if (value.any()) max_order_ = std::max(max_order_, idx.size());
}

const BitVec* AInfCategory::product(std::span<const ObjectId> objs, std::span<const std::size_t> idx) const {
    auto it = tables_.find(key(objs));
    if (it == tables_.end()) return nullptr;
    const std::size_t f = flat_index(it->second, idx);
    return it->second.nonzero[f] ? &it->second.values[f] : nullptr;
}

void AInfCategory::add_strict_units() {
    for (ObjectId x = 0; x < object_count(); ++x) {
        const auto u = unit(x);
        if (!u) continue;
        for (ObjectId y = 0; y < object_count(); ++y) {
            for (std::size_t a = 0; a < hom_dim(x, y); ++a) {
                // a after 1_x, with 1_x : x -> x and a : x -> y
                const ObjectId o1[] = {x, x, y};
                const std::size_t i1[] = {*u, a};
                set_product(o1, i1, BitVec::unit(hom_dim(x, y), a));
            }
            for (std::size_t a = 0; a < hom_dim(y, x); ++a) {
                const ObjectId o2[] = {y, x, x};
                const std::size_t i2[] = {a, *u};
                set_product(o2, i2, BitVec::unit(hom_dim(y, x), a));
            }
        }
    }
}

BitVec AInfCategory::mu(std::span<const ObjectId> objs, std::span<const BitVec> inputs) const {
    BitVec out(hom_dim(objs.front(), objs.back()));
    std::vector<std::size_t> idx(inputs.size());
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == inputs.size()) {
            if (const BitVec* v = product(objs, idx)) out ^= *v;
            return;
        }
        for (std::size_t i = 0; i < inputs[k].size(); ++i) {
            if (!inputs[k].get(i)) continue;
            idx[k] = i;
            self(self, k + 1);
        }
    };
    if (inputs.size() >= 2) rec(rec, 0);
    return out;
}

std::vector<CategoryViolation> validate_category(const AInfCategory& c) {
    std::vector<CategoryViolation> out;
    const std::size_t D = c.max_order();
    const std::size_t nobj = c.object_count();

    for (ObjectId x = 0; x < nobj; ++x) {
        if (!c.unit(x)) out.push_back({0, {x}, {}, "object " + c.name(x) + " has no unit"});
    }
    if (!out.empty()) return out;

    std::vector<ObjectId> objs;
    std::vector<std::size_t> idx;

    auto check_tuple = [&](std::size_t n) {
        BitVec total(c.hom_dim(objs.front(), objs.back()));
        for (std::size_t s = 2; s <= std::min(n, D); ++s) {
            for (std::size_t r = 0; r + s <= n; ++r) {
                const std::size_t t = n - r - s;
                const std::size_t outer = r + t + 1;
                if (outer < 2 || outer > D) continue;
                const std::span<const ObjectId> inner_objs(objs.data() + r, s + 1);
                const std::span<const std::size_t> inner_idx(idx.data() + r, s);
                const BitVec* inner = c.product(inner_objs, inner_idx);
                if (!inner) continue;
                std::vector<ObjectId> oobjs(objs.begin(), objs.begin() + static_cast<std::ptrdiff_t>(r + 1));
                oobjs.insert(oobjs.end(), objs.begin() + static_cast<std::ptrdiff_t>(r + s), objs.end());
                std::vector<BitVec> inputs;
                for (std::size_t k = 0; k < r; ++k) {
                    inputs.push_back(BitVec::unit(c.hom_dim(objs[k], objs[k + 1]), idx[k]));
                }
                inputs.push_back(*inner);
                for (std::size_t k = r + s; k < n; ++k) {
                    inputs.push_back(BitVec::unit(c.hom_dim(objs[k], objs[k + 1]), idx[k]));
                }
                total ^= c.mu(oobjs, inputs);
            }
        }
        if (total.any()) {
            out.push_back({n, objs, idx, "A-infinity relation fails with " + std::to_string(n) + " inputs"});
        }
    };

    for (std::size_t n = 3; n <= 2 * D; ++n) {
        // Enumerate composable object chains and basis tuples.
        auto rec_obj = [&](auto&& self) -> void {
            if (objs.size() == n + 1) {
                auto rec_idx = [&](auto&& self2, std::size_t k) -> void {
                    if (k == n) {
                        check_tuple(n);
                        return;
                    }
                    for (std::size_t i = 0; i < c.hom_dim(objs[k], objs[k + 1]); ++i) {
                        idx[k] = i;
                        self2(self2, k + 1);
                    }
                };
                idx.assign(n, 0);
                rec_idx(rec_idx, 0);
                return;
            }
            for (ObjectId y = 0; y < nobj; ++y) {
                if (!objs.empty() && c.hom_dim(objs.back(), y) == 0) continue;
                objs.push_back(y);
                self(self);
                objs.pop_back();
            }
        };
        objs.clear();
        rec_obj(rec_obj);
    }

    // Strict units.
    for (ObjectId x = 0; x < nobj; ++x) {
        const std::size_t u = *c.unit(x);
        for (ObjectId y = 0; y < nobj; ++y) {
            for (std::size_t a = 0; a < c.hom_dim(x, y); ++a) {
                const ObjectId o[] = {x, x, y};
                const BitVec in[] = {BitVec::unit(c.hom_dim(x, x), u), BitVec::unit(c.hom_dim(x, y), a)};
                if (c.mu(o, in) != BitVec::unit(c.hom_dim(x, y), a)) {
                    out.push_back({0, {x, x, y}, {u, a}, "right unit law fails"});
                }
            }
            for (std::size_t a = 0; a < c.hom_dim(y, x); ++a) {
                const ObjectId o[] = {y, x, x};
                const BitVec in[] = {BitVec::unit(c.hom_dim(y, x), a), BitVec::unit(c.hom_dim(x, x), u)};
                if (c.mu(o, in) != BitVec::unit(c.hom_dim(y, x), a)) {
                    out.push_back({0, {y, x, x}, {a, u}, "left unit law fails"});
                }
            }
        }
    }
    for (std::size_t d = 3; d <= D; ++d) {
        auto rec_obj = [&](auto&& self) -> void {
            if (objs.size() == d + 1) {
                auto rec_idx = [&](auto&& self2, std::size_t k, bool has_unit) -> void {
                    if (k == d) {
                        if (has_unit && c.product(objs, idx)) {
                            out.push_back({0, objs, idx, "higher product with a unit input is nonzero"});
                        }
                        return;
                    }
                    for (std::size_t i = 0; i < c.hom_dim(objs[k], objs[k + 1]); ++i) {
                        idx[k] = i;
                        const bool is_unit = objs[k] == objs[k + 1] && *c.unit(objs[k]) == i;
                        self2(self2, k + 1, has_unit || is_unit);
                    }
                };
                idx.assign(d, 0);
                rec_idx(rec_idx, 0, false);
                return;
            }
            for (ObjectId y = 0; y < nobj; ++y) {
                if (!objs.empty() && c.hom_dim(objs.back(), y) == 0) continue;
                objs.push_back(y);
                self(self);
                objs.pop_back();
            }
        };
        objs.clear();
        rec_obj(rec_obj);
    }
    return out;
}

// ---------------------------------------------------------------- Morphism

const Morphism::Coefficients* Morphism::block(std::size_t src, std::size_t dst) const {
    auto it = blocks_.find({src, dst});
    return it == blocks_.end() ? nullptr : &it->second;
}

Morphism::Coefficients& Morphism::block(std::size_t src, std::size_t dst, std::size_t hom_dim,
                                        std::size_t rows, std::size_t cols) {
    auto [it, inserted] = blocks_.try_emplace({src, dst});
    if (inserted) it->second.assign(hom_dim, F2Matrix(rows, cols));
    return it->second;
}

void Morphism::add(std::size_t src, std::size_t dst, std::size_t h, std::size_t hom_dim, const F2Matrix& m) {
    block(src, dst, hom_dim, m.rows(), m.cols())[h] += m;
}

Morphism& Morphism::operator+=(const Morphism& other) {
    for (const auto& [k, coeffs] : other.blocks_) {
        auto [it, inserted] = blocks_.try_emplace(k, coeffs);
        if (inserted) continue;
        if (it->second.size() != coeffs.size()) throw InvalidInput("morphism block shape mismatch");
        for (std::size_t h = 0; h < coeffs.size(); ++h) it->second[h] += coeffs[h];
    }
    return *this;
}

void Morphism::prune() {
    for (auto it = blocks_.begin(); it != blocks_.end();) {
        const bool zero = std::all_of(it->second.begin(), it->second.end(),
                                      [](const F2Matrix& m) { return m.is_zero(); });
        it = zero ? blocks_.erase(it) : std::next(it);
    }
}

bool Morphism::is_zero() const {
    for (const auto& [k, coeffs] : blocks_) {
        for (const auto& m : coeffs) {
            if (!m.is_zero()) return false;
        }
    }
    return true;
}

bool operator==(const Morphism& a, const Morphism& b) {
    Morphism x = a, y = b;
    x.prune();
    y.prune();
    return x.blocks_ == y.blocks_;
}

// ---------------------------------------------------------------- TwObject

TwObject TwObject::plain(CategoryPtr cat, ObjectId x) {
    if (x >= cat->object_count()) throw InvalidInput("object index out of range");
    TwObject t;
    t.cat = std::move(cat);
    t.summands.push_back({x, 1});
    return t;
}

TwObject TwObject::zero(CategoryPtr cat) {
    TwObject t;
    t.cat = std::move(cat);
    return t;
}

std::size_t TwObject::total_multiplicity() const {
    std::size_t n = 0;
    for (const auto& s : summands) n += s.multiplicity;
    return n;
}

namespace {

void check_same_category(const TwObject& x, const TwObject& y) {
    if (!x.cat || !y.cat || x.cat.get() != y.cat.get()) throw InvalidInput("objects live over different categories");
}

} // namespace

// ---------------------------------------------------------------- HomBasis

HomBasis::HomBasis(const TwObject& x, const TwObject& y) : x_(&x), y_(&y), targets_(y.summands.size()) {
    check_same_category(x, y);
    offsets_.resize(x.summands.size() * targets_ + 1);
    std::size_t off = 0;
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        for (std::size_t t = 0; t < targets_; ++t) {
            offsets_[s * targets_ + t] = off;
            off += x.cat->hom_dim(x.summands[s].object, y.summands[t].object) * y.summands[t].multiplicity *
                   x.summands[s].multiplicity;
        }
    }
    offsets_.back() = off;
    dim_ = off;
}

std::size_t HomBasis::index(std::size_t s, std::size_t t, std::size_t h, std::size_t q, std::size_t p) const {
    const std::size_t v = x_->summands[s].multiplicity;
    const std::size_t w = y_->summands[t].multiplicity;
    return offset(s, t) + (h * w + q) * v + p;
}

HomBasis::Coord HomBasis::coord(std::size_t i) const {
    if (i >= dim_) throw InvalidInput("hom basis index out of range");
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end() - 1, i);
    const std::size_t flat = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    const std::size_t s = flat / targets_;
    const std::size_t t = flat % targets_;
    const std::size_t v = x_->summands[s].multiplicity;
    const std::size_t w = y_->summands[t].multiplicity;
    std::size_t r = i - offsets_[flat];
    const std::size_t p = r % v;
    r /= v;
    const std::size_t q = r % w;
    const std::size_t h = r / w;
    return {s, t, h, q, p};
}

BitVec HomBasis::flatten(const Morphism& f) const {
    BitVec v(dim_);
    for (const auto& [key, coeffs] : f.blocks()) {
        const auto [s, t] = key;
        if (s >= x_->summands.size() || t >= targets_) throw InvalidInput("morphism block outside hom space");
        for (std::size_t h = 0; h < coeffs.size(); ++h) {
            const auto& m = coeffs[h];
            for (std::size_t q = 0; q < m.rows(); ++q) {
                for (std::size_t p = 0; p < m.cols(); ++p) {
                    if (m.get(q, p)) v.flip(index(s, t, h, q, p));
                }
            }
        }
    }
    return v;
}

Morphism HomBasis::unflatten(const BitVec& v) const {
    if (v.size() != dim_) throw InvalidInput("vector outside hom space");
    Morphism f;
    for (std::size_t i = v.lowest(); i < dim_; ++i) {
        if (!v.get(i)) continue;
        const auto c = coord(i);
        const ObjectId a = x_->summands[c.s].object;
        const ObjectId b = y_->summands[c.t].object;
        auto& coeffs = f.block(c.s, c.t, x_->cat->hom_dim(a, b), y_->summands[c.t].multiplicity,
                               x_->summands[c.s].multiplicity);
        coeffs[c.h].flip(c.q, c.p);
    }
    return f;
}

Morphism HomBasis::basis_morphism(std::size_t i) const { return unflatten(BitVec::unit(dim_, i)); }

// ---------------------------------------------------------------- compositions

Morphism mu_sigma(std::span<const TwObject* const> objs, std::span<const Morphism* const> inputs) {
    const std::size_t r = inputs.size();
    if (objs.size() != r + 1) throw InvalidInput("mu_sigma: object/input count mismatch");
    Morphism out;
    if (r < 2) return out; // the category is minimal
    const AInfCategory& cat = *objs.front()->cat;
    if (r > cat.max_order()) return out;

    // adj[k][s] = blocks of input k leaving summand s of objs[k].
    using Edge = std::pair<std::size_t, const Morphism::Coefficients*>;
    std::vector<std::vector<std::vector<Edge>>> adj(r);
    for (std::size_t k = 0; k < r; ++k) {
        adj[k].resize(objs[k]->summands.size());
        for (const auto& [key, coeffs] : inputs[k]->blocks()) adj[k].at(key.first).emplace_back(key.second, &coeffs);
        if (inputs[k]->blocks().empty()) return out;
    }

    std::vector<ObjectId> path(r + 1);
    std::vector<std::size_t> idx(r);
    const TwObject& x0 = *objs.front();
    const TwObject& xr = *objs.back();

    auto walk = [&](auto&& self, std::size_t k, std::size_t s0, std::size_t s, const F2Matrix* acc) -> void {
        for (const auto& [dst, coeffs] : adj[k][s]) {
            path[k + 1] = objs[k + 1]->summands[dst].object;
            for (std::size_t h = 0; h < coeffs->size(); ++h) {
                const F2Matrix& m = (*coeffs)[h];
                if (m.is_zero()) continue;
                idx[k] = h;
                if (k + 1 == r) {
                    const BitVec* value = cat.product(path, idx);
                    if (!value) continue;
                    const F2Matrix prod = acc ? m * *acc : m;
                    if (prod.is_zero()) continue;
                    const std::size_t hd = cat.hom_dim(x0.summands[s0].object, xr.summands[dst].object);
                    auto& target = out.block(s0, dst, hd, prod.rows(), prod.cols());
                    for (std::size_t b = 0; b < hd; ++b) {
                        if (value->get(b)) target[b] += prod;
                    }
                } else {
                    const F2Matrix prod = acc ? m * *acc : m;
                    if (prod.is_zero()) continue;
                    self(self, k + 1, s0, dst, &prod);
                }
            }
        }
    };
    for (std::size_t s0 = 0; s0 < x0.summands.size(); ++s0) {
        path[0] = x0.summands[s0].object;
        walk(walk, 0, s0, s0, nullptr);
    }
    out.prune();
    return out;
}

Morphism mu_tw(std::span<const TwObject* const> objs, std::span<const Morphism* const> inputs) {
    const std::size_t d = inputs.size();
    if (objs.size() != d + 1) throw InvalidInput("mu_tw: object/input count mismatch");
    for (std::size_t k = 1; k < objs.size(); ++k) check_same_category(*objs[0], *objs[k]);
    const std::size_t D = objs.front()->cat->max_order();
    Morphism out;
    if (d > D) return out;

    std::vector<std::size_t> ins(d + 1, 0);
    std::vector<const TwObject*> seq_objs;
    std::vector<const Morphism*> seq_inputs;
    auto rec = [&](auto&& self, std::size_t k, std::size_t budget) -> void {
        if (k == d + 1) {
            const std::size_t total = d + std::accumulate(ins.begin(), ins.end(), std::size_t{0});
            if (total < 2) return;
            seq_objs.clear();
            seq_inputs.clear();
            for (std::size_t j = 0; j <= d; ++j) {
                if (j > 0) seq_inputs.push_back(inputs[j - 1]);
                seq_objs.push_back(objs[j]);
                for (std::size_t i = 0; i < ins[j]; ++i) {
                    seq_inputs.push_back(&objs[j]->delta);
                    seq_objs.push_back(objs[j]);
                }
            }
            out += mu_sigma(seq_objs, seq_inputs);
            return;
        }
        const bool has_delta = !objs[k]->delta.blocks().empty();
        for (std::size_t i = 0; i <= (has_delta ? budget : 0); ++i) {
            ins[k] = i;
            self(self, k + 1, budget - i);
        }
        ins[k] = 0;
    };
    rec(rec, 0, D - d);
    out.prune();
    return out;
}

Morphism mu1(const TwObject& x, const TwObject& y, const Morphism& a) {
    const TwObject* objs[] = {&x, &y};
    const Morphism* in[] = {&a};
    return mu_tw(objs, in);
}

Morphism compose2(const TwObject& x, const TwObject& y, const TwObject& z, const Morphism& b,
                  const Morphism& a) {
    const TwObject* objs[] = {&x, &y, &z};
    const Morphism* in[] = {&a, &b};
    return mu_tw(objs, in);
}

Morphism identity(const TwObject& x) {
    Morphism id;
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        const ObjectId o = x.summands[s].object;
        const auto u = x.cat->unit(o);
        if (!u) throw InvalidInput("object without a unit");
        id.add(s, s, *u, x.cat->hom_dim(o, o), F2Matrix::identity(x.summands[s].multiplicity));
    }
    return id;
}

// ---------------------------------------------------------------- validation

namespace {

std::vector<std::string> shape_problems(const TwObject& x, const Morphism& f, const TwObject& y) {
    std::vector<std::string> out;
    for (const auto& [key, coeffs] : f.blocks()) {
        const auto [s, t] = key;
        if (s >= x.summands.size() || t >= y.summands.size()) {
            out.push_back("block (" + std::to_string(s) + "," + std::to_string(t) + ") out of range");
            continue;
        }
        const std::size_t hd = x.cat->hom_dim(x.summands[s].object, y.summands[t].object);
        if (coeffs.size() != hd) {
            out.push_back("block (" + std::to_string(s) + "," + std::to_string(t) + ") has " +
                          std::to_string(coeffs.size()) + " coefficients, expected " + std::to_string(hd));
            continue;
        }
        for (const auto& m : coeffs) {
            if (m.rows() != y.summands[t].multiplicity || m.cols() != x.summands[s].multiplicity) {
                out.push_back("block (" + std::to_string(s) + "," + std::to_string(t) +
                              ") has a coefficient of the wrong shape");
                break;
            }
        }
    }
    return out;
}

} // namespace

std::vector<MCViolation> validate_mc(const TwObject& x) {
    std::vector<MCViolation> out;
    if (!x.cat) return {{"shape", "object has no category"}};
    for (auto& p : shape_problems(x, x.delta, x)) out.push_back({"shape", p});
    if (!out.empty()) return out;

    // Filtration: the flag K_0 = 0, K_{i+1} = { v : every component of delta
    // maps v into K_i } must exhaust the total multiplicity space.
    const std::size_t total = x.total_multiplicity();
    std::vector<std::size_t> off(x.summands.size() + 1, 0);
    for (std::size_t s = 0; s < x.summands.size(); ++s) off[s + 1] = off[s] + x.summands[s].multiplicity;
    struct Component {
        std::size_t s, t;
        const F2Matrix* m;
    };
    std::vector<Component> comps;
    for (const auto& [key, coeffs] : x.delta.blocks()) {
        for (const auto& m : coeffs) {
            if (!m.is_zero()) comps.push_back({key.first, key.second, &m});
        }
    }
    Echelon flag(total);
    for (;;) {
        F2Matrix stacked(comps.size() * total, total);
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
            const auto& c = comps[ci];
            for (std::size_t p = 0; p < c.m->cols(); ++p) {
                BitVec image(total);
                for (std::size_t q = 0; q < c.m->rows(); ++q) {
                    if (c.m->get(q, p)) image.set(off[c.t] + q);
                }
                const BitVec reduced = flag.reduce(image);
                for (std::size_t i = reduced.lowest(); i < total; ++i) {
                    if (reduced.get(i)) stacked.set(ci * total + i, off[c.s] + p);
                }
            }
        }
        const auto kernel = kernel_basis(stacked);
        std::size_t grew = 0;
        for (const auto& v : kernel) grew += flag.insert(v) ? 1 : 0;
        if (grew == 0) break;
    }
    if (flag.dim() < total) {
        out.push_back({"filtration", "connection is not nilpotent: no filtration makes it strictly lower triangular"});
        return out;
    }

    Morphism mc;
    const std::size_t D = x.cat->max_order();
    for (std::size_t r = 2; r <= D; ++r) {
        std::vector<const TwObject*> objs(r + 1, &x);
        std::vector<const Morphism*> in(r, &x.delta);
        mc += mu_sigma(objs, in);
    }
    if (!mc.is_zero()) out.push_back({"maurer-cartan", "sum of mu^r(delta, ..., delta) is nonzero"});
    return out;
}

// ---------------------------------------------------------------- hom complexes

HomComplex hom_complex(const TwObject& x, const TwObject& y) {
    check_same_category(x, y);
    const HomBasis basis(x, y);
    HomComplex hc;
    hc.dim = basis.dim();
    hc.differential = F2Matrix(hc.dim, hc.dim);
    if (x.delta.blocks().empty() && y.delta.blocks().empty()) return hc;
    for (std::size_t j = 0; j < hc.dim; ++j) {
        const BitVec col = basis.flatten(mu1(x, y, basis.basis_morphism(j)));
        for (std::size_t i = col.lowest(); i < hc.dim; ++i) {
            if (col.get(i)) hc.differential.set(i, j);
        }
    }
    return hc;
}

std::size_t hf(const TwObject& x, const TwObject& y) {
    return ungraded_cohomology_rank(hom_complex(x, y).differential);
}

// ---------------------------------------------------------------- cones

namespace {

Morphism shifted(const Morphism& f, std::size_t src_shift, std::size_t dst_shift) {
    Morphism out;
    for (const auto& [key, coeffs] : f.blocks()) {
        auto& b = out.block(key.first + src_shift, key.second + dst_shift, coeffs.size(),
                            coeffs.empty() ? 0 : coeffs.front().rows(), coeffs.empty() ? 0 : coeffs.front().cols());
        b = coeffs;
    }
    return out;
}

} // namespace

TwObject cone(const TwObject& x, const TwObject& y, const Morphism& f) {
    check_same_category(x, y);
    const auto problems = shape_problems(x, f, y);
    if (!problems.empty()) throw InvalidInput("cone: " + problems.front());
    if (!mu1(x, y, f).is_zero()) throw ValidationFailure("cone: morphism is not a cocycle");
    TwObject c;
    c.cat = x.cat;
    c.summands = x.summands;
    c.summands.insert(c.summands.end(), y.summands.begin(), y.summands.end());
    const std::size_t nx = x.summands.size();
    c.delta = x.delta;
    c.delta += shifted(y.delta, nx, nx);
    c.delta += shifted(f, 0, nx);
    c.delta.prune();
    return c;
}

Evaluation evaluation(ObjectId l, const TwObject& x) {
    const TwObject pl = TwObject::plain(x.cat, l);
    const HomBasis basis(pl, x);
    const HomComplex hc = hom_complex(pl, x);
    const std::size_t H = hc.dim;
    Evaluation e;
    e.source = TwObject::zero(x.cat);
    if (H == 0) return e;
    e.source.summands.push_back({l, H});
    const AInfCategory& cat = *x.cat;
    if (!hc.differential.is_zero()) {
        e.source.delta.add(0, 0, *cat.unit(l), cat.hom_dim(l, l), hc.differential);
    }
    for (std::size_t j = 0; j < H; ++j) {
        const auto c = basis.coord(j);
        const ObjectId xt = x.summands[c.t].object;
        auto& coeffs = e.ev.block(0, c.t, cat.hom_dim(l, xt), x.summands[c.t].multiplicity, H);
        coeffs[c.h].set(c.q, j);
    }
    return e;
}

Coevaluation coevaluation(const TwObject& x, ObjectId l) {
    const TwObject pl = TwObject::plain(x.cat, l);
    const HomBasis basis(x, pl);
    const HomComplex hc = hom_complex(x, pl);
    const std::size_t G = hc.dim;
    Coevaluation c;
    c.target = TwObject::zero(x.cat);
    if (G == 0) return c;
    c.target.summands.push_back({l, G});
    const AInfCategory& cat = *x.cat;
    if (!hc.differential.is_zero()) {
        c.target.delta.add(0, 0, *cat.unit(l), cat.hom_dim(l, l), hc.differential.transpose());
    }
    for (std::size_t j = 0; j < G; ++j) {
        const auto co = basis.coord(j);
        const ObjectId xs = x.summands[co.s].object;
        auto& coeffs = c.coev.block(co.s, 0, cat.hom_dim(xs, l), G, x.summands[co.s].multiplicity);
        coeffs[co.h].set(j, co.p);
    }
    return c;
}

void check_spherical(const AInfCategory& c, ObjectId l) {
    if (l >= c.object_count()) throw InvalidInput("object index out of range");
    if (c.hom_dim(l, l) != 2 || !c.unit(l)) {
        throw InvalidInput("hom(" + c.name(l) + ", " + c.name(l) + ") is not two dimensional with a unit");
    }
    const std::size_t e = eps_index(c, l);
    const ObjectId o[] = {l, l, l};
    const std::size_t i[] = {e, e};
    if (c.product(o, i)) throw InvalidInput("eps^2 != 0 in hom(" + c.name(l) + ", " + c.name(l) + ")");
}

std::size_t eps_index(const AInfCategory& c, ObjectId l) { return *c.unit(l) == 0 ? 1 : 0; }

TwObject twist(ObjectId l, const TwObject& x) {
    check_spherical(*x.cat, l);
    const Evaluation e = evaluation(l, x);
    return cone(e.source, x, e.ev);
}

TwObject untwist(ObjectId l, const TwObject& x) {
    check_spherical(*x.cat, l);
    const Coevaluation c = coevaluation(x, l);
    return cone(x, c.target, c.coev);
}

// ---------------------------------------------------------------- reduction

TwObject reduce(const TwObject& x) {
    const AInfCategory& cat = *x.cat;
    if (cat.max_order() > 2) throw InvalidInput("reduce requires a category without higher products");

    // Explode multiplicities into one-dimensional slots.
    std::vector<ObjectId> obj;
    std::vector<std::size_t> first(x.summands.size());
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        first[s] = obj.size();
        for (std::size_t i = 0; i < x.summands[s].multiplicity; ++i) obj.push_back(x.summands[s].object);
    }
    const std::size_t n = obj.size();
    // d[a][b] = component of delta from slot a to slot b, in hom(obj[a], obj[b]).
    std::vector<std::vector<std::optional<BitVec>>> d(n, std::vector<std::optional<BitVec>>(n));
    for (const auto& [key, coeffs] : x.delta.blocks()) {
        const auto [s, t] = key;
        for (std::size_t h = 0; h < coeffs.size(); ++h) {
            const auto& m = coeffs[h];
            for (std::size_t q = 0; q < m.rows(); ++q) {
                for (std::size_t p = 0; p < m.cols(); ++p) {
                    if (!m.get(q, p)) continue;
                    auto& e = d[first[s] + p][first[t] + q];
                    if (!e) e = BitVec(cat.hom_dim(obj[first[s] + p], obj[first[t] + q]));
                    e->flip(h);
                }
            }
        }
    }

    auto compose = [&](ObjectId a, ObjectId b, ObjectId c, const BitVec& g, const BitVec& f) {
        const ObjectId o[] = {a, b, c};
        const BitVec in[] = {f, g};
        return cat.mu(o, in); // g after f
    };
    // Inverse of an element of End(o), if it has one.
    auto invert = [&](ObjectId o, const BitVec& f) -> std::optional<BitVec> {
        const std::size_t dim = cat.hom_dim(o, o);
        F2Matrix left(dim, dim); // y -> y after f
        for (std::size_t j = 0; j < dim; ++j) {
            const BitVec col = compose(o, o, o, BitVec::unit(dim, j), f);
            for (std::size_t i = 0; i < dim; ++i) {
                if (col.get(i)) left.set(i, j);
            }
        }
        auto y = solve(left, cat.unit_vector(o));
        if (!y) return std::nullopt;
        if (compose(o, o, o, f, *y) != cat.unit_vector(o)) return std::nullopt;
        return y;
    };

    std::vector<bool> alive(n, true);
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t a = 0; a < n && !progress; ++a) {
            if (!alive[a]) continue;
            for (std::size_t b = 0; b < n && !progress; ++b) {
                if (b == a || !alive[b] || obj[a] != obj[b] || !d[a][b] || d[a][b]->none()) continue;
                const auto inv = invert(obj[a], *d[a][b]);
                if (!inv) continue;
                // delta'(x -> y) = delta(x -> y) + delta(a -> y) inv delta(x -> b)
                for (std::size_t xs = 0; xs < n; ++xs) {
                    if (!alive[xs] || xs == a || xs == b || !d[xs][b] || d[xs][b]->none()) continue;
                    const BitVec head = compose(obj[xs], obj[b], obj[a], *inv, *d[xs][b]);
                    if (head.none()) continue;
                    for (std::size_t ys = 0; ys < n; ++ys) {
                        if (!alive[ys] || ys == a || ys == b || !d[a][ys] || d[a][ys]->none()) continue;
                        const BitVec term = compose(obj[xs], obj[a], obj[ys], *d[a][ys], head);
                        if (term.none()) continue;
                        auto& e = d[xs][ys];
                        if (!e) e = BitVec(cat.hom_dim(obj[xs], obj[ys]));
                        *e ^= term;
                    }
                }
                alive[a] = alive[b] = false;
                progress = true;
            }
        }
    }

    TwObject out = TwObject::zero(x.cat);
    std::vector<std::size_t> slot_to_summand(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        slot_to_summand[a] = out.summands.size();
        out.summands.push_back({obj[a], 1});
    }
    const F2Matrix one = F2Matrix::identity(1);
    for (std::size_t a = 0; a < n; ++a) {
        if (!alive[a]) continue;
        for (std::size_t b = 0; b < n; ++b) {
            if (!alive[b] || !d[a][b]) continue;
            for (std::size_t h = 0; h < d[a][b]->size(); ++h) {
                if (d[a][b]->get(h)) {
                    out.delta.add(slot_to_summand[a], slot_to_summand[b], h, cat.hom_dim(obj[a], obj[b]), one);
                }
            }
        }
    }
    out.delta.prune();
    return out;
}

TwObject quotient(const TwObject& x, const std::vector<std::vector<BitVec>>& sub) {
    if (sub.size() != x.summands.size()) throw InvalidInput("quotient: one subspace per summand required");
    std::vector<Echelon> spaces;
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        spaces.emplace_back(x.summands[s].multiplicity);
        for (const auto& v : sub[s]) {
            if (v.size() != x.summands[s].multiplicity) throw InvalidInput("quotient: vector of wrong length");
            spaces.back().insert(v);
        }
    }
    // Fully reduced representatives: coordinates outside the pivot set form
    // a basis of the quotient.
    std::vector<std::vector<std::size_t>> free_coords(x.summands.size());
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        const std::size_t v = x.summands[s].multiplicity;
        std::vector<bool> pivot(v, false);
        for (std::size_t i = 0; i < v; ++i) {
            // i is a pivot coordinate iff reducing e_i changes coordinate i.
            if (!spaces[s].reduce(BitVec::unit(v, i)).get(i)) pivot[i] = true;
        }
        for (std::size_t i = 0; i < v; ++i) {
            if (!pivot[i]) free_coords[s].push_back(i);
        }
    }

    for (const auto& [key, coeffs] : x.delta.blocks()) {
        const auto [s, t] = key;
        for (const auto& m : coeffs) {
            for (const auto& u : sub[s]) {
                if (!spaces[t].contains(m.apply(u))) {
                    throw InvalidInput("quotient: subobject is not closed under the connection");
                }
            }
        }
    }

    TwObject out = TwObject::zero(x.cat);
    std::vector<std::optional<std::size_t>> new_index(x.summands.size());
    for (std::size_t s = 0; s < x.summands.size(); ++s) {
        if (free_coords[s].empty()) continue;
        new_index[s] = out.summands.size();
        out.summands.push_back({x.summands[s].object, free_coords[s].size()});
    }
    for (const auto& [key, coeffs] : x.delta.blocks()) {
        const auto [s, t] = key;
        if (!new_index[s] || !new_index[t]) continue;
        const std::size_t vs = x.summands[s].multiplicity;
        for (std::size_t h = 0; h < coeffs.size(); ++h) {
            F2Matrix induced(free_coords[t].size(), free_coords[s].size());
            for (std::size_t j = 0; j < free_coords[s].size(); ++j) {
                const BitVec image = spaces[t].reduce(coeffs[h].apply(BitVec::unit(vs, free_coords[s][j])));
                for (std::size_t i = 0; i < free_coords[t].size(); ++i) {
                    if (image.get(free_coords[t][i])) induced.set(i, j);
                }
            }
            if (!induced.is_zero()) {
                out.delta.add(*new_index[s], *new_index[t], h, coeffs.size(), induced);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- products

ProductTable h_product(const TwObject& x, const TwObject& y, const TwObject& z, bool x_equals_z) {
    const HomBasis bxy(x, y), byz(y, z), bxz(x, z);
    const CohomologyBasis hxy(hom_complex(x, y).differential);
    const CohomologyBasis hyz(hom_complex(y, z).differential);
    const CohomologyBasis hxz(hom_complex(x, z).differential);

    ProductTable pt;
    pt.dim_xy = hxy.dim();
    pt.dim_yz = hyz.dim();
    pt.dim_xz = hxz.dim();
    pt.table = F2Matrix(pt.dim_xz, pt.dim_xy * pt.dim_yz);
    for (std::size_t ib = 0; ib < pt.dim_yz; ++ib) {
        const Morphism b = byz.unflatten(hyz.representatives()[ib]);
        for (std::size_t ia = 0; ia < pt.dim_xy; ++ia) {
            const Morphism a = bxy.unflatten(hxy.representatives()[ia]);
            const BitVec cls = hxz.coordinates(bxz.flatten(compose2(x, y, z, b, a)));
            for (std::size_t i = 0; i < pt.dim_xz; ++i) {
                if (cls.get(i)) pt.table.set(i, ib * pt.dim_xy + ia);
            }
        }
    }
    pt.image_rank = rank(pt.table);
    pt.surjective = pt.image_rank == pt.dim_xz;
    if (x_equals_z) {
        const BitVec unit_cls = hxz.coordinates(bxz.flatten(identity(x)));
        Echelon img(pt.dim_xz);
        for (std::size_t c = 0; c < pt.table.cols(); ++c) img.insert(pt.table.column(c));
        pt.unit_in_image = img.contains(unit_cls);
    }
    return pt;
}

// ---------------------------------------------------------------- module structures

namespace {

Morphism eps_morphism(const AInfCategory& cat, ObjectId l) {
    Morphism f;
    f.add(0, 0, eps_index(cat, l), cat.hom_dim(l, l), F2Matrix::identity(1));
    return f;
}

// Matrix of a -> mu^k_Tw(...) on the basis of `basis`, where `apply`
// evaluates the composition on one basis morphism.
template <class Apply>
F2Matrix action_matrix(const HomBasis& basis, Apply apply) {
    const std::size_t dim = basis.dim();
    F2Matrix out(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const BitVec col = basis.flatten(apply(basis.basis_morphism(j)));
        for (std::size_t i = col.lowest(); i < dim; ++i) {
            if (col.get(i)) out.set(i, j);
        }
    }
    return out;
}

} // namespace

std::vector<F2Matrix> right_actions(ObjectId l, const TwObject& x) {
    const AInfCategory& cat = *x.cat;
    check_spherical(cat, l);
    const TwObject pl = TwObject::plain(x.cat, l);
    const HomBasis basis(pl, x);
    const Morphism eps = eps_morphism(cat, l);
    std::vector<F2Matrix> out;
    for (std::size_t k = 1; k <= cat.max_order(); ++k) {
        // mu^k(a, eps, ..., eps): the eps inputs are applied first.
        std::vector<const TwObject*> objs(k, &pl);
        objs.push_back(&x);
        out.push_back(action_matrix(basis, [&](const Morphism& a) {
            std::vector<const Morphism*> in(k - 1, &eps);
            in.push_back(&a);
            return mu_tw(objs, in);
        }));
    }
    return out;
}

std::vector<F2Matrix> left_actions(const TwObject& x, ObjectId l) {
    const AInfCategory& cat = *x.cat;
    check_spherical(cat, l);
    const TwObject pl = TwObject::plain(x.cat, l);
    const HomBasis basis(x, pl);
    const Morphism eps = eps_morphism(cat, l);
    std::vector<F2Matrix> out;
    for (std::size_t k = 1; k <= cat.max_order(); ++k) {
        // mu^k(eps, ..., eps, b): b is applied first.
        std::vector<const TwObject*> objs{&x};
        objs.insert(objs.end(), k, &pl);
        out.push_back(action_matrix(basis, [&](const Morphism& b) {
            std::vector<const Morphism*> in{&b};
            in.insert(in.end(), k - 1, &eps);
            return mu_tw(objs, in);
        }));
    }
    return out;
}

// ---------------------------------------------------------------- T^n

namespace {

TwObject bar_twisted(ObjectId l, const TwObject& x, std::size_t n, bool with_x) {
    if (n == 0) throw InvalidInput("n must be at least 1");
    const AInfCategory& cat = *x.cat;
    check_spherical(cat, l);
    const TwObject pl = TwObject::plain(x.cat, l);
    const HomBasis basis(pl, x);
    const std::size_t H = basis.dim();
    const std::size_t u = *cat.unit(l);
    const std::size_t e = eps_index(cat, l);
    const std::size_t hl = cat.hom_dim(l, l);

    const std::vector<F2Matrix> m = right_actions(l, x);

    TwObject t = TwObject::zero(x.cat);
    if (H > 0) {
        // S_c sits at summand index n-1-c.
        for (std::size_t c = n; c-- > 0;) t.summands.push_back({l, H});
        auto at = [&](std::size_t c) { return n - 1 - c; };
        for (std::size_t c = 0; c < n; ++c) {
            if (c >= 1) t.delta.add(at(c), at(c - 1), e, hl, F2Matrix::identity(H));
            for (std::size_t i = 1; i <= m.size() && i - 1 <= c; ++i) {
                if (!m[i - 1].is_zero()) t.delta.add(at(c), at(c - (i - 1)), u, hl, m[i - 1]);
            }
        }
    }
    if (!with_x) {
        t.delta.prune();
        return t;
    }
    const std::size_t shift = t.summands.size();
    t.summands.insert(t.summands.end(), x.summands.begin(), x.summands.end());
    t.delta += shifted(x.delta, shift, shift);
    if (H > 0) {
        const Evaluation ev = evaluation(l, x);
        t.delta += shifted(ev.ev, n - 1, shift);
    }
    t.delta.prune();
    return t;
}

} // namespace

TwObject build_Tn(ObjectId l, const TwObject& x, std::size_t n) { return bar_twisted(l, x, n, true); }

TwObject build_Cn(ObjectId l, const TwObject& x, std::size_t n) { return bar_twisted(l, x, n, false); }

} // namespace freetwist::tw
