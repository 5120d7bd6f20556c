#include "freetwist/barcx.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "freetwist/error.hpp"

namespace freetwist::barcx {

using amod::AModule;
using amod::Side;

namespace {

// images[k-1][j] lists the basis indices hit by m_k(e_j).
using SparseActions = std::vector<std::vector<std::vector<std::size_t>>>;

SparseActions sparse_actions(const AModule& m) {
    SparseActions out(m.order());
    for (std::size_t k = 1; k <= out.size(); ++k) {
        out[k - 1].resize(m.dim);
        const auto& a = m.actions[k - 1];
        for (std::size_t j = 0; j < m.dim; ++j) {
            for (std::size_t i = 0; i < m.dim; ++i) {
                if (a.get(i, j)) out[k - 1][j].push_back(i);
            }
        }
    }
    return out;
}

void check_module(const AModule& m, Side expected, const char* role) {
    if (m.side != expected) {
        throw InvalidInput(std::string(role) + " factor must be a " + amod::to_string(expected) +
                           " module");
    }
    const auto violations = amod::validate(m);
    if (!violations.empty()) {
        throw ValidationFailure(std::string(role) + " factor: " + violations.front().message);
    }
}

BarComplex assemble(const AModule& m, const AModule& n_mod, std::size_t n) {
    BarComplex bar;
    bar.left = m;
    bar.right = n_mod;
    bar.n = n;
    const std::size_t total = n * m.dim * n_mod.dim;
    bar.differential = F2Matrix(total, total);

    const auto am = sparse_actions(m);
    const auto an = sparse_actions(n_mod);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t a = 0; a < m.dim; ++a) {
            for (std::size_t b = 0; b < n_mod.dim; ++b) {
                const std::size_t src = bar.index(c, a, b);
                // m_i consumes i-1 copies of eps from the left.
                for (std::size_t i = 1; i <= am.size() && i - 1 <= c; ++i) {
                    for (auto a2 : am[i - 1][a]) bar.differential.flip(bar.index(c - (i - 1), a2, b), src);
                }
                for (std::size_t j = 1; j <= an.size() && j - 1 <= c; ++j) {
                    for (auto b2 : an[j - 1][b]) bar.differential.flip(bar.index(c - (j - 1), a, b2), src);
                }
            }
        }
    }
    return bar;
}

} // namespace

BarComplex build_bar(const AModule& m, const AModule& n_mod, std::size_t n) {
    check_module(m, Side::Right, "left");
    check_module(n_mod, Side::Left, "right");
    if (n == 0) throw InvalidInput("truncation n must be at least 1");
    return assemble(m, n_mod, n);
}

std::size_t bar_rank(const AModule& m, const AModule& n_mod, std::size_t n) {
    return ungraded_cohomology_rank(build_bar(m, n_mod, n).differential);
}

AModule MinimalSpec::build(Side side) const {
    Barcode b;
    b.free_rank = trivial;
    for (auto k : orders) b.torsion.push_back(k - 1);
    return amod::canonical(b, side);
}

Barcode MinimalSpec::barcode() const {
    Barcode b;
    b.free_rank = trivial;
    for (auto k : orders) {
        if (k >= 2) b.torsion.push_back(k - 1);
    }
    std::sort(b.torsion.begin(), b.torsion.end());
    return b;
}

std::vector<MinimalSpec> enumerate_minimal(std::size_t max_dim, std::size_t min_order,
                                           std::size_t max_order) {
    std::vector<MinimalSpec> out;
    std::vector<std::size_t> orders;
    // Multisets of orders as non-decreasing sequences.
    auto rec = [&](auto&& self, std::size_t next_min) -> void {
        const std::size_t used = 2 * orders.size();
        for (std::size_t t = 0; used + t <= max_dim; ++t) {
            if (used + t == 0) continue;
            out.push_back({t, orders});
        }
        if (used + 2 > max_dim) return;
        for (std::size_t k = next_min; k <= max_order; ++k) {
            orders.push_back(k);
            self(self, k);
            orders.pop_back();
        }
    };
    if (min_order <= max_order) {
        rec(rec, min_order);
    } else {
        for (std::size_t t = 1; t <= max_dim; ++t) out.push_back({t, {}});
    }
    return out;
}

namespace {

// A quasi-isomorphic but non-minimal representative: add an acyclic R_1 / L_1
// summand and conjugate every action by a random invertible matrix.
AModule scramble(const AModule& m, std::mt19937_64& rng) {
    const AModule acyclic = amod::standard(m.side == Side::Right ? amod::StandardModuleKind::right(1)
                                                                 : amod::StandardModuleKind::left(1));
    AModule big = amod::direct_sum(m, acyclic);
    const std::size_t d = big.dim;
    F2Matrix g, ginv;
    for (;;) {
        g = F2Matrix(d, d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                if (rng() & 1U) g.set(r, c);
            }
        }
        if (auto inv = inverse(g)) {
            ginv = *inv;
            break;
        }
    }
    AModule out(big.side, d);
    for (std::size_t k = 1; k <= big.actions.size(); ++k) out.set_action(k, g * big.actions[k - 1] * ginv);
    return out;
}

} // namespace

SweepReport inequality_sweep(const SweepBounds& bounds) {
    SweepReport report;
    report.bounds = bounds;
    const auto specs = enumerate_minimal(bounds.max_dim, bounds.min_order, bounds.max_order);

    std::vector<AModule> rights, lefts;
    rights.reserve(specs.size());
    lefts.reserve(specs.size());
    for (const auto& s : specs) {
        rights.push_back(s.build(Side::Right));
        lefts.push_back(s.build(Side::Left));
    }

    std::mt19937_64 rng(bounds.seed);
    std::bernoulli_distribution guard(bounds.guard_fraction);

    for (std::size_t i = 0; i < specs.size(); ++i) {
        const bool m_high = std::all_of(specs[i].orders.begin(), specs[i].orders.end(),
                                        [](std::size_t k) { return k >= 3; });
        for (std::size_t j = 0; j < specs.size(); ++j) {
            const bool n_high = std::all_of(specs[j].orders.begin(), specs[j].orders.end(),
                                            [](std::size_t k) { return k >= 3; });
            const std::size_t product = specs[i].dim() * specs[j].dim();
            for (std::size_t n = 1; n <= bounds.max_n; ++n) {
                // Inputs are canonical modules, valid by construction.
                const auto bar = assemble(rights[i], lefts[j], n);
                const std::size_t rk = bar.total_dim() - 2 * rank_by_components(bar.differential);
                ++report.cases;

                if (rk < product) {
                    report.counterexamples.push_back({specs[i], specs[j], n, rk, product, false});
                }
                if (bounds.strengthened && m_high && n_high && n >= 2) {
                    ++report.strengthened_cases;
                    if (rk < 2 * product) {
                        report.counterexamples.push_back({specs[i], specs[j], n, rk, 2 * product, true});
                    }
                }
                if (guard(rng)) {
                    ++report.guard_cases;
                    const auto slow = build_bar(scramble(rights[i], rng), scramble(lefts[j], rng), n);
                    const std::size_t grk = ungraded_cohomology_rank(slow.differential);
                    if (grk != rk) report.guard_mismatches.push_back({specs[i], specs[j], n, rk, grk});
                }
            }
        }
    }
    return report;
}

} // namespace freetwist::barcx
