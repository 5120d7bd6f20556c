#include "freetwist/amod.hpp"

#include <algorithm>

#include "freetwist/error.hpp"

namespace freetwist::amod {

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

Side parse_side(const std::string& text) {
    if (text == "left") return Side::Left;
    if (text == "right") return Side::Right;
    throw InvalidInput("side must be \"left\" or \"right\", got \"" + text + "\"");
}

std::size_t AModule::order() const {
    for (std::size_t k = actions.size(); k > 0; --k) {
        if (!actions[k - 1].is_zero()) return k;
    }
    return 0;
}

F2Matrix AModule::action(std::size_t k) const {
    if (k >= 1 && k <= actions.size()) return actions[k - 1];
    return F2Matrix(dim, dim);
}

void AModule::set_action(std::size_t k, F2Matrix m) {
    if (k == 0) throw InvalidInput("action order must be at least 1");
    if (m.rows() != dim || m.cols() != dim) throw InvalidInput("action matrix has wrong shape");
    while (actions.size() < k) actions.emplace_back(dim, dim);
    actions[k - 1] = std::move(m);
}

std::vector<Violation> validate(const AModule& m) {
    std::vector<Violation> out;
    for (std::size_t k = 1; k <= m.actions.size(); ++k) {
        const auto& a = m.actions[k - 1];
        if (a.rows() != m.dim || a.cols() != m.dim) {
            out.push_back({0, "m_" + std::to_string(k) + " is not " + std::to_string(m.dim) +
                                  "x" + std::to_string(m.dim)});
        }
    }
    if (!out.empty()) return out;

    const std::size_t K = m.order();
    for (std::size_t n = 1; n <= 2 * K; ++n) {
        F2Matrix sum(m.dim, m.dim);
        for (std::size_t i = 1; i <= n; ++i) {
            const std::size_t j = n + 1 - i;
            if (i > K || j > K) continue;
            sum += m.actions[i - 1] * m.actions[j - 1];
        }
        if (!sum.is_zero()) {
            out.push_back({n, "sum of m_i m_j with i+j=" + std::to_string(n + 1) + " is nonzero"});
        }
    }
    return out;
}

bool is_valid(const AModule& m) { return validate(m).empty(); }

AModule standard(StandardModuleKind kind, Side trivial_side) {
    using Type = StandardModuleKind::Type;
    if (kind.type == Type::TrivialZ2) return AModule(trivial_side, 1);
    if (kind.k < 1) throw InvalidInput("standard module order must be at least 1");
    AModule m(kind.type == Type::R ? Side::Right : Side::Left, 2);
    F2Matrix a(2, 2);
    a.set(1, 0); // generator 0 -> generator 1
    m.set_action(kind.k, std::move(a));
    return m;
}

PolyMatrix t_matrix(const AModule& m, std::size_t truncation) {
    if (truncation == 0) throw InvalidInput("truncation must be at least 1");
    const std::size_t K = m.order();
    if (K >= 1 && truncation + 1 < 2 * K) {
        throw InvalidInput("truncation " + std::to_string(truncation) + " is below 2K-1 = " +
                           std::to_string(2 * K - 1));
    }
    PolyMatrix d(m.dim, m.dim, truncation);
    for (std::size_t k = 1; k <= K && k - 1 < truncation; ++k) {
        const auto& a = m.actions[k - 1];
        for (std::size_t r = 0; r < m.dim; ++r) {
            for (std::size_t c = 0; c < m.dim; ++c) {
                if (a.get(r, c)) d.at(r, c).set_coeff(k - 1);
            }
        }
    }
    return d;
}

std::size_t classification_truncation(const AModule& m) {
    // Trailing zero actions do not count towards K. The 2K-1 floor only
    // matters for dim 1, where the action must vanish anyway.
    const std::size_t K = m.order();
    return std::max(m.dim * K + 1, 2 * K);
}

Barcode classify(const AModule& m) {
    const auto violations = validate(m);
    if (!violations.empty()) {
        throw ValidationFailure("module violates the A-infinity relations: " +
                                violations.front().message);
    }
    if (m.dim == 0) return {};
    return barcode(t_matrix(m, classification_truncation(m)));
}

AModule canonical(const Barcode& b, Side side) {
    AModule out(side, 0);
    for (std::size_t i = 0; i < b.free_rank; ++i) {
        out = direct_sum(out, standard(StandardModuleKind::trivial(), side));
    }
    auto torsion = b.torsion;
    std::sort(torsion.begin(), torsion.end());
    for (auto e : torsion) {
        if (e == 0) throw InvalidInput("torsion exponents must be at least 1");
        const auto kind = side == Side::Right ? StandardModuleKind::right(e + 1)
                                              : StandardModuleKind::left(e + 1);
        out = direct_sum(out, standard(kind));
    }
    return out;
}

AModule direct_sum(const AModule& a, const AModule& b) {
    if (a.side != b.side) throw InvalidInput("direct sum of a left and a right module");
    AModule out(a.side, a.dim + b.dim);
    const std::size_t K = std::max(a.actions.size(), b.actions.size());
    for (std::size_t k = 1; k <= K; ++k) {
        F2Matrix m(out.dim, out.dim);
        if (k <= a.actions.size()) m.add_block(0, 0, a.actions[k - 1]);
        if (k <= b.actions.size()) m.add_block(a.dim, a.dim, b.actions[k - 1]);
        out.set_action(k, std::move(m));
    }
    return out;
}

bool quasi_iso(const AModule& a, const AModule& b) {
    return a.side == b.side && classify(a) == classify(b);
}

} // namespace freetwist::amod
