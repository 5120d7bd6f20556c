#include "freetwist/freecert.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "freetwist/error.hpp"

namespace freetwist::freecert {

using tw::TwObject;
using zigzag::SphereSpec;

std::vector<Witness> default_witnesses(const tw::CategoryPtr& cat, const SphereSpec& a, const SphereSpec& b) {
    std::vector<Witness> out;
    for (tw::ObjectId j = 0; j < cat->object_count(); ++j) out.push_back({cat->name(j), TwObject::plain(cat, j)});
    out.push_back({"L0 = " + a.to_string(), zigzag::sphere(cat, a)});
    out.push_back({"L1 = " + b.to_string(), zigzag::sphere(cat, b)});
    return out;
}

PropertySReport property_s(const tw::CategoryPtr& cat, const SphereSpec& a, const SphereSpec& b) {
    return property_s(cat, a, b, default_witnesses(cat, a, b));
}

PropertySReport property_s(const tw::CategoryPtr& cat, const SphereSpec& a, const SphereSpec& b,
                           const std::vector<Witness>& witnesses) {
    const TwObject x0 = zigzag::sphere(cat, a);
    const TwObject x1 = zigzag::sphere(cat, b);

    PropertySReport rep;
    rep.hf = tw::hf(x0, x1);
    rep.hf_ok = rep.hf >= 2;
    if (!rep.hf_ok) rep.failed.push_back("hf(L0, L1) = " + std::to_string(rep.hf) + " < 2");

    bool witness_fired = false;
    for (const auto& w : witnesses) {
        const std::size_t u = tw::hf(x0, w.object), v = tw::hf(x1, w.object);
        if (u != v) {
            rep.evidence.push_back({"witness", "hf against " + w.name + " differs", w.name, u, v});
            witness_fired = true;
        }
    }
    if (!witness_fired) rep.failed.push_back("no witness separates the fingerprints");

    // An isomorphism L1 -> L0 composed with HF(L0, L1) would cover HF(L1, L1).
    const tw::ProductTable pt = tw::h_product(x1, x0, x1, true);
    if (!pt.surjective) {
        rep.evidence.push_back({"product",
                                "HF(L0,L1) x HF(L1,L0) -> HF(L1,L1) has rank " + std::to_string(pt.image_rank) +
                                    " < " + std::to_string(pt.dim_xz),
                                "", pt.image_rank, pt.dim_xz});
    } else {
        rep.failed.push_back("product onto HF(L1,L1) is surjective");
    }

    // If L0 and L1 were isomorphic, HF(L0, L1) would be a free rank one
    // module over HF(L0, L0) = Z2[eps]/(eps^2), so eps would act nontrivially.
    const tw::ProductTable self = tw::h_product(x0, x0, x0, true);
    if (self.dim_xy == 2) {
        const tw::HomBasis b00(x0, x0);
        const CohomologyBasis h00(tw::hom_complex(x0, x0).differential);
        const BitVec unit = h00.coordinates(b00.flatten(tw::identity(x0)));
        auto square = [&](const BitVec& c) {
            BitVec out(2);
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) {
                    if (c.get(i) && c.get(j)) out ^= self.table.column(i * 2 + j);
                }
            }
            return out;
        };
        std::optional<BitVec> eps;
        for (std::size_t bits = 1; bits < 4; ++bits) {
            BitVec c(2);
            if (bits & 1) c.set(0);
            if (bits & 2) c.set(1);
            if (c == unit) continue;
            if (square(c).none()) {
                eps = c;
                break;
            }
        }
        if (eps) {
            const tw::ProductTable act = tw::h_product(x0, x0, x1);
            F2Matrix action(act.dim_xz, act.dim_yz);
            for (std::size_t ib = 0; ib < act.dim_yz; ++ib) {
                for (std::size_t ia = 0; ia < 2; ++ia) {
                    if (!eps->get(ia)) continue;
                    const BitVec col = act.table.column(ib * 2 + ia);
                    for (std::size_t r = 0; r < act.dim_xz; ++r) {
                        if (col.get(r)) action.flip(r, ib);
                    }
                }
            }
            if (action.is_zero()) {
                rep.evidence.push_back({"eps-action", "eps acts by zero on HF(L0,L1)", "", 0, act.dim_yz});
            } else {
                rep.failed.push_back("eps acts nontrivially on HF(L0,L1)");
            }
        } else {
            rep.failed.push_back("HF(L0,L0) has no square-zero class");
        }
    } else {
        rep.failed.push_back("HF(L0,L0) is not two dimensional");
    }

    rep.distinct = !rep.evidence.empty();
    return rep;
}

// ---------------------------------------------------------------- words

CertWord CertWord::reduced() const {
    CertWord w;
    for (const auto& [g, e] : letters) {
        if (e == 0) continue;
        if (!w.letters.empty() && w.letters.back().first == g) {
            w.letters.back().second += e;
            if (w.letters.back().second == 0) w.letters.pop_back();
        } else {
            w.letters.emplace_back(g, e);
        }
    }
    return w;
}

std::size_t CertWord::length() const {
    std::size_t n = 0;
    for (const auto& [g, e] : letters) n += static_cast<std::size_t>(std::abs(e));
    return n;
}

std::string CertWord::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << (letters[i].first == 0 ? "L" : "Lp");
        if (letters[i].second != 1) os << '^' << letters[i].second;
    }
    return os.str();
}

CertWord parse_cert_word(const std::string& text) {
    CertWord w;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) break;
        const std::string tok = text.substr(start, i - start);
        const std::string where = "token '" + tok + "' at position " + std::to_string(start + 1);
        const auto caret = tok.find('^');
        const std::string head = tok.substr(0, caret);
        int gen = 0;
        if (head == "L") {
            gen = 0;
        } else if (head == "Lp") {
            gen = 1;
        } else {
            throw InvalidInput("unexpected " + where + " (expected L, Lp, L^e or Lp^e)");
        }
        int e = 1;
        if (caret != std::string::npos) {
            const char* b = tok.data() + caret + 1;
            const char* end = tok.data() + tok.size();
            if (b != end && *b == '+') ++b;
            auto [p, ec] = std::from_chars(b, end, e);
            if (ec != std::errc() || p != end || b == end || e == 0) throw InvalidInput("bad exponent in " + where);
        }
        w.letters.emplace_back(gen, e);
    }
    return w;
}

std::vector<CertWord> reduced_words(std::size_t max_length) {
    std::vector<CertWord> out;
    std::vector<std::pair<int, int>> cur;
    auto rec = [&](auto&& self) -> void {
        if (!cur.empty()) out.push_back(CertWord{cur}.reduced());
        if (cur.size() == max_length) return;
        for (int g = 0; g < 2; ++g) {
            for (int e : {1, -1}) {
                if (!cur.empty() && cur.back().first == g && cur.back().second == -e) continue;
                cur.emplace_back(g, e);
                self(self);
                cur.pop_back();
            }
        }
    };
    rec(rec);
    return out;
}

bool FreenessTrace::predictions_hold() const {
    for (const auto& r : records) {
        if (!r.observed) return false;
    }
    return true;
}

zigzag::BraidWord block_word(const SphereSpec& s, int exponent) { return zigzag::sphere_twist_word(s, exponent); }

FreenessTrace certify_word(const tw::CategoryPtr& cat, const SphereSpec& l, const SphereSpec& lp,
                           const CertWord& word, const PropertySReport* report) {
    std::optional<PropertySReport> own;
    if (!report) {
        own = property_s(cat, l, lp);
        report = &*own;
    }
    if (!report->holds()) {
        throw ValidationFailure("the pair (" + l.to_string() + ", " + lp.to_string() + ") lacks property S");
    }

    FreenessTrace trace;
    trace.word = word.reduced();
    if (trace.word.empty()) {
        trace.verdict = "identity";
        return trace;
    }

    const TwObject xl = zigzag::sphere(cat, l);
    const TwObject xlp = zigzag::sphere(cat, lp);
    const SphereSpec* specs[] = {&l, &lp};

    TwObject y = xl;
    zigzag::BraidWord total;
    bool moved_off_l = false;
    const auto& letters = trace.word.letters;
    for (std::size_t k = letters.size(); k-- > 0;) {
        const auto [g, e] = letters[k];
        const zigzag::BraidWord bw = block_word(*specs[g], e);
        y = zigzag::apply_word(bw, y);
        total = bw * total;

        TraceRecord rec;
        rec.prefix = CertWord{{letters.begin() + static_cast<std::ptrdiff_t>(k), letters.end()}}.to_string();
        rec.hfL = tw::hf(xl, y);
        rec.hfLp = tw::hf(xlp, y);
        if (g == 1) {
            rec.predicted = "hfLp < hfL";
            rec.observed = rec.hfLp < rec.hfL;
            moved_off_l = true;
        } else if (moved_off_l) {
            rec.predicted = "hfL < hfLp";
            rec.observed = rec.hfL < rec.hfLp;
        } else {
            // tau_L fixes L up to shift.
            rec.predicted = "none";
        }
        trace.records.push_back(rec);
    }

    // The action is nontrivial if it moves some hf entry of some test object.
    std::vector<Witness> tests = {{"L", xl}, {"Lp", xlp}};
    for (tw::ObjectId j = 0; j < cat->object_count(); ++j) tests.push_back({cat->name(j), TwObject::plain(cat, j)});
    std::vector<Witness> probes = tests;

    for (std::size_t t = 0; t < tests.size() && trace.witness.empty(); ++t) {
        const TwObject image = t == 0 ? y : zigzag::apply_word(total, tests[t].object);
        for (const auto& p : probes) {
            const std::size_t before = tw::hf(p.object, tests[t].object);
            const std::size_t after = tw::hf(p.object, image);
            if (before != after) {
                trace.witness = "hf(" + p.name + ", phi(" + tests[t].name + ")) = " + std::to_string(after) +
                                " but hf(" + p.name + ", " + tests[t].name + ") = " + std::to_string(before);
                break;
            }
        }
    }
    trace.verdict = trace.witness.empty() ? "undetermined" : "nontrivial";
    return trace;
}

} // namespace freetwist::freecert
