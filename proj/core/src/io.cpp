#include "freetwist/io.hpp"

#include <algorithm>
#include <fstream>

#include "freetwist/error.hpp"

namespace freetwist::io {

namespace {

std::size_t get_count(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InvalidInput(std::string("field '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

} // namespace

json matrix_to_json(const F2Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return rows;
}

F2Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        throw InvalidInput("matrix must be an array of " + std::to_string(rows) + " rows");
    }
    F2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols) {
            throw InvalidInput("matrix row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = row[c];
            if (!e.is_number_integer() || (e.get<long long>() != 0 && e.get<long long>() != 1)) {
                throw InvalidInput("matrix entry (" + std::to_string(r) + ", " + std::to_string(c) + ") must be 0 or 1");
            }
            if (e.get<int>() == 1) m.set(r, c);
        }
    }
    return m;
}

json module_to_json(const amod::AModule& m) {
    json actions = json::array();
    for (std::size_t k = 1; k <= m.actions.size(); ++k) {
        if (m.actions[k - 1].is_zero()) continue;
        actions.push_back({{"k", k}, {"matrix", matrix_to_json(m.actions[k - 1])}});
    }
    return {{"side", amod::to_string(m.side)}, {"dim", m.dim}, {"actions", actions}};
}

amod::AModule module_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("module must be a JSON object");
    if (!j.contains("side") || !j.at("side").is_string()) throw InvalidInput("missing string field 'side'");
    const amod::Side side = amod::parse_side(j.at("side").get<std::string>());
    const std::size_t dim = get_count(j, "dim");
    amod::AModule m(side, dim);
    if (!j.contains("actions")) return m;
    const json& acts = j.at("actions");
    if (!acts.is_array()) throw InvalidInput("'actions' must be an array");
    for (const json& a : acts) {
        const std::size_t k = get_count(a, "k");
        if (k == 0 || k > 64) throw InvalidInput("action order k must be in 1..64");
        if (!a.contains("matrix")) throw InvalidInput("action k = " + std::to_string(k) + " lacks 'matrix'");
        m.set_action(k, m.action(k) + matrix_from_json(a.at("matrix"), dim, dim));
    }
    return m;
}

json barcode_to_json(const Barcode& b) { return {{"free_rank", b.free_rank}, {"torsion", b.torsion}}; }

Barcode barcode_from_json(const json& j) {
    Barcode b;
    b.free_rank = get_count(j, "free_rank");
    if (!j.contains("torsion") || !j.at("torsion").is_array()) throw InvalidInput("missing array field 'torsion'");
    for (const json& e : j.at("torsion")) {
        if (!e.is_number_integer() || e.get<long long>() < 1) throw InvalidInput("torsion entries must be >= 1");
        b.torsion.push_back(e.get<std::size_t>());
    }
    std::sort(b.torsion.begin(), b.torsion.end());
    return b;
}

namespace {

json spec_to_json(const barcx::MinimalSpec& s) { return {{"trivial", s.trivial}, {"orders", s.orders}}; }

} // namespace

json sweep_report_to_json(const barcx::SweepReport& r) {
    json ce = json::array();
    for (const auto& c : r.counterexamples) {
        ce.push_back({{"left", spec_to_json(c.m)},
                      {"right", spec_to_json(c.n_mod)},
                      {"n", c.n},
                      {"rank", c.rank},
                      {"bound", c.bound},
                      {"strengthened", c.strengthened}});
    }
    json gm = json::array();
    for (const auto& g : r.guard_mismatches) {
        gm.push_back({{"left", spec_to_json(g.m)},
                      {"right", spec_to_json(g.n_mod)},
                      {"n", g.n},
                      {"fast_rank", g.fast_rank},
                      {"guard_rank", g.guard_rank}});
    }
    return {{"bounds",
             {{"max_dim", r.bounds.max_dim},
              {"max_n", r.bounds.max_n},
              {"min_order", r.bounds.min_order},
              {"max_order", r.bounds.max_order},
              {"strengthened", r.bounds.strengthened}}},
            {"cases", r.cases},
            {"strengthened_cases", r.strengthened_cases},
            {"guard_cases", r.guard_cases},
            {"counterexamples", ce},
            {"guard_mismatches", gm},
            {"ok", r.ok()}};
}

json tw_object_to_json(const tw::TwObject& x) {
    json summands = json::array();
    for (const auto& s : x.summands) {
        summands.push_back({{"object", x.cat->name(s.object)}, {"multiplicity", s.multiplicity}});
    }
    json delta = json::array();
    for (const auto& [key, coeffs] : x.delta.blocks()) {
        json cs = json::array();
        for (std::size_t h = 0; h < coeffs.size(); ++h) {
            if (coeffs[h].is_zero()) continue;
            cs.push_back({{"basis", h}, {"matrix", matrix_to_json(coeffs[h])}});
        }
        if (cs.empty()) continue;
        delta.push_back({{"src", key.first}, {"dst", key.second}, {"coefficients", cs}});
    }
    return {{"summands", summands}, {"delta", delta}};
}

json property_s_to_json(const freecert::PropertySReport& r) {
    json ev = json::array();
    for (const auto& e : r.evidence) {
        json item = {{"kind", e.kind}, {"detail", e.detail}};
        if (e.kind == "witness") {
            item["witness"] = e.witness;
            item["hf_L0"] = e.value_a;
            item["hf_L1"] = e.value_b;
        }
        ev.push_back(std::move(item));
    }
    return {{"hf", r.hf},  {"hf_at_least_2", r.hf_ok}, {"verdict", r.verdict()},
            {"holds", r.holds()}, {"evidence", ev},        {"failed", r.failed}};
}

json trace_to_json(const freecert::FreenessTrace& t) {
    json recs = json::array();
    for (const auto& r : t.records) {
        recs.push_back({{"prefix", r.prefix},
                        {"hfL", r.hfL},
                        {"hfLp", r.hfLp},
                        {"predicted", r.predicted},
                        {"observed", r.observed}});
    }
    json out = {{"word", t.word.to_string()}, {"trace", recs}, {"verdict", t.verdict}};
    if (!t.witness.empty()) out["witness"] = t.witness;
    return out;
}

json lattice_vector_to_json(const homlat::Vector& v) { return json(v); }

json error_to_json(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw InvalidInput("'" + path + "' is not valid JSON");
    return j;
}

} // namespace freetwist::io
