// freetwist: command line front end. Every invocation prints exactly one JSON
// object. Exit codes: 0 ok, 1 usage or input error, 2 validation failure,
// 3 internal error (a differential that does not square to zero, or a
// failed cross-check).

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "freetwist/amod.hpp"
#include "freetwist/barcx.hpp"
#include "freetwist/error.hpp"
#include "freetwist/freecert.hpp"
#include "freetwist/homlat.hpp"
#include "freetwist/io.hpp"
#include "freetwist/tw.hpp"
#include "freetwist/zigzag.hpp"

using namespace freetwist;
using io::json;

namespace {

constexpr std::size_t kMaxObjects = 16;

struct Config {
    std::string output;
    std::string module_path, barcode_path, side = "right";
    std::string left_path, right_path;
    std::size_t n = 1;
    barcx::SweepBounds sweep;
    std::size_t m = 0;
    int dim_mod4 = 1;
    std::string x, y, word, a, b, l_spec, lp_spec;
    std::size_t l_index = 1;
};

tw::CategoryPtr category(std::size_t m) {
    if (m < 1 || m > kMaxObjects) {
        throw InvalidInput("-m must be in 1.." + std::to_string(kMaxObjects));
    }
    return zigzag::zigzag(m);
}

zigzag::SphereSpec checked_sphere(const std::string& text, std::size_t m) {
    auto s = zigzag::parse_sphere(text);
    zigzag::check_word(s.word, m);
    if (s.base < 1 || s.base > m) {
        throw InvalidInput("base @" + std::to_string(s.base) + " outside 1.." + std::to_string(m));
    }
    return s;
}

int run_classify(const Config& c, json& out) {
    const auto m = io::module_from_json(io::read_json_file(c.module_path));
    out = io::barcode_to_json(amod::classify(m));
    return 0;
}

int run_canonical(const Config& c, json& out) {
    const auto b = io::barcode_from_json(io::read_json_file(c.barcode_path));
    for (std::size_t e : b.torsion) {
        if (e == 0) throw InvalidInput("torsion entries must be >= 1");
    }
    out = io::module_to_json(amod::canonical(b, amod::parse_side(c.side)));
    return 0;
}

int run_bar(const Config& c, json& out) {
    const auto left = io::module_from_json(io::read_json_file(c.left_path));
    const auto right = io::module_from_json(io::read_json_file(c.right_path));
    out = {{"rank", barcx::bar_rank(left, right, c.n)}};
    return 0;
}

int run_sweep(const Config& c, json& out) {
    const auto& b = c.sweep;
    if (b.max_dim < 1 || b.max_dim > 12) throw InvalidInput("--max-dim must be in 1..12");
    if (b.max_n < 1 || b.max_n > 12) throw InvalidInput("--max-n must be in 1..12");
    if (b.min_order < 2 || b.min_order > b.max_order) throw InvalidInput("need 2 <= --min-order <= --max-order");
    if (b.guard_fraction < 0.0 || b.guard_fraction > 1.0) throw InvalidInput("--guard-fraction must be in [0, 1]");
    const auto rep = barcx::inequality_sweep(b);
    out = io::sweep_report_to_json(rep);
    return rep.ok() ? 0 : 2;
}

int run_hf(const Config& c, json& out) {
    const auto cat = category(c.m);
    const auto x = zigzag::sphere(cat, checked_sphere(c.x, c.m));
    const auto y = zigzag::sphere(cat, checked_sphere(c.y, c.m));
    out = {{"hf", tw::hf(x, y)}};
    return 0;
}

int run_sphere(const Config& c, json& out) {
    const auto cat = category(c.m);
    const auto x = zigzag::sphere(cat, checked_sphere(c.x, c.m));
    out = {{"object", io::tw_object_to_json(x)}, {"fingerprint", zigzag::fingerprint(x)}};
    return 0;
}

int run_tn(const Config& c, json& out) {
    const auto cat = category(c.m);
    if (c.l_index < 1 || c.l_index > c.m) throw InvalidInput("--L must be in 1.." + std::to_string(c.m));
    if (c.n < 1) throw InvalidInput("-n must be at least 1");
    const tw::ObjectId l = c.l_index - 1;
    const auto x = zigzag::sphere(cat, checked_sphere(c.x, c.m));
    const auto t = tw::build_Tn(l, x, c.n);
    tw::TwObject iterated = x;
    for (std::size_t k = 0; k < c.n; ++k) iterated = tw::reduce(tw::twist(l, iterated));

    json rows = json::array();
    bool agree = true;
    for (tw::ObjectId j = 0; j < c.m; ++j) {
        const auto pj = tw::TwObject::plain(cat, j);
        const std::size_t via_tn = ungraded_cohomology_rank(tw::hom_complex(pj, t).differential);
        const std::size_t via_twist = tw::hf(iterated, pj);
        agree = agree && via_tn == via_twist;
        rows.push_back({{"object", cat->name(j)}, {"tn", via_tn}, {"iterated", via_twist}});
    }
    out = {{"n", c.n}, {"summands", t.summands.size()}, {"per_object", rows}, {"agree", agree}};
    return agree ? 0 : 3;
}

int run_homology(const Config& c, json& out) {
    const auto lat = homlat::make_lattice(c.m, c.dim_mod4);
    const auto s = checked_sphere(c.word, c.m);
    const auto cls = homlat::homology_class(lat, s);
    out = {{"class", io::lattice_vector_to_json(cls)},
           {"self_pairing", homlat::pairing(lat, cls, cls)},
           {"dim_mod4", c.dim_mod4},
           {"convention", homlat::convention_note(lat)}};
    return 0;
}

int run_property_s(const Config& c, json& out) {
    const auto cat = category(c.m);
    out = io::property_s_to_json(freecert::property_s(cat, checked_sphere(c.a, c.m), checked_sphere(c.b, c.m)));
    return 0;
}

int run_certify(const Config& c, json& out) {
    const auto cat = category(c.m);
    const auto trace = freecert::certify_word(cat, checked_sphere(c.l_spec, c.m), checked_sphere(c.lp_spec, c.m),
                                              freecert::parse_cert_word(c.word));
    out = io::trace_to_json(trace);
    return 0;
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump() << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write '" + path + "'");
    f << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted complexes, A-modules and bar complexes over Z2"};
    app.require_subcommand(1);
    Config c;
    app.add_option("-o,--output", c.output, "Write the JSON result to this file");

    auto* classify = app.add_subcommand("classify", "Barcode of an A-module");
    classify->add_option("--module", c.module_path, "Module JSON file")->required();

    auto* canonical = app.add_subcommand("canonical", "Minimal module with a given barcode");
    canonical->add_option("--barcode", c.barcode_path, "Barcode JSON file")->required();
    canonical->add_option("--side", c.side, "left or right");

    auto* bar = app.add_subcommand("bar", "Cohomology rank of the truncated bar complex");
    bar->add_option("--left", c.left_path, "Right module M (JSON)")->required();
    bar->add_option("--right", c.right_path, "Left module N (JSON)")->required();
    bar->add_option("-n", c.n, "Truncation length")->required()->check(CLI::Range(1, 64));

    auto* sweep = app.add_subcommand("sweep", "Check the bar inequalities over minimal module pairs");
    sweep->add_option("--max-dim", c.sweep.max_dim, "Largest module dimension");
    sweep->add_option("--max-n", c.sweep.max_n, "Largest truncation length");
    sweep->add_option("--min-order", c.sweep.min_order, "Smallest torsion order k");
    sweep->add_option("--max-order", c.sweep.max_order, "Largest torsion order k");
    sweep->add_option("--guard-fraction", c.sweep.guard_fraction, "Fraction of cases rechecked densely");
    sweep->add_option("--seed", c.sweep.seed, "Seed for the guard sample");
    bool strengthened = false;
    sweep->add_flag("--strengthened", strengthened, "Also check the doubled bound");

    auto* hf = app.add_subcommand("hf", "hf between two braid-word spheres");
    hf->add_option("-m", c.m, "Number of objects")->required();
    hf->add_option("--x", c.x, "Sphere '<word> @<i>'")->required();
    hf->add_option("--y", c.y, "Sphere '<word> @<j>'")->required();

    auto* sphere = app.add_subcommand("sphere", "Reduced twisted complex of a braid-word sphere");
    sphere->add_option("-m", c.m, "Number of objects")->required();
    sphere->add_option("--x", c.x, "Sphere '<word> @<i>'")->required();

    auto* tn = app.add_subcommand("tn", "Compare the bar-twisted complex with iterated twisting");
    tn->add_option("-m", c.m, "Number of objects")->required();
    tn->add_option("--L", c.l_index, "Object to twist along (1-based)")->required();
    tn->add_option("--x", c.x, "Sphere '<word> @<j>'")->required();
    tn->add_option("-n", c.n, "Number of twists")->required()->check(CLI::Range(1, 16));

    auto* homology = app.add_subcommand("homology", "Homology class in the Milnor lattice");
    homology->add_option("-m", c.m, "Lattice rank")->required();
    homology->add_option("--dim-mod4", c.dim_mod4, "Complex dimension mod 4")->check(CLI::Range(0, 3));
    homology->add_option("--word", c.word, "Sphere '<word> @<i>'")->required();

    auto* property_s = app.add_subcommand("property-s", "Non-isomorphism evidence for two spheres");
    property_s->add_option("-m", c.m, "Number of objects")->required();
    property_s->add_option("--a", c.a, "First sphere")->required();
    property_s->add_option("--b", c.b, "Second sphere")->required();

    auto* certify = app.add_subcommand("certify", "Certify a word in tau_L, tau_Lp acts nontrivially");
    certify->add_option("-m", c.m, "Number of objects")->required();
    certify->add_option("--L", c.l_spec, "Sphere L")->required();
    certify->add_option("--Lp", c.lp_spec, "Sphere L'")->required();
    certify->add_option("--word", c.word, "Word such as 'Lp^2 L^-1'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << io::error_to_json("usage", e.what()).dump() << '\n';
        return 1;
    }
    c.sweep.strengthened = strengthened;

    json out;
    int code = 0;
    try {
        if (*classify) code = run_classify(c, out);
        else if (*canonical) code = run_canonical(c, out);
        else if (*bar) code = run_bar(c, out);
        else if (*sweep) code = run_sweep(c, out);
        else if (*hf) code = run_hf(c, out);
        else if (*sphere) code = run_sphere(c, out);
        else if (*tn) code = run_tn(c, out);
        else if (*homology) code = run_homology(c, out);
        else if (*property_s) code = run_property_s(c, out);
        else if (*certify) code = run_certify(c, out);
        emit(out, c.output);
    } catch (const InvalidInput& e) {
        std::cout << io::error_to_json("invalid-input", e.what()).dump() << '\n';
        return 1;
    } catch (const ValidationFailure& e) {
        std::cout << io::error_to_json("validation-failure", e.what()).dump() << '\n';
        return 2;
    } catch (const NotAComplex& e) {
        std::cout << io::error_to_json("not-a-complex", e.what()).dump() << '\n';
        return 3;
    } catch (const json::exception& e) {
        std::cout << io::error_to_json("invalid-input", e.what()).dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cout << io::error_to_json("internal", e.what()).dump() << '\n';
        return 3;
    }
    return code;
}
