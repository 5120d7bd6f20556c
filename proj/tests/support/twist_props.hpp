#pragma once

// Randomized checks of the twist calculus on zigzag objects, shared by the
// unit tests (few cases) and the acceptance run (many).

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "freetwist/tw.hpp"
#include "freetwist/zigzag.hpp"
#include "oracles.hpp"

namespace props {

using freetwist::BitVec;
using freetwist::tw::HomBasis;
using freetwist::tw::Morphism;
using freetwist::tw::ObjectId;
using freetwist::tw::TwObject;
namespace tw = freetwist::tw;
namespace zz = freetwist::zigzag;

struct Tally {
    std::size_t cases = 0;
    std::vector<std::string> failures;
    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures.size() < 8) failures.push_back(what);
    }
    bool ok() const { return failures.empty(); }
};

inline BitVec random_vector(oracle::Rng& rng, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1) v.set(i);
    return v;
}

struct Instance {
    std::size_t m;
    tw::CategoryPtr cat;
    zz::SphereSpec spec;
    TwObject x;
};

inline Instance random_instance(oracle::Rng& rng, std::size_t min_m, std::size_t max_m, std::size_t max_len) {
    Instance in;
    in.m = min_m + rng() % (max_m - min_m + 1);
    in.cat = zz::zigzag(in.m);
    in.spec = oracle::random_sphere(rng, in.m, max_len);
    in.x = zz::sphere(in.cat, in.spec);
    return in;
}

inline TwObject apply(const TwObject& x, std::initializer_list<std::pair<std::size_t, int>> letters) {
    zz::BraidWord w;
    for (auto l : letters) w.letters.push_back(l);
    return zz::apply_word(w, x);
}

// t_i t_{i+1} t_i = t_{i+1} t_i t_{i+1} and t_i t_j = t_j t_i for |i - j| >= 2.
inline void braid_relations(oracle::Rng& rng, std::size_t trials, std::size_t max_len, Tally& t) {
    for (std::size_t k = 0; k < trials; ++k) {
        const auto in = random_instance(rng, 2, 3, max_len);
        const std::size_t i = 1 + rng() % (in.m - 1);
        const int e = (rng() & 1) ? 1 : -1;
        const auto a = apply(in.x, {{i, e}, {i + 1, e}, {i, e}});
        const auto b = apply(in.x, {{i + 1, e}, {i, e}, {i + 1, e}});
        const std::string tag = "braid " + std::to_string(i) + " on " + in.spec.to_string();
        t.check(zz::fingerprint(a) == zz::fingerprint(b), tag + ": fingerprints differ");
        t.check(a.total_multiplicity() == b.total_multiplicity(), tag + ": reduced sizes differ");
        t.check(tw::hf(a, b) == tw::hf(a, a), tag + ": hf(a, b) != hf(a, a)");
        if (in.m == 3) {
            const auto c = apply(in.x, {{1, e}, {3, 1}});
            const auto d = apply(in.x, {{3, 1}, {1, e}});
            t.check(zz::fingerprint(c) == zz::fingerprint(d), "commutation on " + in.spec.to_string());
            t.check(c.total_multiplicity() == d.total_multiplicity(), "commutation size on " + in.spec.to_string());
        }
    }
}

inline void round_trips(oracle::Rng& rng, std::size_t trials, std::size_t max_len, Tally& t) {
    for (std::size_t k = 0; k < trials; ++k) {
        const auto in = random_instance(rng, 1, 3, max_len);
        const ObjectId l = rng() % in.m;
        const auto fx = zz::fingerprint(in.x);
        const std::size_t self = tw::hf(in.x, in.x);
        const auto tag = " along P" + std::to_string(l + 1) + " on " + in.spec.to_string();
        const auto a = tw::reduce(tw::untwist(l, tw::reduce(tw::twist(l, in.x))));
        const auto b = tw::reduce(tw::twist(l, tw::reduce(tw::untwist(l, in.x))));
        for (const auto* z : {&a, &b}) {
            t.check(zz::fingerprint(*z) == fx, "round trip fingerprint" + tag);
            t.check(z->total_multiplicity() == in.x.total_multiplicity(), "round trip size" + tag);
            t.check(tw::hf(*z, in.x) == self, "round trip hf" + tag);
        }
    }
}

// mu^2(ev, a (x) b) = mu^2(a, b) for a in hom(L, X), b in hom(Z, L), and the
// corresponding longer chains with a trailing c in hom(W, Z).
inline void evmaps(oracle::Rng& rng, std::size_t trials, std::size_t max_len, Tally& t) {
    for (std::size_t k = 0; k < trials; ++k) {
        const auto in = random_instance(rng, 1, 3, max_len);
        const ObjectId l = rng() % in.m;
        const TwObject z = zz::sphere(in.cat, oracle::random_sphere(rng, in.m, max_len));
        const TwObject w = zz::sphere(in.cat, oracle::random_sphere(rng, in.m, max_len));
        const TwObject pl = TwObject::plain(in.cat, l);
        const auto e = tw::evaluation(l, in.x);
        if (e.source.empty()) {
            t.check(e.ev.is_zero(), "ev nonzero with empty source");
            continue;
        }
        const HomBasis hl(pl, in.x), hz(z, pl), hw(w, z);
        const BitVec av = random_vector(rng, hl.dim());
        const Morphism a = hl.unflatten(av);
        const Morphism b = hz.unflatten(random_vector(rng, hz.dim()));
        const Morphism c = hw.unflatten(random_vector(rng, hw.dim()));

        // a (x) b : Z -> hom(L, X) (x) L
        Morphism ab;
        for (const auto& [key, coeffs] : b.blocks()) {
            const ObjectId zs = z.summands[key.first].object;
            const std::size_t hd = in.cat->hom_dim(zs, l);
            for (std::size_t h = 0; h < coeffs.size(); ++h) {
                freetwist::F2Matrix mat(hl.dim(), z.summands[key.first].multiplicity);
                for (std::size_t alpha = 0; alpha < hl.dim(); ++alpha) {
                    if (!av.get(alpha)) continue;
                    for (std::size_t p = 0; p < mat.cols(); ++p)
                        if (coeffs[h].get(0, p)) mat.set(alpha, p);
                }
                if (!mat.is_zero()) ab.add(key.first, 0, h, hd, mat);
            }
        }
        const std::string tag = "evmaps along P" + std::to_string(l + 1) + " on " + in.spec.to_string();
        t.check(tw::compose2(z, e.source, in.x, e.ev, ab) == tw::compose2(z, pl, in.x, a, b), tag);

        const TwObject* lhs_objs[] = {&w, &z, &e.source, &in.x};
        const Morphism* lhs_in[] = {&c, &ab, &e.ev};
        const TwObject* rhs_objs[] = {&w, &z, &pl, &in.x};
        const Morphism* rhs_in[] = {&c, &b, &a};
        t.check(tw::mu_tw(lhs_objs, lhs_in) == tw::mu_tw(rhs_objs, rhs_in), tag + " (three inputs)");
    }
}

// |hf(Z,X) - hf(Z,Y)| <= hf(Z, cone f) <= hf(Z,X) + hf(Z,Y), both sides.
inline void cone_bounds(oracle::Rng& rng, std::size_t trials, std::size_t max_len, Tally& t) {
    for (std::size_t k = 0; k < trials; ++k) {
        const auto in = random_instance(rng, 1, 3, max_len);
        const TwObject y = zz::sphere(in.cat, oracle::random_sphere(rng, in.m, max_len));
        const TwObject z = zz::sphere(in.cat, oracle::random_sphere(rng, in.m, max_len));
        const auto hc = tw::hom_complex(in.x, y);
        const freetwist::CohomologyBasis coh(hc.differential);
        BitVec f(hc.dim);
        for (const auto& r : coh.representatives())
            if (rng() & 1) f ^= r;
        f ^= hc.differential.apply(random_vector(rng, hc.dim)); // plus a coboundary
        const TwObject c = tw::cone(in.x, y, HomBasis(in.x, y).unflatten(f));
        const std::size_t zx = tw::hf(z, in.x), zy = tw::hf(z, y), zc = tw::hf(z, c);
        const std::size_t xz = tw::hf(in.x, z), yz = tw::hf(y, z), cz = tw::hf(c, z);
        auto diff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
        const std::string tag = "cone bounds on " + in.spec.to_string();
        t.check(diff(zx, zy) <= zc && zc <= zx + zy, tag + " (left)");
        t.check(diff(xz, yz) <= cz && cz <= xz + yz, tag + " (right)");
        t.check(tw::validate_mc(c).empty(), tag + ": cone fails Maurer-Cartan");
    }
}

inline void reduce_invariance(oracle::Rng& rng, std::size_t trials, std::size_t max_len, Tally& t) {
    for (std::size_t k = 0; k < trials; ++k) {
        const auto in = random_instance(rng, 1, 3, max_len);
        const ObjectId l = rng() % in.m;
        const TwObject raw = (rng() & 1) ? tw::twist(l, in.x) : tw::untwist(l, in.x);
        const TwObject red = tw::reduce(raw);
        const TwObject z = zz::sphere(in.cat, oracle::random_sphere(rng, in.m, max_len));
        const std::string tag = "reduce on " + in.spec.to_string();
        t.check(tw::hf(z, raw) == tw::hf(z, red), tag + " (left)");
        t.check(tw::hf(raw, z) == tw::hf(red, z), tag + " (right)");
        t.check(red.total_multiplicity() <= raw.total_multiplicity(), tag + " grew");
        const auto d = tw::hom_complex(raw, z).differential;
        t.check((d * d).is_zero(), tag + ": differential does not square to zero");
    }
}

// hf(twist^n(L, X), Y) = hf(X, untwist^n(L, Y)).
inline void duality(oracle::Rng& rng, std::size_t trials, std::size_t max_len, Tally& t) {
    for (std::size_t k = 0; k < trials; ++k) {
        const auto in = random_instance(rng, 1, 3, max_len);
        const ObjectId l = rng() % in.m;
        const TwObject y = zz::sphere(in.cat, oracle::random_sphere(rng, in.m, max_len));
        const std::size_t n = 1 + rng() % 3;
        TwObject tx = in.x, uy = y;
        for (std::size_t i = 0; i < n; ++i) {
            tx = tw::reduce(tw::twist(l, tx));
            uy = tw::reduce(tw::untwist(l, uy));
        }
        t.check(tw::hf(tx, y) == tw::hf(in.x, uy), "duality on " + in.spec.to_string());
    }
}

inline std::string summary(const Tally& t) {
    std::ostringstream os;
    os << t.cases << " checks";
    for (const auto& f : t.failures) os << "; FAILED " << f;
    return os.str();
}

} // namespace props
