#include "freetwist/zigzag.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "freetwist/error.hpp"

namespace freetwist::zigzag {

using tw::AInfCategory;
using tw::ObjectId;
using tw::TwObject;

tw::CategoryPtr zigzag(std::size_t m) {
    if (m == 0) throw InvalidInput("zigzag category needs at least one object");
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> dims(m, std::vector<std::size_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        names.push_back("P" + std::to_string(i + 1));
        dims[i][i] = 2;
        if (i + 1 < m) dims[i][i + 1] = dims[i + 1][i] = 1;
    }
    auto cat = std::make_shared<AInfCategory>(names, dims);
    for (std::size_t i = 0; i < m; ++i) cat->set_unit(i, 0);
    cat->add_strict_units();
    // a_{j->i} after a_{i->j} = X_i
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j : {i - 1, i + 1}) {
            if (j >= m) continue; // also catches i - 1 wrapping around
            const ObjectId o[] = {i, j, i};
            const std::size_t idx[] = {0, 0};
            cat->set_product(o, idx, BitVec::unit(2, 1));
        }
    }
    return cat;
}

std::size_t rank_of(const AInfCategory& cat) { return cat.object_count(); }

// ---------------------------------------------------------------- words

std::size_t BraidWord::length() const {
    std::size_t n = 0;
    for (const auto& [g, e] : letters) n += static_cast<std::size_t>(std::abs(e));
    return n;
}

BraidWord BraidWord::inverse() const {
    BraidWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.emplace_back(it->first, -it->second);
    return w;
}

BraidWord BraidWord::reduced() const {
    BraidWord w;
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

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    BraidWord w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w.reduced();
}

std::string BraidWord::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << 't' << letters[i].first;
        if (letters[i].second != 1) os << '^' << letters[i].second;
    }
    return os.str();
}

std::string SphereSpec::to_string() const {
    const std::string w = word.to_string();
    return (w.empty() ? "" : w + " ") + "@" + std::to_string(base);
}

namespace {

std::size_t parse_index(const std::string& text, std::size_t pos, const std::string& token) {
    std::size_t value = 0;
    const char* end = text.data() + text.size();
    auto [p, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || p != end || text.empty() || value == 0) {
        throw InvalidInput("bad index in token '" + token + "' at position " + std::to_string(pos));
    }
    return value;
}

int parse_exponent(const std::string& text, std::size_t pos, const std::string& token) {
    int value = 0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [p, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || p != end || begin == end || value == 0) {
        throw InvalidInput("bad exponent in token '" + token + "' at position " + std::to_string(pos));
    }
    return value;
}

// Tokens with their 1-based character positions in the original string.
std::vector<std::pair<std::string, std::size_t>> tokens(const std::string& text, std::size_t base_pos) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.emplace_back(text.substr(start, i - start), base_pos + start + 1);
    }
    return out;
}

BraidWord parse_word_at(const std::string& text, std::size_t base_pos) {
    BraidWord w;
    for (const auto& [tok, pos] : tokens(text, base_pos)) {
        if (tok.size() < 2 || tok[0] != 't') {
            throw InvalidInput("unexpected token '" + tok + "' at position " + std::to_string(pos) +
                               " (expected t<i> or t<i>^<e>)");
        }
        const auto caret = tok.find('^');
        const std::size_t g = parse_index(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1),
                                          pos, tok);
        const int e = caret == std::string::npos ? 1 : parse_exponent(tok.substr(caret + 1), pos, tok);
        w.letters.emplace_back(g, e);
    }
    return w;
}

} // namespace

BraidWord parse_word(const std::string& text) {
    if (const auto at = text.find('@'); at != std::string::npos) {
        throw InvalidInput("unexpected '@' at position " + std::to_string(at + 1) + " in a bare word");
    }
    return parse_word_at(text, 0);
}

SphereSpec parse_sphere(const std::string& text) {
    const auto at = text.find('@');
    if (at == std::string::npos) throw InvalidInput("sphere spec '" + text + "' lacks a base '@<i>'");
    if (text.find('@', at + 1) != std::string::npos) {
        throw InvalidInput("second '@' at position " + std::to_string(text.find('@', at + 1) + 1));
    }
    SphereSpec s;
    s.word = parse_word_at(text.substr(0, at), 0);
    const auto rest = tokens(text.substr(at + 1), at + 1);
    if (rest.size() != 1) {
        throw InvalidInput("expected a single base index after '@' at position " + std::to_string(at + 1));
    }
    s.base = parse_index(rest[0].first, rest[0].second, "@" + rest[0].first);
    return s;
}

void check_word(const BraidWord& w, std::size_t m) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const auto [g, e] = w.letters[i];
        if (g < 1 || g > m) {
            throw InvalidInput("generator t" + std::to_string(g) + " (letter " + std::to_string(i + 1) +
                               ") outside 1.." + std::to_string(m));
        }
        if (e == 0) throw InvalidInput("zero exponent at letter " + std::to_string(i + 1));
    }
}

// ---------------------------------------------------------------- spheres

TwObject apply_word(const BraidWord& w, const TwObject& x) {
    check_word(w, x.cat->object_count());
    TwObject cur = tw::reduce(x);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const ObjectId l = it->first - 1;
        for (int k = 0; k < std::abs(it->second); ++k) {
            cur = tw::reduce(it->second > 0 ? tw::twist(l, cur) : tw::untwist(l, cur));
        }
    }
    return cur;
}

TwObject sphere(const tw::CategoryPtr& cat, const BraidWord& w, std::size_t base) {
    if (base < 1 || base > cat->object_count()) {
        throw InvalidInput("base object " + std::to_string(base) + " outside 1.." +
                           std::to_string(cat->object_count()));
    }
    return apply_word(w, TwObject::plain(cat, base - 1));
}

TwObject sphere(const tw::CategoryPtr& cat, const SphereSpec& spec) { return sphere(cat, spec.word, spec.base); }

BraidWord sphere_twist_word(const SphereSpec& spec, int exponent) {
    BraidWord mid;
    if (exponent != 0) mid.letters.emplace_back(spec.base, exponent);
    return spec.word * mid * spec.word.inverse();
}

std::vector<std::size_t> fingerprint(const TwObject& x) {
    std::vector<std::size_t> out;
    for (ObjectId j = 0; j < x.cat->object_count(); ++j) out.push_back(tw::hf(TwObject::plain(x.cat, j), x));
    return out;
}

namespace {

amod::AModule as_module(amod::Side side, std::vector<F2Matrix> actions) {
    while (!actions.empty() && actions.back().is_zero()) actions.pop_back();
    amod::AModule m(side, 0);
    if (!actions.empty()) m.dim = actions.front().rows();
    m.actions = std::move(actions);
    return m;
}

} // namespace

amod::AModule hom_module_right(std::size_t l, const TwObject& x) {
    if (l < 1 || l > x.cat->object_count()) throw InvalidInput("object index out of range");
    auto m = as_module(amod::Side::Right, tw::right_actions(l - 1, x));
    const TwObject pl = TwObject::plain(x.cat, l - 1);
    m.dim = tw::HomBasis(pl, x).dim();
    return m;
}

amod::AModule hom_module_left(const TwObject& x, std::size_t l) {
    if (l < 1 || l > x.cat->object_count()) throw InvalidInput("object index out of range");
    auto m = as_module(amod::Side::Left, tw::left_actions(x, l - 1));
    const TwObject pl = TwObject::plain(x.cat, l - 1);
    m.dim = tw::HomBasis(x, pl).dim();
    return m;
}

} // namespace freetwist::zigzag
