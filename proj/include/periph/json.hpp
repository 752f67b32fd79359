#pragma once

// JSON encodings of groups, presentations, diagrams, homomorphisms, homology
// classes and verdicts.

#include "periph/diagram.hpp"
#include "periph/error.hpp"
#include "periph/group.hpp"
#include "periph/homenum.hpp"
#include "periph/homology.hpp"
#include "periph/realize.hpp"
#include "periph/ribbon.hpp"
#include "periph/wirtinger.hpp"
#include "periph/word.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace periph {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

template <class T>
T json_get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace detail

inline Json integer_json(const Integer& x) {
    if (x >= Integer(INT64_MIN) && x <= Integer(INT64_MAX)) return Json(static_cast<std::int64_t>(x));
    return Json(to_string(x));
}

inline Json integers_json(const std::vector<Integer>& v) {
    Json out = Json::array();
    for (const Integer& x : v) out.push_back(integer_json(x));
    return out;
}

// ---------------------------------------------------------------------------
// Groups

/// Accepts a catalog name ("S3"), {"type":"named","name":...}, or the
/// cyclic / permutation / table specs.
inline FiniteGroup group_from_json(const Json& j) {
    if (j.is_string()) return named_group(j.get<std::string>());
    const std::string type = detail::json_get<std::string>(j, "type");
    const std::string name = j.contains("name") && type != "named" ? j.at("name").get<std::string>() : std::string{};
    if (type == "named") return named_group(detail::json_get<std::string>(j, "name"));
    if (type == "cyclic") return build_group(CyclicSpec{detail::json_get<int>(j, "n")}, name);
    if (type == "permutation")
        return build_group(PermutationSpec{detail::json_get<int>(j, "degree"), detail::json_get<std::vector<std::vector<int>>>(j, "generators")},
                           name);
    if (type == "table") return build_group(TableSpec{detail::json_get<std::vector<std::vector<int>>>(j, "table")}, name);
    throw ParseError("unknown group type '" + type + "'");
}

inline Json element_json(const FiniteGroup& g, int a) { return g.label(a); }

inline Json elements_json(const FiniteGroup& g, const std::vector<int>& v) {
    Json out = Json::array();
    for (int a : v) out.push_back(element_json(g, a));
    return out;
}

/// An element given by index (number) or label (string).
inline int element_from_json(const FiniteGroup& g, const Json& j) {
    if (j.is_number_integer()) {
        const int a = j.get<int>();
        g.check_element(a);
        return a;
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        for (int a = 0; a < g.order(); ++a)
            if (g.label(a) == s) return a;
        throw ParseError("no element labelled '" + s + "' in " + g.name());
    }
    throw ParseError("element must be an index or a label");
}

inline std::vector<int> elements_from_json(const FiniteGroup& g, const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of elements");
    std::vector<int> out;
    for (const Json& x : j) out.push_back(element_from_json(g, x));
    return out;
}

inline Json group_summary_json(const FiniteGroup& g) {
    const Abelianization ab = abelianization(g);
    return {{"name", g.name()}, {"order", g.order()}, {"abelianization_order", ab.quotient_order}, {"abelianization_cyclic", ab.is_cyclic}};
}

// ---------------------------------------------------------------------------
// Words and presentations

/// Signed 1-based generator indices, one per unit letter.
inline Json word_json(const Word& w) {
    Json out = Json::array();
    for (const Letter& l : w.letters())
        for (int k = 0; k < (l.exponent < 0 ? -l.exponent : l.exponent); ++k)
            out.push_back(l.exponent > 0 ? l.generator + 1 : -(l.generator + 1));
    return out;
}

inline Json presentation_json(const WirtingerPresentation& p) {
    Json names = Json::array(), rels = Json::array();
    for (int k = 0; k < p.generator_count; ++k) names.push_back("x" + std::to_string(k + 1));
    for (const Word& w : p.relations) rels.push_back(word_json(w));
    Json meridians = Json::array();
    for (int m : p.meridian_generator) meridians.push_back(m + 1);
    return {{"generators", p.generator_count}, {"names", names}, {"relations", rels}, {"meridian_generators", meridians},
            {"component_of", p.component_of}};
}

/// {"generators": n, "relators": [[[gen, exp], ...], ...]} with 1-based
/// generators; powers expand to unit letters.
inline GroupPresentation group_presentation_from_json(const Json& j) {
    GroupPresentation p;
    p.generator_count = detail::json_get<int>(j, "generators");
    const Json rels = detail::json_get<Json>(j, "relators");
    if (!rels.is_array()) throw ParseError("relators must be an array");
    for (const Json& r : rels) {
        if (!r.is_array()) throw ParseError("relator must be an array of [generator, exponent] pairs");
        std::vector<Letter> letters;
        for (const Json& l : r) {
            if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_number_integer())
                throw ParseError("letter must be [generator, exponent]");
            const int gen = l[0].get<int>();
            if (gen < 1 || gen > p.generator_count) throw ParseError("generator " + std::to_string(gen) + " out of range");
            const int e = l[1].get<int>();
            for (int k = 0; k < (e < 0 ? -e : e); ++k) letters.push_back({gen - 1, e > 0 ? 1 : -1});
        }
        p.relators.emplace_back(std::move(letters));
    }
    p.validate();
    return p;
}

inline Json group_presentation_json(const GroupPresentation& p) {
    Json rels = Json::array();
    for (const Word& w : p.relators) {
        Json r = Json::array();
        for (const Letter& l : w.letters()) r.push_back({l.generator + 1, l.exponent});
        rels.push_back(r);
    }
    return {{"generators", p.generator_count}, {"relators", rels}};
}

// ---------------------------------------------------------------------------
// Diagrams

/// A diagram wrapper {"name": ..., "pd": ...} or a bare PD string.
struct NamedDiagram {
    std::string name;
    LinkDiagram diagram;
};

inline NamedDiagram diagram_from_json(const Json& j) {
    if (j.is_string()) return {"", parse_pd(j.get<std::string>())};
    return {j.contains("name") ? j.at("name").get<std::string>() : std::string{}, parse_pd(detail::json_get<std::string>(j, "pd"))};
}

inline Json diagram_json(const LinkDiagram& d) {
    Json comps = Json::array();
    for (int i = 0; i < d.component_count(); ++i) {
        const Component& c = d.components()[static_cast<std::size_t>(i)];
        comps.push_back({{"first_edge", c.first_edge}, {"edge_count", c.edge_count}, {"self_writhe", self_writhe(d, i)}});
    }
    Json signs = Json::array();
    for (const Crossing& x : d.crossings()) signs.push_back(x.sign);
    Json lk = Json::array();
    for (int i = 0; i < d.component_count(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < d.component_count(); ++j) row.push_back(i == j ? 0 : linking_number(d, i, j));
        lk.push_back(row);
    }
    return {{"pd", serialize_pd(d)}, {"crossings", d.crossing_count()}, {"components", comps}, {"signs", signs},
            {"linking_numbers", lk}, {"planar", d.is_planar()}};
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// Groups components by conjugacy of their meridian images: entry i is the
/// smallest component index whose meridian image is conjugate to mu_i.
inline std::vector<int> conjugacy_pattern(const FiniteGroup& g, const std::vector<int>& mu) {
    std::vector<int> out;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        int rep = static_cast<int>(i);
        for (std::size_t k = 0; k < i; ++k)
            if (conjugator(g, mu[k], mu[i])) {
                rep = static_cast<int>(k);
                break;
            }
        out.push_back(rep);
    }
    return out;
}

inline Json hom_json(const FiniteGroup& g, const Homomorphism& h, const PeripheralSystem* s = nullptr) {
    Json out{{"assignment", elements_json(g, h.assignment)}, {"surjective", h.surjective}};
    if (s) {
        out["mu"] = elements_json(g, s->mu);
        out["lambda"] = elements_json(g, s->lambda);
        out["lambda_bar"] = elements_json(g, s->lambda_bar);
        out["conjugacy_pattern"] = conjugacy_pattern(g, s->mu);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homology

inline Json class_json(const HomologyClass& c) {
    return {{"coordinates", integers_json(c.coordinates)}, {"factors", integers_json(c.factors)}, {"zero", c.is_zero()}};
}

inline Json chain_json(const FiniteGroup& g, const ChainVector& c) {
    Json terms = Json::array();
    for (const auto& [tuple, coeff] : c.terms) terms.push_back({{"tuple", elements_json(g, tuple)}, {"coefficient", integer_json(coeff)}});
    return {{"degree", c.degree}, {"terms", terms}};
}

inline Json homology_json(const FiniteGroup& g, const HomologyGroup& h, bool with_generators = false) {
    Json out{{"degree", h.degree}, {"invariant_factors", integers_json(h.invariant_factors)}};
    if (with_generators) {
        Json gens = Json::array();
        for (const ChainVector& c : h.generator_cycles) gens.push_back(chain_json(g, c));
        out["generator_cycles"] = gens;
    }
    return out;
}

inline Json q_group_json(const QGroup& q) {
    Json images = Json::array();
    for (const HomologyClass& c : q.image_generators) images.push_back(integers_json(c.coordinates));
    return {{"n", q.n}, {"ambient_factors", integers_json(q.ambient_factors)}, {"image_generators", images},
            {"factors", integers_json(q.factors)}, {"trivial", q.is_trivial()}};
}

// ---------------------------------------------------------------------------
// Verdicts and ribbon links

inline Json verdict_json(const FiniteGroup& g, const Verdict& v) {
    Json out{{"meridional", v.meridional},
             {"condition_i", v.condition_i},
             {"condition_ii", v.condition_ii},
             {"weakly_realizable", v.weakly_realizable}};
    if (v.theta) out["theta"] = class_json(*v.theta);
    if (v.realizable) {
        out["conjugate_meridians"] = v.conjugate_meridians;
        out["condition_iii"] = v.condition_iii;
        if (v.condition_iv) {
            out["condition_iv"] = *v.condition_iv;
            out["jl_product"] = class_json(*v.jl);
        } else {
            out["condition_iv"] = "not applicable";
            out["condition_iv_note"] = v.condition_iv_note;
        }
        out["realizable"] = *v.realizable;
        if (!v.twisted_candidates.empty()) {
            Json c = Json::array();
            for (const auto& l : v.twisted_candidates) c.push_back(elements_json(g, l));
            out["twisted_candidates"] = c;
        }
    }
    return out;
}

/// {"elements": [[mu_11, mu_12, ...], ...], "words": [[[], [signed 1-based
/// flattened indices], ...], ...]}; words may be omitted for single-element rows.
inline RibbonInput ribbon_input_from_json(const FiniteGroup& g, const Json& j) {
    RibbonInput in;
    const Json rows = detail::json_get<Json>(j, "elements");
    if (!rows.is_array()) throw ParseError("elements must be an array of rows");
    for (const Json& row : rows) in.elements.push_back(elements_from_json(g, row));
    if (j.contains("words")) {
        for (const Json& row : j.at("words")) {
            std::vector<Word> words;
            for (const Json& w : row) {
                if (!w.is_array()) throw ParseError("word must be an array of signed indices");
                Word word;
                for (const Json& l : w) {
                    const int v = l.get<int>();
                    if (v == 0) throw ParseError("word letter 0 is not allowed");
                    word.push_back({(v > 0 ? v : -v) - 1, v > 0 ? 1 : -1});
                }
                words.push_back(std::move(word));
            }
            in.words.push_back(std::move(words));
        }
    } else {
        for (const auto& row : in.elements) in.words.emplace_back(row.size());
    }
    return in;
}

inline Json ribbon_input_json(const FiniteGroup& g, const RibbonInput& in) {
    Json rows = Json::array(), words = Json::array();
    for (const auto& row : in.elements) rows.push_back(elements_json(g, row));
    for (const auto& row : in.words) {
        Json ws = Json::array();
        for (const Word& w : row) ws.push_back(word_json(w));
        words.push_back(ws);
    }
    return {{"elements", rows}, {"words", words}};
}

// ---------------------------------------------------------------------------
// Run reports

/// 64-bit FNV-1a hash as 16 hex digits.
inline std::string fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = digits[h & 0xf];
    return out;
}

struct RunReport {
    std::string command;
    Json inputs = Json::array();
    Json results = Json::object();
    double seconds = 0;
    int threads = 1;

    void add_input(const std::string& name, const std::string& content) { inputs.push_back({{"name", name}, {"fnv1a", fnv1a(content)}}); }

    Json to_json(bool redact_timing = false) const {
        return {{"command", command},     {"version", kSchemaVersion}, {"threads", threads}, {"inputs", inputs},
                {"results", results},     {"seconds", redact_timing ? Json(nullptr) : Json(seconds)}};
    }
};

}  // namespace periph
