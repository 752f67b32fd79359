#pragma once

// Batch commands behind the command-line tool.  Each returns a RunReport and
// an exit status.

#include "periph/json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

namespace periph {

enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitCheck = 3, kExitCap = 4 };

struct CommandOptions {
    int threads = 1;
    int cap_order = default_cap_order();
    std::size_t limit = kDefaultEnumLimit;
};

struct CommandResult {
    RunReport report;
    int status = kExitOk;
};

/// A named input: file contents plus parsed JSON.
struct Input {
    std::string name;
    std::string content;
    Json json;
};

inline Input read_input(const std::string& path) {
    std::string content;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        content = ss.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot read '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    Json j;
    try {
        j = Json::parse(content);
    } catch (const Json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
    return {path, std::move(content), std::move(j)};
}

/// A group argument: inline JSON, a JSON file, or a catalog name.
inline FiniteGroup resolve_group(const std::string& arg, RunReport* report = nullptr) {
    if (!arg.empty() && arg.front() == '{') {
        if (report) report->add_input("group", arg);
        return group_from_json(Json::parse(arg));
    }
    if (std::filesystem::is_regular_file(arg)) {
        Input in = read_input(arg);
        if (report) report->add_input(in.name, in.content);
        return group_from_json(in.json);
    }
    if (report) report->add_input("group", arg);
    return named_group(arg);
}

namespace detail {

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline CommandResult start(const std::string& command, const CommandOptions& o) {
    CommandResult r;
    r.report.command = command;
    r.report.threads = o.threads;
    return r;
}

inline std::vector<Homomorphism> relabel(std::vector<Homomorphism> homs, const FiniteGroup& g) {
    for (Homomorphism& h : homs) h.target = &g;
    return homs;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline CommandResult cmd_parse(const Input& in, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("parse", o);
    r.report.add_input(in.name, in.content);
    const NamedDiagram d = diagram_from_json(in.json);
    r.report.results = diagram_json(d.diagram);
    r.report.results["name"] = d.name;
    r.report.seconds = clock.seconds();
    return r;
}

inline CommandResult cmd_present(const Input& in, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("present", o);
    r.report.add_input(in.name, in.content);
    const NamedDiagram nd = diagram_from_json(in.json);
    const LinkDiagram& d = nd.diagram;
    const WirtingerPresentation p = presentation(d);
    Json out = presentation_json(p);
    Json raw = Json::array(), pref = Json::array(), sys = Json::array();
    const std::vector<Word> system = preferred_system(d, p);
    for (int i = 0; i < d.component_count(); ++i) {
        raw.push_back(word_json(longitude_raw(d, p, i)));
        pref.push_back(word_json(preferred_longitude(d, p, i)));
        sys.push_back(word_json(system[static_cast<std::size_t>(i)]));
    }
    out["longitudes_raw"] = raw;
    out["preferred_longitudes"] = pref;
    out["preferred_system"] = sys;
    const AbelianInvariants ab = abelian_invariants(p);
    out["abelianization"] = {{"free_rank", ab.free_rank}, {"torsion", integers_json(ab.torsion)}};
    out["name"] = nd.name;
    r.report.results = out;
    r.report.seconds = clock.seconds();
    return r;
}

struct HomsOptions {
    bool surjective_only = false;
    bool orbits = false;
};

/// Homomorphisms of a diagram's link group or of a presentation into g.
inline CommandResult cmd_homs(const Input& in, const FiniteGroup& g, const HomsOptions& ho = {}, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("homs", o);
    r.report.add_input(in.name, in.content);
    EnumOptions eo;
    eo.surjective_only = ho.surjective_only;
    eo.limit = o.limit;
    eo.threads = o.threads;
    std::optional<LinkDiagram> diagram;
    std::optional<WirtingerPresentation> wp;
    GroupPresentation gp;
    if (in.json.is_object() && in.json.contains("generators")) {
        gp = group_presentation_from_json(in.json);
    } else {
        diagram = diagram_from_json(in.json).diagram;
        wp = presentation(*diagram);
        gp = as_group_presentation(*wp);
    }
    EnumResult er = enumerate_homs(gp, g, eo);
    std::vector<Homomorphism> homs = detail::relabel(std::move(er.homs), g);
    if (ho.orbits) homs = conjugation_orbit_representatives(g, homs);
    Json list = Json::array();
    std::size_t surjective = 0;
    for (const Homomorphism& h : homs) {
        if (h.surjective) ++surjective;
        if (diagram) {
            const PeripheralSystem s = peripheral_system(*diagram, *wp, g, h);
            list.push_back(hom_json(g, h, &s));
        } else {
            list.push_back(hom_json(g, h));
        }
    }
    r.report.results = {{"group", group_summary_json(g)}, {"count", homs.size()},  {"surjective", surjective},
                        {"complete", er.complete},         {"nodes", er.nodes},     {"orbit_representatives", ho.orbits},
                        {"homomorphisms", list}};
    if (!er.complete) r.status = kExitCap;
    r.report.seconds = clock.seconds();
    return r;
}

/// {"group": ..., "mu": [...], "lambda": [...]}; the group may also be given
/// separately.
inline CommandResult cmd_check(const Input& in, const FiniteGroup* group, bool weak_only, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("check", o);
    r.report.add_input(in.name, in.content);
    std::optional<FiniteGroup> own;
    if (!group) {
        if (!in.json.contains("group")) throw ParseError("no group given");
        own = group_from_json(in.json.at("group"));
        group = &*own;
    }
    const FiniteGroup& g = *group;
    const std::vector<int> mu = elements_from_json(g, detail::json_get<Json>(in.json, "mu"));
    const std::vector<int> lambda = elements_from_json(g, detail::json_get<Json>(in.json, "lambda"));
    GroupHomology ctx(g, o.cap_order);
    const Verdict v = weak_only ? check_weak(ctx, mu, lambda) : check_full(ctx, mu, lambda);
    r.report.results = {{"group", group_summary_json(g)}, {"mu", elements_json(g, mu)}, {"lambda", elements_json(g, lambda)},
                        {"mode", weak_only ? "weak" : "full"}, {"verdict", verdict_json(g, v)}};
    const bool pass = weak_only ? v.weakly_realizable : v.realizable.value_or(false);
    if (!pass) r.status = kExitCheck;
    r.report.seconds = clock.seconds();
    return r;
}

inline Json ribbon_link_json(const FiniteGroup& g, const RibbonLink& link, const RibbonInput& in) {
    const LinkDiagram& d = link.diagram;
    const WirtingerPresentation p = presentation(d);
    const PeripheralSystem s = peripheral_system(d, p, g, link.hom);
    const std::vector<int> mu = in.mu();
    bool split = true;
    for (int i = 0; i < d.component_count(); ++i)
        for (int j = i + 1; j < d.component_count(); ++j)
            if (linking_number(d, i, j) != 0) split = false;
    const bool verified = verify_realization(d, g, link.hom, s.mu) && ribbon_meridians(link) == mu;
    return {{"input", ribbon_input_json(g, in)},
            {"pd", serialize_pd(d)},
            {"crossings", d.crossing_count()},
            {"band_count", link.band_count},
            {"component_index", link.component_index},
            {"assignment", elements_json(g, link.hom.assignment)},
            {"meridians", elements_json(g, ribbon_meridians(link))},
            {"surjective", link.hom.surjective},
            {"algebraically_split", split},
            {"verified", verified && split}};
}

/// Builds a ribbon link from {"group"?, "elements", "words"?}.
inline CommandResult cmd_ribbon(const Input& in, const FiniteGroup* group, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("ribbon", o);
    r.report.add_input(in.name, in.content);
    std::optional<FiniteGroup> own;
    if (!group) {
        if (!in.json.contains("group")) throw ParseError("no group given");
        own = group_from_json(in.json.at("group"));
        group = &*own;
    }
    const RibbonInput ri = ribbon_input_from_json(*group, in.json);
    const RibbonLink link = construct_ribbon(*group, ri);
    r.report.results = ribbon_link_json(*group, link, ri);
    if (!r.report.results["verified"].get<bool>()) r.status = kExitCheck;
    r.report.seconds = clock.seconds();
    return r;
}

/// A random meridional ribbon input with r components.
inline CommandResult cmd_ribbon_random(const FiniteGroup& g, int r_components, std::uint64_t seed, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("ribbon", o);
    r.report.add_input("random", "r=" + std::to_string(r_components) + " seed=" + std::to_string(seed));
    const RibbonInput ri = random_ribbon_input(g, r_components, seed);
    const RibbonLink link = construct_ribbon(g, ri);
    r.report.results = ribbon_link_json(g, link, ri);
    r.report.results["seed"] = seed;
    if (!r.report.results["verified"].get<bool>()) r.status = kExitCheck;
    r.report.seconds = clock.seconds();
    return r;
}

/// {"pd": ..., "assignment": [image of each Wirtinger generator]}.
inline LabelledDiagram labelled_from_json(const FiniteGroup& g, const Json& j) {
    LabelledDiagram out{diagram_from_json(j).diagram, {}};
    std::vector<int> labels = elements_from_json(g, detail::json_get<Json>(j, "assignment"));
    const WirtingerPresentation p = presentation(out.diagram);
    if (static_cast<int>(labels.size()) != p.generator_count)
        throw InvalidArgument("assignment has " + std::to_string(labels.size()) + " entries but the diagram has " +
                              std::to_string(p.generator_count) + " arcs");
    if (!satisfies(as_group_presentation(p), g, labels)) throw InvalidArgument("assignment violates a Wirtinger relation");
    out.hom = {std::move(labels), &g, false};
    out.hom.surjective = generates(g, out.hom.assignment);
    return out;
}

/// Multi-connected sum of labelled diagrams (optionally inverted first);
/// checks that the result realizes the componentwise product system.
inline CommandResult cmd_sum(const std::vector<Input>& ins, const FiniteGroup& g, bool invert, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("sum", o);
    if (ins.empty()) throw InvalidArgument("sum needs at least one labelled diagram");
    std::optional<LabelledDiagram> acc;
    std::vector<int> mu, lambda;
    for (const Input& in : ins) {
        r.report.add_input(in.name, in.content);
        LabelledDiagram ld = labelled_from_json(g, in.json);
        if (invert) ld = labelled_inverse(ld, g);
        const PeripheralSystem s = peripheral_system(ld.diagram, g, ld.hom);
        if (!acc) {
            acc = std::move(ld);
            mu = s.mu;
            lambda = s.lambda;
        } else {
            if (s.mu != mu) throw InvalidArgument("meridian images of '" + in.name + "' differ from the first input");
            acc = labelled_sum(*acc, ld, g);
            for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = g.mul(lambda[i], s.lambda[i]);
        }
    }
    const PeripheralSystem s = peripheral_system(acc->diagram, g, acc->hom);
    const bool verified = verify_realization(acc->diagram, g, acc->hom, mu, lambda);
    r.report.results = {{"pd", serialize_pd(acc->diagram)},
                        {"assignment", elements_json(g, acc->hom.assignment)},
                        {"mu", elements_json(g, s.mu)},
                        {"lambda", elements_json(g, s.lambda)},
                        {"expected_lambda", elements_json(g, lambda)},
                        {"surjective", acc->hom.surjective},
                        {"verified", verified}};
    if (!verified) r.status = kExitCheck;
    r.report.seconds = clock.seconds();
    return r;
}

inline CommandResult cmd_homology(const FiniteGroup& g, const std::vector<int>& degrees, bool generators, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("homology", o);
    GroupHomology ctx(g, o.cap_order);
    Json list = Json::array();
    for (int k : degrees) list.push_back(homology_json(g, ctx.homology(k), generators));
    r.report.results = {{"group", group_summary_json(g)}, {"homology", list}};
    r.report.seconds = clock.seconds();
    return r;
}

/// H2, H3, n and Q(G) for catalog groups with cyclic abelianization.
inline CommandResult cmd_qscan(int max_order, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("qscan", o);
    if (max_order > o.cap_order)
        throw CapExceeded("max order " + std::to_string(max_order) + " exceeds homology cap " + std::to_string(o.cap_order));
    Json list = Json::array();
    bool any_nonzero = false;
    for (const FiniteGroup& g : catalog()) {
        if (g.order() > max_order) continue;
        if (!abelianization(g).is_cyclic) continue;
        GroupHomology ctx(g, o.cap_order);
        const QGroup& q = ctx.q_group();
        if (!q.is_trivial()) any_nonzero = true;
        list.push_back({{"group", g.name()},
                        {"order", g.order()},
                        {"n", q.n},
                        {"H2", integers_json(ctx.homology(2).invariant_factors)},
                        {"H3", integers_json(ctx.homology(3).invariant_factors)},
                        {"Q", integers_json(q.factors)},
                        {"Q_nonzero", !q.is_trivial()}});
    }
    r.report.results = {{"max_order", max_order}, {"groups", list}, {"any_nonzero", any_nonzero}};
    r.report.seconds = clock.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// Sweep

namespace detail {

struct SweepCell {
    Json result;
    bool failed = false;
    bool capped = false;
};

/// Partial check without homology: conditions that need no H_2 or H_3.
inline Json capped_checks(const FiniteGroup& g, const PeripheralSystem& s, bool& ok) {
    const Abelianization ab = abelianization(g);
    Json out{{"meridional", is_meridional(g, s.mu)}};
    bool ci = true, ciii = true;
    for (std::size_t i = 0; i < s.mu.size(); ++i) {
        ci = ci && g.commute(s.mu[i], s.lambda[i]);
        ciii = ciii && ab.in_commutator(s.lambda[i]);
    }
    out["condition_i"] = ci;
    out["condition_iii"] = ciii;
    ok = out["meridional"].get<bool>() && ci && ciii;
    return out;
}

inline SweepCell sweep_cell(const NamedDiagram& nd, const FiniteGroup& g, GroupHomology* ctx, const CommandOptions& o) {
    SweepCell cell;
    const LinkDiagram& d = nd.diagram;
    const WirtingerPresentation p = presentation(d);
    EnumOptions eo;
    eo.surjective_only = true;
    eo.limit = o.limit;
    const EnumResult er = enumerate_homs(as_group_presentation(p), g, eo);
    std::size_t weak = 0, full = 0;
    Json failures = Json::array();
    for (Homomorphism h : er.homs) {
        h.target = &g;
        const PeripheralSystem s = peripheral_system(d, p, g, h);
        bool conjugate = true;
        for (std::size_t i = 1; i < s.mu.size(); ++i)
            if (!conjugator(g, s.mu[0], s.mu[i])) conjugate = false;
        if (!ctx) {
            bool ok = false;
            Json partial = capped_checks(g, s, ok);
            if (!ok) failures.push_back({{"hom", hom_json(g, h, &s)}, {"partial", partial}});
            continue;
        }
        const Verdict v = conjugate ? check_full(*ctx, s.mu, s.lambda) : check_weak(*ctx, s.mu, s.lambda);
        ++weak;
        bool ok = v.weakly_realizable;
        if (conjugate) {
            ++full;
            ok = ok && v.realizable.value_or(false);
        }
        if (!ok) failures.push_back({{"hom", hom_json(g, h, &s)}, {"verdict", verdict_json(g, v)}});
    }
    cell.failed = !failures.empty() || !er.complete;
    cell.capped = ctx == nullptr;
    std::string status = cell.failed ? "fail" : "pass";
    if (!er.complete) status = "incomplete";
    else if (cell.capped && !cell.failed) status = "capped";
    cell.result = {{"diagram", nd.name},   {"group", g.name()},     {"status", status},
                   {"surjections", er.homs.size()}, {"weak_checked", weak}, {"full_checked", full},
                   {"failures", failures}};
    if (cell.capped)
        cell.result["note"] = "group order exceeds homology cap " + std::to_string(o.cap_order) + "; conditions (ii) and (iv) skipped";
    return cell;
}

}  // namespace detail

/// Reads corpus/diagrams/*.json (or every *.json directly in dir).
inline std::vector<Input> read_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path root(dir);
    if (fs::is_directory(root / "diagrams")) root /= "diagrams";
    if (!fs::is_directory(root)) throw ParseError("corpus directory '" + dir + "' not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Input> out;
    for (const fs::path& f : files) {
        Input in = read_input(f.string());
        in.name = f.filename().string();
        out.push_back(std::move(in));
    }
    if (out.empty()) throw ParseError("corpus directory '" + dir + "' has no diagrams");
    return out;
}

/// Necessity check over every (diagram, group) cell.  Cells run in parallel;
/// the merged results do not depend on the thread count.
inline CommandResult cmd_sweep(const std::vector<Input>& corpus, const std::vector<FiniteGroup>& groups, const CommandOptions& o = {}) {
    detail::Stopwatch clock;
    CommandResult r = detail::start("sweep", o);
    std::vector<NamedDiagram> diagrams;
    for (const Input& in : corpus) {
        r.report.add_input(in.name, in.content);
        NamedDiagram nd = diagram_from_json(in.json);
        if (nd.name.empty()) nd.name = in.name;
        diagrams.push_back(std::move(nd));
    }
    std::vector<std::unique_ptr<GroupHomology>> contexts;
    for (const FiniteGroup& g : groups)
        contexts.push_back(g.order() <= o.cap_order ? std::make_unique<GroupHomology>(g, o.cap_order) : nullptr);
    const std::size_t cells = diagrams.size() * groups.size();
    std::vector<detail::SweepCell> results(cells);
    std::vector<std::exception_ptr> errors(cells);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next++) < cells;) {
            const std::size_t di = k / groups.size(), gi = k % groups.size();
            try {
                results[k] = detail::sweep_cell(diagrams[di], groups[gi], contexts[gi].get(), o);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, o.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    Json list = Json::array();
    std::size_t failed = 0, capped = 0, surjections = 0;
    for (const detail::SweepCell& c : results) {
        if (c.failed) ++failed;
        if (c.capped) ++capped;
        surjections += c.result["surjections"].get<std::size_t>();
        list.push_back(c.result);
    }
    r.report.results = {{"cells", list},
                        {"summary", {{"cells", cells}, {"failed", failed}, {"capped", capped}, {"surjections", surjections}}}};
    if (failed) r.status = kExitCheck;
    else if (capped) r.status = kExitCap;
    r.report.seconds = clock.seconds();
    return r;
}

}  // namespace periph
