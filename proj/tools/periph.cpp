#include "periph/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace periph;

struct Globals {
    int threads = 1;
    int cap_order = default_cap_order();
    std::size_t limit = kDefaultEnumLimit;
    std::string output = "-";
    bool redact_timing = false;
    bool compact = false;

    CommandOptions options() const { return {threads, cap_order, limit}; }
};

void emit(const Globals& gl, const CommandResult& r) {
    const Json j = r.report.to_json(gl.redact_timing);
    const std::string text = gl.compact ? j.dump() : j.dump(2);
    if (gl.output == "-") {
        std::cout << text << '\n';
    } else {
        std::ofstream out(gl.output, std::ios::binary);
        if (!out) throw ParseError("cannot write '" + gl.output + "'");
        out << text << '\n';
    }
}

void add_inputs(CommandResult& r, const RunReport& extra) {
    for (const Json& in : extra.inputs) r.report.inputs.push_back(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peripheral systems of link-group homomorphisms onto finite groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--threads", gl.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--cap-order", gl.cap_order, "Largest group order for homology (default from PERIPH_CAP_ORDER or 16)")
        ->check(CLI::PositiveNumber);
    app.add_option("--limit", gl.limit, "Search-node limit for homomorphism enumeration")->check(CLI::PositiveNumber);
    app.add_option("-o,--output", gl.output, "Output file, '-' for standard output");
    app.add_flag("--redact-timing", gl.redact_timing, "Write null for timing so reports compare byte for byte");
    app.add_flag("--compact", gl.compact, "Single-line JSON");

    std::string input_path = "-";
    std::string group_arg;

    auto* parse = app.add_subcommand("parse", "Inspect a diagram");
    parse->add_option("input", input_path, "Diagram JSON ({\"pd\": ...})");

    auto* present = app.add_subcommand("present", "Wirtinger presentation and longitudes of a diagram");
    present->add_option("input", input_path, "Diagram JSON");

    HomsOptions homs_opts;
    auto* homs = app.add_subcommand("homs", "Enumerate homomorphisms into a finite group");
    homs->add_option("input", input_path, "Diagram or presentation JSON");
    homs->add_option("-g,--group", group_arg, "Catalog name, group JSON file, or inline JSON")->required();
    homs->add_flag("--surjective", homs_opts.surjective_only, "Only surjections");
    homs->add_flag("--orbits", homs_opts.orbits, "One homomorphism per conjugation orbit");

    bool weak_only = false;
    auto* check = app.add_subcommand("check", "Decide realizability of a peripheral system");
    check->add_option("input", input_path, "{\"group\"?, \"mu\", \"lambda\"}");
    check->add_option("-g,--group", group_arg, "Group, overriding the input's");
    check->add_flag("--weak", weak_only, "Weak realizability only");

    int random_r = 0;
    std::uint64_t seed = 1;
    auto* ribbon = app.add_subcommand("ribbon", "Build a ribbon link realizing a meridional system");
    ribbon->add_option("input", input_path, "{\"group\"?, \"elements\", \"words\"?}");
    ribbon->add_option("-g,--group", group_arg, "Group, overriding the input's");
    ribbon->add_option("--random", random_r, "Generate a random input with this many components")->check(CLI::PositiveNumber);
    ribbon->add_option("--seed", seed, "Seed for --random");

    std::vector<std::string> sum_inputs;
    bool invert = false;
    auto* sum = app.add_subcommand("sum", "Multi-connected sum of labelled diagrams");
    sum->add_option("inputs", sum_inputs, "Labelled diagrams {\"pd\", \"assignment\"}")->required();
    sum->add_option("-g,--group", group_arg, "Group")->required();
    sum->add_flag("--inverse", invert, "Invert each labelled diagram before summing");

    std::vector<int> degrees{1, 2, 3};
    bool generators = false;
    auto* homology = app.add_subcommand("homology", "Integral homology of a finite group");
    homology->add_option("-g,--group", group_arg, "Group")->required();
    homology->add_option("-k,--degree", degrees, "Degrees among 1, 2, 3")->check(CLI::Range(1, 3));
    homology->add_flag("--generators", generators, "Include generating cycles");

    int max_order = 0;
    auto* qscan = app.add_subcommand("qscan", "Q(G) over the catalog groups with cyclic abelianization");
    qscan->add_option("--max-order", max_order, "Largest group order scanned (default: the homology cap)");

    std::string corpus_dir = "corpus";
    std::vector<std::string> sweep_groups;
    auto* sweep = app.add_subcommand("sweep", "Necessity sweep over a corpus and groups");
    sweep->add_option("corpus", corpus_dir, "Corpus directory");
    sweep->add_option("-g,--group", sweep_groups, "Groups (default: the whole catalog)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const CommandOptions o = gl.options();
        CommandResult r;
        RunReport group_inputs;
        if (*parse) {
            r = cmd_parse(read_input(input_path), o);
        } else if (*present) {
            r = cmd_present(read_input(input_path), o);
        } else if (*homs) {
            const FiniteGroup g = resolve_group(group_arg, &group_inputs);
            r = cmd_homs(read_input(input_path), g, homs_opts, o);
        } else if (*check) {
            std::optional<FiniteGroup> g;
            if (!group_arg.empty()) g = resolve_group(group_arg, &group_inputs);
            r = cmd_check(read_input(input_path), g ? &*g : nullptr, weak_only, o);
        } else if (*ribbon) {
            std::optional<FiniteGroup> g;
            if (!group_arg.empty()) g = resolve_group(group_arg, &group_inputs);
            if (random_r > 0) {
                if (!g) throw InvalidArgument("--random needs --group");
                r = cmd_ribbon_random(*g, random_r, seed, o);
            } else {
                r = cmd_ribbon(read_input(input_path), g ? &*g : nullptr, o);
            }
        } else if (*sum) {
            const FiniteGroup g = resolve_group(group_arg, &group_inputs);
            std::vector<Input> ins;
            for (const std::string& p : sum_inputs) ins.push_back(read_input(p));
            r = cmd_sum(ins, g, invert, o);
        } else if (*homology) {
            const FiniteGroup g = resolve_group(group_arg, &group_inputs);
            r = cmd_homology(g, degrees, generators, o);
        } else if (*qscan) {
            r = cmd_qscan(max_order > 0 ? max_order : gl.cap_order, o);
        } else if (*sweep) {
            std::vector<FiniteGroup> groups;
            if (sweep_groups.empty()) groups = catalog();
            for (const std::string& s : sweep_groups) groups.push_back(resolve_group(s, &group_inputs));
            r = cmd_sweep(read_corpus(corpus_dir), groups, o);
        }
        add_inputs(r, group_inputs);
        emit(gl, r);
        return r.status;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitCheck;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
