// dysongraph command-line tool. Exit codes: 0 all checks pass, 1 a check
// failed, 2 bad input.

#include "dysongraph/errors.hpp"
#include "dysongraph/io.hpp"
#include "dysongraph/run.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace dysongraph;

namespace {

struct Flags {
    std::string spec, rules, against, out, order, coupling, samples, radii;
    std::uint64_t seed = 0;
    std::string mode = "heuristic";
    std::string format = "json";
    std::size_t max_edges = 3;
    std::size_t steps = 6;
    bool tree_formula = false;
    unsigned threads = 1;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--spec", f.spec, "input document: DSESpec, solution, graphon, graph or graph array");
    sub->add_option("--rules", f.rules, "ToyRules JSON (renorm)");
    sub->add_option("--order", f.order, "N for solve, m for partial sums, depth for haar");
    sub->add_option("--coupling", f.coupling, "coupling g as p/q");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--mode", f.mode, "exact|heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", f.threads, "worker threads; never changes the output")->check(CLI::PositiveNumber);
}

std::size_t parse_count(const std::string& text, const std::string& flag) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.empty() || text[0] == '-') throw ParseError(flag + ": expected a nonnegative integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

RunConfig make_config(const std::string& subcommand, const Flags& f) {
    RunConfig c;
    c.subcommand = subcommand;
    if (!f.spec.empty()) c.spec = read_json_file(f.spec);
    if (!f.rules.empty()) c.rules = read_json_file(f.rules);
    if (!f.against.empty()) c.against = read_json_file(f.against);
    if (!f.order.empty()) c.order = parse_count(f.order, "--order");
    if (!f.coupling.empty()) c.coupling = parse_rational(f.coupling);
    if (!f.samples.empty()) c.samples = parse_count(f.samples, "--samples");
    if (!f.radii.empty()) {
        std::size_t start = 0;
        while (start <= f.radii.size()) {
            const auto end = std::min(f.radii.find(',', start), f.radii.size());
            c.radii.push_back(parse_rational(f.radii.substr(start, end - start)));
            start = end + 1;
        }
    }
    c.seed = f.seed;
    c.mode = parse_mode(f.mode);
    c.format = parse_format(f.format);
    c.max_edges = f.max_edges;
    c.steps = f.steps;
    c.tree_formula = f.tree_formula;
    c.threads = f.threads;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dyson-Schwinger trees, renormalization, graphons and graph polynomials"};
    app.set_version_flag("--version", std::string(DYSONGRAPH_VERSION));
    app.require_subcommand(1);
    Flags f;

    auto* solve = app.add_subcommand("solve", "solve a Dyson-Schwinger equation to order N");
    auto* renorm = app.add_subcommand("renorm", "counterterms and renormalized values of X_1..X_m");
    auto* graphon = app.add_subcommand("graphon", "densities and cut norms of a graphon or of F(Y_m)");
    auto* tutte = app.add_subcommand("tutte", "Tutte polynomials of graphs or of a partial sum");
    auto* symanzik = app.add_subcommand("symanzik", "Kirchhoff-Symanzik polynomials with determinant checks");
    auto* haar = app.add_subcommand("haar", "Monte-Carlo ball measures and KS test of the Haar norm law");
    auto* trace = app.add_subcommand("trace", "convergence trace and coupling flow in cut distance");
    for (auto* sub : {solve, renorm, graphon, tutte, symanzik, haar, trace}) add_common(sub, f);
    graphon->add_option("--against", f.against, "second graphon for a cut distance");
    graphon->add_option("--max-edges", f.max_edges, "largest pattern in the density fingerprint");
    tutte->add_flag("--tree-formula", f.tree_formula, "compare the rooted-tree formula on every tree of X_1..X_m");
    symanzik->add_option("--samples", f.samples, "random weight assignments per graph (default 50)");
    haar->add_option("--samples", f.samples, "Monte-Carlo samples N (default 100000)");
    haar->add_option("--radii", f.radii, "comma-separated radii (default 1/10,1/4,1/2,3/4,9/10)");
    trace->add_option("--steps", f.steps, "coupling-flow steps n = 1..steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig config = make_config(app.get_subcommands().front()->get_name(), f);
        const RunResult result = run(config);
        const std::string text = render(result, config.format);
        if (f.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(f.out, std::ios::binary);
            if (!out || !(out << text)) throw ValidationError("cannot write '" + f.out + "'");
        }
        if (!result.pass) std::cerr << "FAIL: a check did not hold (see the report)\n";
        return exit_code(result);
    } catch (const InternalError& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 1;
    } catch (const TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return 2;
    } catch (const SizeError& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
