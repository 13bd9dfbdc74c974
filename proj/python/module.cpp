#include "dysongraph/errors.hpp"
#include "dysongraph/graphon.hpp"
#include "dysongraph/graphpoly.hpp"
#include "dysongraph/haar.hpp"
#include "dysongraph/io.hpp"
#include "dysongraph/renorm.hpp"
#include "dysongraph/run.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dysongraph;

namespace {

std::string solve_json(const std::string& spec) { return to_json(solve(dse_spec_from_json(parse_json(spec)))).dump(); }

std::string renormalize_json(const std::string& solution, const std::string& rules, std::size_t m) {
    const DSESolution sol = solution_from_json(parse_json(solution));
    const ToyRules r = toy_rules_from_json(parse_json(rules));
    const auto ren = renormalize_solution(r, sol, m);
    Json out = Json::array();
    for (std::size_t n = 1; n <= m; ++n)
        out.push_back(Json{{"grade", n}, {"counterterm", to_json(ren.counterterms[n - 1])}, {"renormalized", to_json(ren.renormalized[n - 1])}});
    return out.dump();
}

MultiGraph graph(const std::string& text) { return multigraph_from_json(parse_json(text)); }

std::string tutte_json(const std::string& g) { return to_json(tutte(graph(g))).dump(); }
std::string psi_json(const std::string& g) { return to_json(symanzik_psi(graph(g))).dump(); }
std::string spanning_trees(const std::string& g) { return spanning_tree_count(graph(g)).get_str(); }

std::string cut_norm_json(const std::string& w, const std::string& mode, std::uint64_t seed) {
    return to_json(cut_norm(step_graphon_from_json(parse_json(w)), parse_mode(mode), seed)).dump();
}

std::string cut_distance_json(const std::string& w, const std::string& u, const std::string& mode, std::uint64_t seed) {
    return to_json(cut_distance(step_graphon_from_json(parse_json(w)), step_graphon_from_json(parse_json(u)), parse_mode(mode), seed))
        .dump();
}

std::string hom_density_text(const std::string& graph6, const std::string& w) {
    return to_string(hom_density(from_graph6(graph6), step_graphon_from_json(parse_json(w))));
}

py::dict ball_measure(const std::string& r, std::size_t depth, std::size_t samples, std::uint64_t seed, unsigned threads) {
    BallEstimate e;
    {
        py::gil_scoped_release release;
        e = ball_measure_mc(parse_rational(r), depth, samples, seed, threads);
    }
    py::dict d;
    d["r"] = to_string(e.r);
    d["m"] = e.depth;
    d["N"] = e.samples;
    d["seed"] = e.seed;
    d["hits"] = e.hits;
    d["estimate"] = e.estimate;
    d["stderr"] = e.stderr_;
    d["within_bound"] = e.within_bound;
    return d;
}

std::string haar_distance(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y, std::size_t depth, const std::string& g,
                          const std::string& eps) {
    const auto u = make_universe(depth);
    return to_string(distance(SolutionPoint::from_ranks(u, x), SolutionPoint::from_ranks(u, y), parse_rational(g), parse_rational(eps)));
}

py::tuple run_config(const std::string& config, unsigned threads) {
    RunConfig c = RunConfig::from_json(parse_json(config));
    c.threads = threads;
    RunResult r;
    {
        py::gil_scoped_release release;
        r = run(c);
    }
    return py::make_tuple(exit_code(r), render(r, c.format));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dysongraph core: JSON strings in, JSON strings out";
    m.attr("__version__") = DYSONGRAPH_VERSION;

    static py::exception<Error> error(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<SizeError>(m, "SizeError", error.ptr());
    py::register_exception<TruncationError>(m, "TruncationError", error.ptr());
    py::register_exception<RefinementError>(m, "RefinementError", error.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", error.ptr());
    py::register_exception<MismatchError>(m, "MismatchError", error.ptr());
    py::register_exception<InternalError>(m, "InternalError", error.ptr());

    m.def("solve", &solve_json, py::arg("spec"), "DSESpec JSON -> solution document JSON");
    m.def("renormalize", &renormalize_json, py::arg("solution"), py::arg("rules"), py::arg("m"),
          "counterterms and renormalized values of X_1..X_m as JSON");
    m.def("tutte", &tutte_json, py::arg("graph"));
    m.def("symanzik_psi", &psi_json, py::arg("graph"));
    m.def("spanning_tree_count", &spanning_trees, py::arg("graph"), "decimal string");
    m.def("cut_norm", &cut_norm_json, py::arg("graphon"), py::arg("mode") = "exact", py::arg("seed") = 0);
    m.def("cut_distance", &cut_distance_json, py::arg("w"), py::arg("u"), py::arg("mode") = "heuristic", py::arg("seed") = 0);
    m.def("hom_density", &hom_density_text, py::arg("graph6"), py::arg("graphon"));
    m.def("ball_measure", &ball_measure, py::arg("r"), py::arg("depth"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 1);
    m.def("haar_distance", &haar_distance, py::arg("x"), py::arg("y"), py::arg("depth"), py::arg("g") = "1", py::arg("eps") = "1");
    m.def("run", &run_config, py::arg("config"), py::arg("threads") = 1, "RunConfig JSON -> (exit code, rendered output)");
}
