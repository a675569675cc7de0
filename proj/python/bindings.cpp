// Python surface: JSON-spec driven construction plus the main estimators,
// solvers, and bound evaluators.  Heavy lifting stays in the C++ core; this
// layer only converts inputs and results.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperips/backward.hpp"
#include "hyperips/bounds.hpp"
#include "hyperips/experiment.hpp"
#include "hyperips/forward.hpp"
#include "hyperips/io.hpp"
#include "hyperips/master_equation.hpp"
#include "hyperips/models.hpp"
#include "hyperips/nimfa.hpp"

namespace py = pybind11;
using namespace hyperips;

namespace {

struct Built {
    BuiltModel model;
    InitialLaw law;
};

Built make(const std::string& model_json, const std::string& law_json) {
    Built b;
    b.model = build_model_from_spec(model_json);
    if (!law_json.empty())
        b.law = build_law_from_spec(law_json, b.model.system);
    else if (b.model.has_law)
        b.law = b.model.law;
    else
        fail(Errc::SpecInvalid, "this model has no built-in law; pass law_json");
    return b;
}

py::dict marginal_dict(const std::vector<double>& grid, Vertex n, const StateSpace& sp,
                       const std::function<double(std::size_t, Vertex, StateIdx)>& value,
                       const std::function<double(std::size_t, Vertex, StateIdx)>& se) {
    py::list values, errors;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        py::list vi, ei;
        for (Vertex i = 0; i < n; ++i) {
            py::list vs, es;
            for (std::size_t s = 0; s < sp.size(); ++s) {
                vs.append(value(g, i, StateIdx(s)));
                es.append(se(g, i, StateIdx(s)));
            }
            vi.append(vs);
            ei.append(es);
        }
        values.append(vi);
        errors.append(ei);
    }
    py::dict out;
    out["grid"] = grid;
    out["states"] = sp.names();
    out["values"] = values;     // [t][vertex][state]
    out["std_errors"] = errors; // zero rows for deterministic solvers
    return out;
}

py::dict report_dict(const BackwardEstimate& e) {
    py::dict out;
    out["value"] = e.report.value;
    out["std_error"] = e.report.std_error;
    out["replicas"] = e.report.replicas;
    out["truncation_fraction"] = e.truncation_fraction();
    return out;
}

} // namespace

PYBIND11_MODULE(_hyperips, m) {
    m.doc() = "simulation and verification engine for interacting particle systems "
              "on weighted directed hypergraphs";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "EngineError");

    m.def("generate_graph",
          [](const std::string& spec) {
              std::ostringstream os;
              write_adjacency(os, build_graph_from_spec(spec));
              return os.str();
          },
          py::arg("spec_json"),
          "Build a graph from a JSON spec and return its text serialization.");

    m.def("build_model",
          [](const std::string& spec) {
              std::ostringstream os;
              write_rule_system(os, build_model_from_spec(spec).system);
              return os.str();
          },
          py::arg("spec_json"),
          "Build a rate system from a JSON spec and return its text serialization.");

    m.def("simulate_marginals",
          [](const std::string& model, const std::vector<double>& grid, const std::string& law,
             uint64_t replicas, uint64_t seed, uint32_t threads) {
              const Built b = make(model, law);
              const MarginalEstimate est =
                  estimate_marginals(b.model.system, b.law, grid, replicas, seed, threads);
              return marginal_dict(
                  grid, b.model.system.n_vertices(), b.model.system.states(),
                  [&](std::size_t g, Vertex i, StateIdx s) { return est.value(g, i, s); },
                  [&](std::size_t g, Vertex i, StateIdx s) { return est.std_error(g, i, s); });
          },
          py::arg("model_json"), py::arg("grid"), py::arg("law_json") = "",
          py::arg("replicas") = 1000, py::arg("seed") = 0, py::arg("threads") = 1,
          "Monte-Carlo vertex-state occupation frequencies on a time grid.");

    m.def("mean_field",
          [](const std::string& model, const std::vector<double>& grid, const std::string& law) {
              const Built b = make(model, law);
              const std::size_t S = b.model.system.states().size();
              const NimfaResult res = integrate_nimfa(b.model.system, b.law, grid);
              py::dict out = marginal_dict(
                  grid, b.model.system.n_vertices(), b.model.system.states(),
                  [&](std::size_t g, Vertex i, StateIdx s) { return res.value(g, i, s, S); },
                  [&](std::size_t, Vertex, StateIdx) { return 0.0; });
              out["max_simplex_drift"] = res.max_simplex_drift;
              return out;
          },
          py::arg("model_json"), py::arg("grid"), py::arg("law_json") = "",
          "Integrated mean-field (quenched first-order) marginals on a time grid.");

    m.def("exact_marginals",
          [](const std::string& model, const std::vector<double>& grid, const std::string& law) {
              const Built b = make(model, law);
              const OracleMarginals res = exact_marginals(b.model.system, b.law, grid);
              return marginal_dict(
                  grid, b.model.system.n_vertices(), b.model.system.states(),
                  [&](std::size_t g, Vertex i, StateIdx s) { return res.value(g, i, s); },
                  [&](std::size_t, Vertex, StateIdx) { return 0.0; });
          },
          py::arg("model_json"), py::arg("grid"), py::arg("law_json") = "",
          "Exact marginals from the full master equation (small systems only).");

    m.def("collision_prob",
          [](const std::string& model, Vertex i, Vertex j, double t, uint64_t replicas,
             uint64_t seed, uint32_t threads) {
              return report_dict(estimate_collision_prob(build_model_from_spec(model).system, i,
                                                         j, t, replicas, seed, threads));
          },
          py::arg("model_json"), py::arg("i"), py::arg("j"), py::arg("t"),
          py::arg("replicas") = 10000, py::arg("seed") = 0, py::arg("threads") = 1,
          "Probability that the information sets of i and j meet by time t.");

    m.def("ghost_prob",
          [](const std::string& model, Vertex root, double t, uint64_t replicas, uint64_t seed,
             uint32_t threads) {
              return report_dict(estimate_ghost_prob(build_model_from_spec(model).system, root, t,
                                                     replicas, seed, threads));
          },
          py::arg("model_json"), py::arg("root"), py::arg("t"), py::arg("replicas") = 10000,
          py::arg("seed") = 0, py::arg("threads") = 1,
          "Probability that the backward branching structure repeats a vertex.");

    m.def("blowup_functional",
          [](const std::string& model, const std::vector<Vertex>& subset, double t,
             uint64_t replicas, uint64_t seed, uint32_t threads) {
              return report_dict(estimate_blowup_functional(build_model_from_spec(model).system,
                                                            subset, t, replicas, seed, threads));
          },
          py::arg("model_json"), py::arg("subset"), py::arg("t"), py::arg("replicas") = 10000,
          py::arg("seed") = 0, py::arg("threads") = 1,
          "Mean overlap of a root's information set at horizon 2t with the subset.");

    m.def("bound_reports",
          [](const std::string& model, double t, std::size_t m_size, Vertex root) {
              py::list out;
              for (const BoundReport& r :
                   bound_reports(build_model_from_spec(model).system, t, m_size, root)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["value"] = r.value;
                  py::dict inputs;
                  for (const auto& [k, v] : r.inputs) inputs[py::str(k)] = v;
                  d["inputs"] = inputs;
                  out.append(d);
              }
              return out;
          },
          py::arg("model_json"), py::arg("t"), py::arg("m_size") = 0, py::arg("root") = 0,
          "Every error/concentration bound that applies to the system at time t.");

    m.def("run_experiment", &run_experiment, py::arg("spec_json"), py::arg("out_dir"),
          "Run a full experiment spec; returns the list of files written.");
    m.def("run_sweep", &run_sweep, py::arg("template_json"), py::arg("param"), py::arg("values"),
          py::arg("out_dir"), "Run a parameter sweep and aggregate the per-run outputs.");
    m.def("run_preset", &run_preset, py::arg("name"), py::arg("out_dir"),
          "Run a named built-in experiment.");
    m.def("preset_spec", &preset_spec, py::arg("name"), "JSON spec of a named built-in experiment.");
}
