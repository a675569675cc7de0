#ifndef HYPERIPS_EXPERIMENT_HPP
#define HYPERIPS_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "hyperips/generators.hpp"
#include "hyperips/initial_law.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

// A fully built experiment model: the rule system plus whatever context the
// quantities need (edge-agent layout for graph-valued models, closed-form
// data for the worst-case instance).
struct BuiltModel {
    RateSystem system;
    Vertex n_graph = 0;       // graph vertices for flip / joint models
    Vertex edge_agent_base = 0;
    bool has_edge_agents = false;
    bool has_law = false;     // model dictates its own initial law
    InitialLaw law{1, 1};
    double rtilde_input = 0.0; // counterexample: influence of the input family
};

// Parse a JSON spec (see README for the schema), run every requested
// quantity, and write CSV/JSON artifacts plus manifest.json under out_dir.
// Data files are byte-identical across reruns; timestamps live only in the
// manifest.  Returns the list of files written (manifest last).
std::vector<std::string> run_experiment(const std::string& spec_json, const std::string& out_dir);

// One run per value of the dotted parameter path (e.g. "graph.d"), each with
// a seed split off the template seed, then long-format aggregation: every
// run CSV gains a leading `param` column and runs are concatenated.
std::vector<std::string> run_sweep(const std::string& template_json, const std::string& param,
                                   const std::vector<double>& values, const std::string& out_dir);

// canonical spec text for a named preset; SpecInvalid for unknown names
std::string preset_spec(const std::string& name);

// run a preset end to end (some presets sweep and post-process)
std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir);

// exposed for tests and the CLI: graph/model/law construction from spec
// fragments (each argument is one JSON object)
Adjacency build_graph_from_spec(const std::string& graph_json);
BuiltModel build_model_from_spec(const std::string& model_json);
InitialLaw build_law_from_spec(const std::string& law_json, const RateSystem& sys);

} // namespace hyperips

#endif
