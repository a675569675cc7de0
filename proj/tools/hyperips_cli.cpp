#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperips/errors.hpp"
#include "hyperips/experiment.hpp"
#include "hyperips/io.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hyperips;

std::string load_spec(const std::string& file, const std::string& inline_json) {
    if (!inline_json.empty()) return inline_json;
    if (!file.empty()) return read_file(file);
    fail(Errc::SpecInvalid, "provide --spec FILE or --json TEXT");
}

void to_file_or_stdout(const std::string& out, const std::string& content) {
    if (out == "-")
        std::cout << content;
    else
        write_file(out, content);
}

void print_outputs(const std::vector<std::string>& files) {
    for (const std::string& f : files) std::cout << f << "\n";
}

// shared plumbing for the compute subcommands: spec input, overridable run
// parameters, and a required output directory
struct Compute {
    CLI::App* cmd = nullptr;
    std::string spec_file, inline_json, out;
    std::vector<double> grid;
    uint64_t seed = 0, replicas = 0;
    uint32_t threads = 0;

    void wire(CLI::App& app, const char* name, const char* desc) {
        cmd = app.add_subcommand(name, desc);
        cmd->add_option("--spec", spec_file, "JSON spec file");
        cmd->add_option("--json", inline_json, "inline JSON spec");
        cmd->add_option("--t", grid, "time grid override")->expected(-1);
        cmd->add_option("--seed", seed, "base seed override");
        cmd->add_option("--replicas", replicas, "replica count override");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--out", out, "output directory")->required();
    }

    json spec() const {
        json s = json::parse(load_spec(spec_file, inline_json), nullptr, false);
        if (s.is_discarded() || !s.is_object())
            fail(Errc::SpecInvalid, "config is not a JSON object");
        if (cmd->count("--t")) s["t_grid"] = grid;
        if (cmd->count("--seed")) s["seed"] = seed;
        if (cmd->count("--replicas")) s["replicas"] = replicas;
        if (cmd->count("--threads")) s["threads"] = threads;
        return s;
    }

    void run_as(const std::string& quantity) const {
        json s = spec();
        s["quantities"] = json::array({quantity});
        print_outputs(run_experiment(s.dump(), out));
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperips: Markov interacting particle systems on weighted directed hypergraphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // ----- generate: graph builders -> adjacency text format -----
    std::string g_kind, g_out = "-";
    uint64_t g_n = 0, g_seed = 0, g_d = 4;
    double g_lambda = 4.0, g_alpha = 0.5, g_gamma = 0.25;
    CLI::App* gen = app.add_subcommand("generate", "write an interaction graph");
    gen->add_option("--kind", g_kind,
                    "er | chung-lu | complete | directed_star_out | path | random-regular")
        ->required();
    gen->add_option("--n", g_n, "vertex count")->required();
    gen->add_option("--lambda", g_lambda, "er: mean degree");
    gen->add_option("--alpha", g_alpha, "chung-lu: density exponent");
    gen->add_option("--gamma", g_gamma, "chung-lu: rank exponent");
    gen->add_option("--d", g_d, "random-regular: degree");
    gen->add_option("--seed", g_seed, "graph seed");
    gen->add_option("--out", g_out, "output file (- for stdout)");
    gen->callback([&] {
        json g;
        g["kind"] = g_kind;
        g["n"] = g_n;
        g["seed"] = g_seed;
        g["lambda"] = g_lambda;
        g["alpha"] = g_alpha;
        g["gamma"] = g_gamma;
        g["d"] = g_d;
        std::ostringstream os;
        write_adjacency(os, build_graph_from_spec(g.dump()));
        to_file_or_stdout(g_out, os.str());
    });

    // ----- model: model spec -> rate-rule text format -----
    std::string m_spec, m_json, m_out = "-";
    CLI::App* mod = app.add_subcommand("model", "build a rate-rule system from a model spec");
    mod->add_option("--spec", m_spec, "JSON file holding the model object");
    mod->add_option("--json", m_json, "inline JSON model object");
    mod->add_option("--out", m_out, "output file (- for stdout)");
    mod->callback([&] {
        const BuiltModel bm = build_model_from_spec(load_spec(m_spec, m_json));
        std::ostringstream os;
        write_rule_system(os, bm.system);
        to_file_or_stdout(m_out, os.str());
    });

    // ----- compute subcommands (directory output + manifest) -----
    Compute sim, nim, orc, bwd, bnd, exp, swp;
    sim.wire(app, "simulate", "forward Monte Carlo marginals");
    sim.cmd->callback([&] { sim.run_as("marginals"); });

    nim.wire(app, "nimfa", "mean-field ODE marginals");
    nim.cmd->callback([&] { nim.run_as("nimfa"); });

    orc.wire(app, "oracle", "exact marginals from the full master equation");
    orc.cmd->callback([&] { orc.run_as("oracle"); });

    bwd.wire(app, "backward", "information-set / branching estimates");
    std::string bwd_q = "collision";
    uint64_t bwd_root = 0, bwd_partner = 1;
    std::vector<uint64_t> bwd_subset;
    bwd.cmd->add_option("--quantity", bwd_q, "collision | blowup_functional | ghost");
    bwd.cmd->add_option("--root", bwd_root, "root vertex");
    bwd.cmd->add_option("--partner", bwd_partner, "second root (collision)");
    bwd.cmd->add_option("--subset", bwd_subset, "vertex subset (blowup_functional)")
        ->expected(-1);
    bwd.cmd->callback([&] {
        json s = bwd.spec();
        s["quantities"] = json::array({bwd_q});
        if (bwd.cmd->count("--root")) s["root"] = bwd_root;
        if (bwd.cmd->count("--partner")) s["partner"] = bwd_partner;
        if (bwd.cmd->count("--subset")) s["subset"] = bwd_subset;
        print_outputs(run_experiment(s.dump(), bwd.out));
    });

    bnd.wire(app, "bounds", "closed-form error/concentration bounds");
    uint64_t bnd_root = 0, bnd_m = 0;
    bnd.cmd->add_option("--root", bnd_root, "root vertex for the root-sum bound");
    bnd.cmd->add_option("--m", bnd_m, "observed subset size");
    bnd.cmd->callback([&] {
        json s = bnd.spec();
        s["quantities"] = json::array({"bounds"});
        if (bnd.cmd->count("--root")) s["root"] = bnd_root;
        if (bnd.cmd->count("--m")) s["subset"] = json{{"first", bnd_m}};
        print_outputs(run_experiment(s.dump(), bnd.out));
    });

    exp.wire(app, "experiment", "run every quantity listed in a spec");
    std::string preset;
    exp.cmd->add_option("--preset", preset, "linf-counterexample | regular-scaling");
    exp.cmd->callback([&] {
        if (!preset.empty())
            print_outputs(run_preset(preset, exp.out));
        else
            print_outputs(run_experiment(exp.spec().dump(), exp.out));
    });

    swp.wire(app, "sweep", "run a spec once per parameter value and aggregate");
    std::string sw_param;
    std::vector<double> sw_values;
    swp.cmd->add_option("--param", sw_param, "dotted parameter path, e.g. model.graph.d")
        ->required();
    swp.cmd->add_option("--values", sw_values, "parameter values")->required()->expected(-1);
    swp.cmd->callback(
        [&] { print_outputs(run_sweep(swp.spec().dump(), sw_param, sw_values, swp.out)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_cap() ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
