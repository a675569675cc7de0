#include "hyperips/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hyperips/backward.hpp"
#include "hyperips/bounds.hpp"
#include "hyperips/forward.hpp"
#include "hyperips/generators.hpp"
#include "hyperips/io.hpp"
#include "hyperips/master_equation.hpp"
#include "hyperips/models.hpp"
#include "hyperips/motif.hpp"
#include "hyperips/nimfa.hpp"

namespace hyperips {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void spec_fail(const std::string& msg) { fail(Errc::SpecInvalid, msg); }

json parse_spec(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) spec_fail("config is not valid JSON");
    if (!j.is_object()) spec_fail("config must be a JSON object");
    return j;
}

const json& need(const json& obj, const std::string& key) {
    if (!obj.contains(key)) spec_fail("missing '" + key + "'");
    return obj.at(key);
}

double num(const json& obj, const std::string& key) {
    const json& v = need(obj, key);
    if (!v.is_number()) spec_fail("'" + key + "' must be a number");
    return v.get<double>();
}

double num_or(const json& obj, const std::string& key, double dflt) {
    return obj.contains(key) ? num(obj, key) : dflt;
}

uint64_t uint_or(const json& obj, const std::string& key, uint64_t dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<int64_t>() < 0)
        spec_fail("'" + key + "' must be a nonnegative integer");
    return v.get<uint64_t>();
}

std::string str(const json& obj, const std::string& key) {
    const json& v = need(obj, key);
    if (!v.is_string()) spec_fail("'" + key + "' must be a string");
    return v.get<std::string>();
}

std::string str_or(const json& obj, const std::string& key, const std::string& dflt) {
    return obj.contains(key) ? str(obj, key) : dflt;
}

std::string iso_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Adjacency graph_from_spec(const json& g) {
    const std::string kind = str(g, "kind");
    if (kind == "file") {
        std::istringstream is(read_file(str(g, "path")));
        return read_adjacency(is);
    }
    const Vertex n = Vertex(uint_or(g, "n", 0));
    if (n == 0) spec_fail("graph needs 'n' > 0");
    const uint64_t seed = uint_or(g, "seed", 0);
    if (kind == "er") return erdos_renyi(n, num(g, "lambda"), seed);
    if (kind == "chung-lu") return chung_lu(n, num(g, "alpha"), num(g, "gamma"), seed);
    if (kind == "random-regular") return random_regular(n, uint32_t(uint_or(g, "d", 0)), seed);
    if (kind == "complete" || kind == "directed_star_out" || kind == "path")
        return named_graph(kind, n);
    spec_fail("unknown graph kind '" + kind + "'");
}

// pair weights for the requested scaling, as a rate matrix entry per
// directed edge: mean-degree keeps total rates O(1); unit uses qbar as-is
Csr pair_rates(const Adjacency& adj, const json& m, double qbar) {
    const std::string scaling = str_or(m, "scaling", "mean-degree");
    if (scaling == "mean-degree") {
        Csr r = normalize_rates(adj, {{1, qbar}}).pair_weights;
        for (double& v : r.val) v *= qbar;
        return r;
    }
    if (scaling == "unit") {
        std::vector<Triple> ts;
        for (const auto& [a, b] : adj.directed_pairs()) ts.push_back({a, b, qbar});
        return csr_from_triples(adj.n, adj.n, ts);
    }
    spec_fail("unknown scaling '" + scaling + "' (mean-degree | unit)");
}

std::vector<RateEntry> entries_from_spec(const json& arr) {
    if (!arr.is_array() || arr.empty()) spec_fail("'entries' must be a nonempty array");
    std::vector<RateEntry> out;
    for (const json& e : arr) {
        RateEntry entry;
        for (const json& v : need(e, "base")) entry.base.push_back(v.get<Vertex>());
        entry.target = Vertex(uint_or(e, "target", 0));
        entry.rate = num(e, "rate");
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace

Adjacency build_graph_from_spec(const std::string& graph_json) {
    return graph_from_spec(parse_spec(graph_json));
}

BuiltModel build_model_from_spec(const std::string& model_json) {
    const json m = parse_spec(model_json);
    const std::string kind = str(m, "kind");
    const double qbar = num_or(m, "qbar", 1.0);
    BuiltModel out;

    if (kind == "si" || kind == "sis") {
        const Csr r = pair_rates(graph_from_spec(need(m, "graph")), m, qbar);
        std::vector<double> recovery;
        if (kind == "sis") recovery.assign(r.rows, num_or(m, "recovery", 1.0));
        out.system = build_sis(r, recovery);
    } else if (kind == "simplicial-sis") {
        std::vector<RateEntry> entries;
        Vertex n = Vertex(uint_or(m, "n", 0));
        if (m.contains("entries")) {
            entries = entries_from_spec(m.at("entries"));
            if (n == 0) spec_fail("'n' required with explicit entries");
        } else {
            const Adjacency adj = graph_from_spec(need(m, "graph"));
            n = adj.n;
            std::map<uint32_t, double> q;
            for (const HyperEdge& h : adj.hyperedges) q[uint32_t(h.base.size())] = qbar;
            q[1] = qbar;
            const NormalizedWeights nw = normalize_rates(adj, q);
            for (std::size_t row = 0; row < nw.pair_weights.rows; ++row)
                for (std::size_t k = nw.pair_weights.off[row]; k < nw.pair_weights.off[row + 1];
                     ++k)
                    entries.push_back({{Vertex(row)},
                                       Vertex(nw.pair_weights.col[k]),
                                       qbar * nw.pair_weights.val[k]});
            for (const WeightedHyperEntry& h : nw.hyper)
                entries.push_back({h.base, h.target, qbar * h.weight});
        }
        std::vector<double> recovery;
        if (m.contains("recovery")) recovery.assign(n, num(m, "recovery"));
        out.system = build_simplicial_sis(n, entries, recovery);
    } else if (kind == "sais") {
        const Adjacency adj = graph_from_spec(need(m, "graph"));
        const Csr w1 = pair_rates(adj, m, 1.0);
        const Csr w2 = m.contains("graph2")
                           ? pair_rates(graph_from_spec(m.at("graph2")), m, 1.0)
                           : w1;
        out.system = build_sais(w1, w2, num(m, "beta_s"), num(m, "beta_a"), num(m, "kappa"),
                                std::vector<double>(adj.n, num_or(m, "gamma", 1.0)));
    } else if (kind == "triangle-flip") {
        const Vertex n = Vertex(uint_or(m, "n", 0));
        FlipModel fm = build_triangle_flip(n, {}, uint32_t(uint_or(m, "clique", 3)));
        out.system = std::move(fm.system);
        out.n_graph = fm.n_graph;
        out.edge_agent_base = 0;
        out.has_edge_agents = true;
    } else if (kind == "joint-si-flip") {
        JointModel jm = build_joint_si_flip(Vertex(uint_or(m, "n", 0)));
        out.n_graph = jm.n_graph;
        out.edge_agent_base = jm.edge_agent_base;
        out.has_edge_agents = true;
        out.system = std::move(jm.system);
    } else if (kind == "linf-counterexample") {
        const Vertex n = Vertex(uint_or(m, "n", 0));
        std::vector<RateEntry> entries;
        if (m.contains("entries")) {
            entries = entries_from_spec(m.at("entries"));
        } else {
            // default worst-case family: one influencer at full weight
            entries.push_back({{1}, 0, num_or(m, "rtilde", 1.0)});
        }
        CounterexampleModel cm = build_linf_counterexample(n, entries);
        out.system = std::move(cm.system);
        out.law = std::move(cm.law);
        out.has_law = true;
        out.rtilde_input = cm.rtilde_max;
    } else if (kind == "rules-file") {
        std::istringstream is(read_file(str(m, "path")));
        out.system = read_rule_system(is);
    } else {
        spec_fail("unknown model kind '" + kind + "'");
    }
    return out;
}

InitialLaw build_law_from_spec(const std::string& law_json, const RateSystem& sys) {
    const json l = parse_spec(law_json);
    const std::string kind = str(l, "kind");
    const Vertex n = sys.n_vertices();
    const StateSpace& sp = sys.states();

    if (kind == "file") {
        std::istringstream is(read_file(str(l, "path")));
        return read_law(is, sp);
    }
    if (kind == "iid") {
        const json& p = need(l, "probs");
        std::vector<double> probs(sp.size(), 0.0);
        if (p.is_array()) {
            if (p.size() != sp.size()) spec_fail("'probs' must list one value per state");
            for (std::size_t s = 0; s < sp.size(); ++s) probs[s] = p.at(s).get<double>();
        } else if (p.is_object()) {
            for (const auto& [name, v] : p.items()) probs[sp.index(name)] = v.get<double>();
        } else {
            spec_fail("'probs' must be an array or object");
        }
        return InitialLaw::iid(n, probs);
    }
    if (kind == "point") {
        InitialLaw law = InitialLaw::point(n, sp.size(), sp.index(str(l, "state")));
        if (l.contains("overrides")) {
            for (const auto& [vtx, st] : l.at("overrides").items()) {
                const uint64_t i = std::stoull(vtx);
                if (i >= n) spec_fail("override vertex out of range");
                std::vector<double> row(sp.size(), 0.0);
                row[sp.index(st.get<std::string>())] = 1.0;
                law.set_vertex(Vertex(i), row);
            }
        }
        return law;
    }
    spec_fail("unknown law kind '" + kind + "'");
}

namespace {

const std::set<std::string> kQuantities = {
    "marginals", "subpop_variance", "collision", "blowup_functional", "ghost",
    "nimfa",     "oracle",          "bounds",    "homdensity",         "l1_error",
    "linf_gap"};

struct RunContext {
    json spec;
    BuiltModel model;
    InitialLaw law{1, 1};
    std::vector<double> grid;
    uint64_t replicas = 0;
    uint64_t seed = 0;
    uint32_t threads = 1;
    std::string out_dir;
    std::vector<std::string> files;
    json truncation = json::object();
};

void emit(RunContext& ctx, const std::string& name, const std::string& content) {
    write_file(ctx.out_dir + "/" + name, content);
    ctx.files.push_back(name);
}

std::vector<Vertex> subset_from_spec(const RunContext& ctx) {
    if (!ctx.spec.contains("subset")) spec_fail("this quantity needs a 'subset'");
    const json& s = ctx.spec.at("subset");
    std::vector<Vertex> out;
    if (s.is_array()) {
        for (const json& v : s) out.push_back(v.get<Vertex>());
    } else if (s.is_object() && s.contains("first")) {
        const uint64_t k = s.at("first").get<uint64_t>();
        for (uint64_t i = 0; i < k; ++i) out.push_back(Vertex(i));
    } else {
        spec_fail("'subset' must be an index array or {\"first\": k}");
    }
    if (out.empty()) spec_fail("'subset' must be nonempty");
    return out;
}

StateIdx observable_state(const RunContext& ctx) {
    const StateSpace& sp = ctx.model.system.states();
    if (ctx.spec.contains("observable_state")) return sp.index(str(ctx.spec, "observable_state"));
    if (sp.contains("I")) return sp.index("I");
    spec_fail("set 'observable_state' for this quantity");
}

double l1_gap(const MarginalEstimate& est, const NimfaResult& nf, std::size_t g, Vertex n,
              std::size_t S) {
    double total = 0.0;
    for (Vertex i = 0; i < n; ++i) {
        double tv = 0.0;
        for (std::size_t s = 0; s < S; ++s)
            tv += std::abs(est.value(g, i, StateIdx(s)) - nf.value(g, i, StateIdx(s), S));
        total += 0.5 * tv; // per-vertex total variation
    }
    return total / double(n);
}

void run_quantity(RunContext& ctx, const std::string& q) {
    const RateSystem& sys = ctx.model.system;
    const StateSpace& sp = sys.states();
    const Vertex n = sys.n_vertices();
    const std::size_t S = sp.size();
    const Vertex root = Vertex(uint_or(ctx.spec, "root", 0));

    if (q == "marginals") {
        const MarginalEstimate est =
            estimate_marginals(sys, ctx.law, ctx.grid, ctx.replicas, ctx.seed, ctx.threads);
        std::ostringstream os;
        write_marginals_csv(os, est, sp);
        emit(ctx, "marginals.csv", os.str());
    } else if (q == "nimfa") {
        const NimfaResult res = integrate_nimfa(sys, ctx.law, ctx.grid);
        std::ostringstream os;
        write_nimfa_csv(os, res, sp, n);
        emit(ctx, "nimfa.csv", os.str());
    } else if (q == "oracle") {
        const OracleMarginals res = exact_marginals(sys, ctx.law, ctx.grid);
        std::ostringstream os;
        write_oracle_csv(os, res, sp, n);
        emit(ctx, "oracle.csv", os.str());
    } else if (q == "subpop_variance") {
        const std::vector<Vertex> m_set = subset_from_spec(ctx);
        const StateIdx s = observable_state(ctx);
        std::vector<TimeRow> rows;
        for (double t : ctx.grid) {
            const SubpopVarianceResult r = estimate_subpop_variance(
                sys, ctx.law, m_set, s, t, ctx.replicas, ctx.seed, ctx.threads);
            rows.push_back({t, r.report.variance, r.report.std_error, ctx.replicas, ctx.seed});
        }
        std::ostringstream os;
        write_time_csv(os, rows);
        emit(ctx, "subpop_variance.csv", os.str());
    } else if (q == "collision") {
        const Vertex partner = Vertex(uint_or(ctx.spec, "partner", root == 0 ? 1 : 0));
        std::vector<BackwardRow> rows;
        double worst = 0.0;
        for (double t : ctx.grid) {
            const BackwardEstimate e =
                estimate_collision_prob(sys, root, partner, t, ctx.replicas, ctx.seed, ctx.threads);
            worst = std::max(worst, e.truncation_fraction());
            rows.push_back({root, true, partner, t, e});
        }
        ctx.truncation["collision"] = worst;
        std::ostringstream os;
        write_backward_csv(os, rows);
        emit(ctx, "collision.csv", os.str());
    } else if (q == "blowup_functional") {
        const std::vector<Vertex> m_set = subset_from_spec(ctx);
        std::vector<BackwardRow> rows;
        double worst = 0.0;
        for (double t : ctx.grid) {
            const BackwardEstimate e =
                estimate_blowup_functional(sys, m_set, t, ctx.replicas, ctx.seed, ctx.threads);
            worst = std::max(worst, e.truncation_fraction());
            rows.push_back({root, false, 0, t, e});
        }
        ctx.truncation["blowup_functional"] = worst;
        std::ostringstream os;
        write_backward_csv(os, rows);
        emit(ctx, "blowup_functional.csv", os.str());
    } else if (q == "ghost") {
        std::vector<BackwardRow> rows;
        double worst = 0.0;
        for (double t : ctx.grid) {
            const BackwardEstimate e =
                estimate_ghost_prob(sys, root, t, ctx.replicas, ctx.seed, ctx.threads);
            worst = std::max(worst, e.truncation_fraction());
            rows.push_back({root, false, 0, t, e});
        }
        ctx.truncation["ghost"] = worst;
        std::ostringstream os;
        write_backward_csv(os, rows);
        emit(ctx, "ghost.csv", os.str());
    } else if (q == "bounds") {
        const std::size_t m_size =
            ctx.spec.contains("subset") ? subset_from_spec(ctx).size() : std::size_t(n);
        std::vector<BoundReport> all;
        for (double t : ctx.grid) {
            std::vector<BoundReport> r = bound_reports(sys, t, m_size, root);
            all.insert(all.end(), r.begin(), r.end());
        }
        emit(ctx, "bounds.json", bounds_json(all));
    } else if (q == "homdensity") {
        if (!ctx.model.has_edge_agents)
            spec_fail("homdensity needs a flip or joint model");
        const std::string mname = str_or(ctx.spec, "motif", "triangle");
        if (mname != "edge" && mname != "triangle") spec_fail("unknown motif '" + mname + "'");
        const Motif motif = mname == "edge" ? motif_edge() : motif_triangle();
        const std::size_t G = ctx.grid.size();
        std::vector<std::vector<double>> vals(G, std::vector<double>(ctx.replicas, 0.0));
        const ForwardEngine eng(sys);
        const double t_end = ctx.grid.back();
        const StateIdx on = sp.index("1"); // edge-agent "present" state
        parallel_replicas(ctx.replicas, ctx.threads, [&](uint32_t, uint64_t b, uint64_t e) {
            std::vector<StateIdx> cfg;
            for (uint64_t rep = b; rep < e; ++rep) {
                Rng rng = Rng::stream(ctx.seed, rep);
                std::size_t g = 0;
                auto record_until = [&](double t) {
                    while (g < G && ctx.grid[g] < t) {
                        const EdgeConfigView view(cfg, ctx.model.n_graph,
                                                  ctx.model.edge_agent_base, on);
                        vals[g][rep] = homomorphism_density(view, motif).value;
                        ++g;
                    }
                };
                eng.run(ctx.law, t_end, rng, cfg, [&](double t, uint32_t, bool applied) {
                    if (applied) record_until(t);
                });
                record_until(std::nextafter(t_end, INFINITY));
            }
        });
        std::ostringstream os;
        os << "t,mean,mean_std_error,variance,variance_std_error,replicas,seed_base\n";
        for (std::size_t g = 0; g < G; ++g) {
            const EstimatorReport m = mean_report(vals[g], ctx.seed);
            const VarianceReport v = variance_report(vals[g], ctx.seed);
            os << fmt17(ctx.grid[g]) << "," << fmt17(m.value) << "," << fmt17(m.std_error) << ","
               << fmt17(v.variance) << "," << fmt17(v.std_error) << "," << ctx.replicas << ","
               << ctx.seed << "\n";
        }
        emit(ctx, "homdensity.csv", os.str());
    } else if (q == "l1_error") {
        const MarginalEstimate est =
            estimate_marginals(sys, ctx.law, ctx.grid, ctx.replicas, ctx.seed, ctx.threads);
        const NimfaResult nf = integrate_nimfa(sys, ctx.law, ctx.grid);
        std::vector<TimeRow> rows;
        for (std::size_t g = 0; g < ctx.grid.size(); ++g) {
            double se2 = 0.0;
            for (Vertex i = 0; i < n; ++i) {
                double se_i = 0.0;
                for (std::size_t s = 0; s < S; ++s) se_i += 0.5 * est.std_error(g, i, StateIdx(s));
                se2 += se_i * se_i;
            }
            rows.push_back({ctx.grid[g], l1_gap(est, nf, g, n, S), std::sqrt(se2) / double(n),
                            ctx.replicas, ctx.seed});
        }
        std::ostringstream os;
        write_time_csv(os, rows);
        emit(ctx, "l1_error.csv", os.str());
    } else if (q == "linf_gap") {
        const OracleMarginals om = exact_marginals(sys, ctx.law, ctx.grid);
        const NimfaResult nf = integrate_nimfa(sys, ctx.law, ctx.grid);
        const double rtilde =
            ctx.model.rtilde_input > 0 ? ctx.model.rtilde_input : sys.influence_max();
        std::ostringstream os;
        os << "t,linf_gap,linf_lower_general\n";
        for (std::size_t g = 0; g < ctx.grid.size(); ++g) {
            double gap = 0.0;
            for (Vertex i = 0; i < n; ++i)
                for (std::size_t s = 0; s < S; ++s)
                    gap = std::max(gap, std::abs(om.value(g, i, StateIdx(s)) -
                                                 nf.value(g, i, StateIdx(s), S)));
            os << fmt17(ctx.grid[g]) << "," << fmt17(gap) << ","
               << fmt17(linf_lower_general(rtilde)) << "\n";
        }
        emit(ctx, "linf_gap.csv", os.str());
    } else {
        spec_fail("unknown quantity '" + q + "'");
    }
}

} // namespace

std::vector<std::string> run_experiment(const std::string& spec_json, const std::string& out_dir) {
    const auto t_start = std::chrono::steady_clock::now();
    RunContext ctx;
    ctx.spec = parse_spec(spec_json);
    ctx.out_dir = out_dir;

    const json& qs = need(ctx.spec, "quantities");
    if (!qs.is_array() || qs.empty()) spec_fail("'quantities' must be a nonempty array");
    std::vector<std::string> quantities;
    for (const json& q : qs) {
        if (!q.is_string() || !kQuantities.count(q.get<std::string>()))
            spec_fail("unknown quantity " + q.dump());
        quantities.push_back(q.get<std::string>());
    }

    const json& grid = need(ctx.spec, "t_grid");
    if (!grid.is_array() || grid.empty()) spec_fail("'t_grid' must be a nonempty array");
    for (const json& t : grid) ctx.grid.push_back(t.get<double>());
    for (std::size_t g = 0; g < ctx.grid.size(); ++g)
        if (ctx.grid[g] < 0 || (g > 0 && ctx.grid[g] < ctx.grid[g - 1]))
            spec_fail("'t_grid' must be non-decreasing and nonnegative");

    ctx.replicas = uint_or(ctx.spec, "replicas", 1000);
    ctx.seed = uint_or(ctx.spec, "seed", 0);
    ctx.threads = uint32_t(uint_or(ctx.spec, "threads", 1));

    ctx.model = build_model_from_spec(need(ctx.spec, "model").dump());
    if (ctx.spec.contains("law"))
        ctx.law = build_law_from_spec(ctx.spec.at("law").dump(), ctx.model.system);
    else if (ctx.model.has_law)
        ctx.law = ctx.model.law;
    else
        spec_fail("missing 'law' (this model has no built-in one)");

    std::filesystem::create_directories(out_dir);
    for (const std::string& q : quantities) {
        try {
            run_quantity(ctx, q);
        } catch (const Error& e) {
            throw Error(e.code(), q + ": " + e.raw()); // name the offender
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json manifest;
    manifest["version"] = kVersion;
    manifest["created_utc"] = iso_utc_now();
    manifest["wall_seconds"] = wall;
    manifest["seed"] = ctx.seed;
    manifest["replicas"] = ctx.replicas;
    manifest["threads"] = ctx.threads;
    manifest["truncation_fractions"] = ctx.truncation;
    manifest["outputs"] = ctx.files;
    manifest["spec"] = ctx.spec;
    write_file(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    ctx.files.push_back("manifest.json");
    return ctx.files;
}

std::vector<std::string> run_sweep(const std::string& template_json, const std::string& param,
                                   const std::vector<double>& values, const std::string& out_dir) {
    const json tmpl = parse_spec(template_json);
    if (values.empty()) spec_fail("sweep needs at least one value");

    // split the dotted path and check it against the template up front
    std::vector<std::string> path;
    std::string seg;
    for (char c : param + ".") {
        if (c == '.') {
            if (seg.empty()) spec_fail("bad parameter path '" + param + "'");
            path.push_back(seg);
            seg.clear();
        } else {
            seg += c;
        }
    }
    {
        const json* cur = &tmpl;
        for (const std::string& p : path) {
            if (!cur->is_object() || !cur->contains(p))
                spec_fail("parameter path '" + param + "' not found in the template");
            cur = &cur->at(p);
        }
    }

    const uint64_t seed = uint_or(tmpl, "seed", 0);
    std::filesystem::create_directories(out_dir);
    std::vector<std::vector<std::string>> run_files;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        json spec = tmpl;
        json* cur = &spec;
        for (std::size_t p = 0; p + 1 < path.size(); ++p) cur = &(*cur)[path[p]];
        json& slot = (*cur)[path.back()];
        if (slot.is_number_integer())
            slot = int64_t(std::llround(values[idx]));
        else
            slot = values[idx];
        spec["seed"] = Rng::stream(seed, idx).next_u64();
        run_files.push_back(
            run_experiment(spec.dump(), out_dir + "/run_" + std::to_string(idx)));
    }

    // long-format aggregation: prepend the parameter value to every CSV row
    std::vector<std::string> outputs;
    for (const std::string& name : run_files[0]) {
        if (name.size() < 4 || name.substr(name.size() - 4) != ".csv") continue;
        std::ostringstream agg;
        for (std::size_t idx = 0; idx < values.size(); ++idx) {
            std::istringstream is(read_file(out_dir + "/run_" + std::to_string(idx) + "/" + name));
            std::string line;
            bool header = true;
            while (std::getline(is, line)) {
                if (line.empty()) continue;
                if (header) {
                    if (idx == 0) agg << "param," << line << "\n";
                    header = false;
                } else {
                    agg << fmt17(values[idx]) << "," << line << "\n";
                }
            }
        }
        const std::string out_name = "sweep_" + name;
        write_file(out_dir + "/" + out_name, agg.str());
        outputs.push_back(out_name);
    }

    json manifest;
    manifest["version"] = kVersion;
    manifest["created_utc"] = iso_utc_now();
    manifest["param"] = param;
    manifest["values"] = values;
    manifest["outputs"] = outputs;
    manifest["template"] = tmpl;
    write_file(out_dir + "/sweep_manifest.json", manifest.dump(2) + "\n");
    outputs.push_back("sweep_manifest.json");
    return outputs;
}

std::string preset_spec(const std::string& name) {
    if (name == "linf-counterexample") {
        return R"({
  "model": {"kind": "linf-counterexample", "n": 3, "rtilde": 1.0},
  "quantities": ["linf_gap", "bounds"],
  "t_grid": [1.0],
  "replicas": 2,
  "seed": 1,
  "threads": 1
})";
    }
    if (name == "regular-scaling") {
        return R"({
  "sweep": {"param": "model.graph.d", "values": [4, 8, 16, 32]},
  "model": {"kind": "si", "qbar": 1.0, "scaling": "mean-degree",
            "graph": {"kind": "random-regular", "n": 500, "d": 4, "seed": 5}},
  "law": {"kind": "iid", "probs": [0.5, 0.5]},
  "quantities": ["l1_error"],
  "t_grid": [1.0],
  "replicas": 4000,
  "seed": 11,
  "threads": 1
})";
    }
    fail(Errc::SpecInvalid, "unknown preset '" + name + "'");
}

std::vector<std::string> run_preset(const std::string& name, const std::string& out_dir) {
    json spec = parse_spec(preset_spec(name));
    if (!spec.contains("sweep")) return run_experiment(spec.dump(), out_dir);

    const json sw = spec.at("sweep");
    spec.erase("sweep");
    std::vector<double> values;
    for (const json& v : need(sw, "values")) values.push_back(v.get<double>());
    std::vector<std::string> files = run_sweep(spec.dump(), str(sw, "param"), values, out_dir);

    // post-process: fitted log-log slope of the swept scalar quantity
    if (std::find(files.begin(), files.end(), "sweep_l1_error.csv") != files.end()) {
        std::istringstream is(read_file(out_dir + "/sweep_l1_error.csv"));
        std::string line;
        std::getline(is, line); // header
        std::vector<double> xs, ys;
        json points = json::array();
        while (std::getline(is, line)) {
            std::istringstream row(line);
            std::string tok;
            std::vector<std::string> f;
            while (std::getline(row, tok, ',')) f.push_back(tok);
            if (f.size() < 3) continue;
            const double p = std::stod(f[0]), v = std::stod(f[2]);
            if (v > 0) {
                xs.push_back(std::log(p));
                ys.push_back(std::log(v));
                points.push_back({{"param", p}, {"l1_error", v}});
            }
        }
        if (xs.size() >= 2) {
            double mx = 0, my = 0;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                mx += xs[k];
                my += ys[k];
            }
            mx /= double(xs.size());
            my /= double(xs.size());
            double sxx = 0, sxy = 0;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                sxx += (xs[k] - mx) * (xs[k] - mx);
                sxy += (xs[k] - mx) * (ys[k] - my);
            }
            json slope;
            slope["slope"] = sxy / sxx;
            slope["points"] = points;
            write_file(out_dir + "/slope.json", slope.dump(2) + "\n");
            files.push_back("slope.json");
        }
    }
    return files;
}

} // namespace hyperips
