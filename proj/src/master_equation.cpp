#include "hyperips/master_equation.hpp"

#include <cmath>

#include "hyperips/ode.hpp"

namespace hyperips {

std::size_t MasterEquation::encode(const StateIdx* cfg) const {
    std::size_t idx = 0, mul = 1;
    for (Vertex v = 0; v < n_vertices; ++v) {
        idx += mul * cfg[v];
        mul *= n_states;
    }
    return idx;
}

void MasterEquation::decode(std::size_t idx, StateIdx* cfg) const {
    for (Vertex v = 0; v < n_vertices; ++v) {
        cfg[v] = StateIdx(idx % n_states);
        idx /= n_states;
    }
}

MasterEquation build_generator(const RateSystem& sys, std::size_t config_cap) {
    MasterEquation me;
    me.n_states = sys.states().size();
    me.n_vertices = sys.n_vertices();

    double cfgs = std::pow(double(me.n_states), double(me.n_vertices));
    if (cfgs > double(config_cap))
        fail(Errc::StateSpaceTooLarge,
             "configuration space has ~" + std::to_string(cfgs) + " states (cap " +
                 std::to_string(config_cap) + ")");
    std::size_t n_configs = 1;
    for (Vertex v = 0; v < me.n_vertices; ++v) n_configs *= me.n_states;
    me.n_configs = n_configs;

    // powers of |S| for the target-digit update
    std::vector<std::size_t> pw(me.n_vertices, 1);
    for (Vertex v = 1; v < me.n_vertices; ++v) pw[v] = pw[v - 1] * me.n_states;

    std::vector<Triple> trips;
    std::vector<StateIdx> cfg(me.n_vertices);
    for (std::size_t c = 0; c < n_configs; ++c) {
        me.decode(c, cfg.data());
        double out = 0.0;
        for (std::size_t r = 0; r < sys.n_rules(); ++r) {
            if (cfg[sys.target(r)] != sys.from_state(r)) continue;
            const uint32_t m = sys.order(r);
            const Vertex* b = sys.base(r);
            const StateIdx* bs = sys.base_states(r);
            bool match = true;
            for (uint32_t l = 0; l < m && match; ++l) match = cfg[b[l]] == bs[l];
            if (!match) continue;
            const std::size_t tgt = sys.target(r);
            const std::size_t c2 = c - pw[tgt] * cfg[tgt] + pw[tgt] * sys.to_state(r);
            trips.push_back({uint32_t(c), uint32_t(c2), sys.rate(r)});
            out += sys.rate(r);
        }
        if (out > 0) trips.push_back({uint32_t(c), uint32_t(c), -out});
    }
    me.q = csr_from_triples(n_configs, n_configs, std::move(trips));
    return me;
}

std::vector<double> initial_distribution(const MasterEquation& me, const InitialLaw& law) {
    if (law.n_vertices() != me.n_vertices || law.n_states() != me.n_states)
        fail(Errc::ParameterDomain, "law does not match generator dimensions");
    std::vector<double> p(me.n_configs);
    std::vector<StateIdx> cfg(me.n_vertices);
    for (std::size_t c = 0; c < me.n_configs; ++c) {
        me.decode(c, cfg.data());
        double prob = 1.0;
        for (Vertex v = 0; v < me.n_vertices && prob > 0; ++v) prob *= law.prob(v, cfg[v]);
        p[c] = prob;
    }
    return p;
}

std::vector<std::vector<double>> evolve_distribution(const MasterEquation& me,
                                                     std::vector<double> p0,
                                                     const std::vector<double>& grid, double tol) {
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    auto rhs = [&me](double, const std::vector<double>& p, std::vector<double>& d) {
        d.assign(p.size(), 0.0);
        me.q.left_matvec(p.data(), d.data());
    };
    return ode_solve_grid(rhs, std::move(p0), 0.0, grid, opt);
}

OracleMarginals exact_marginals(const RateSystem& sys, const InitialLaw& law,
                                const std::vector<double>& grid, double tol,
                                std::size_t config_cap) {
    MasterEquation me = build_generator(sys, config_cap);
    auto ps = evolve_distribution(me, initial_distribution(me, law), grid, tol);

    OracleMarginals out;
    out.grid = grid;
    out.n_states = me.n_states;
    std::vector<StateIdx> cfg(me.n_vertices);
    for (const auto& p : ps) {
        std::vector<double> y(std::size_t(me.n_vertices) * me.n_states, 0.0);
        for (std::size_t c = 0; c < me.n_configs; ++c) {
            if (p[c] == 0.0) continue;
            me.decode(c, cfg.data());
            for (Vertex v = 0; v < me.n_vertices; ++v) y[std::size_t(v) * me.n_states + cfg[v]] += p[c];
        }
        out.y.push_back(std::move(y));
    }
    return out;
}

double exact_pair_prob(const RateSystem& sys, const InitialLaw& law, Vertex i, StateIdx s,
                       Vertex j, StateIdx s2, double t, double tol) {
    MasterEquation me = build_generator(sys);
    auto ps = evolve_distribution(me, initial_distribution(me, law), {t}, tol);
    std::vector<StateIdx> cfg(me.n_vertices);
    double acc = 0.0;
    for (std::size_t c = 0; c < me.n_configs; ++c) {
        if (ps[0][c] == 0.0) continue;
        me.decode(c, cfg.data());
        if (cfg[i] == s && cfg[j] == s2) acc += ps[0][c];
    }
    return acc;
}

double exact_covariance(const RateSystem& sys, const InitialLaw& law, Vertex i, StateIdx s,
                        Vertex j, StateIdx s2, double t, double tol) {
    MasterEquation me = build_generator(sys);
    auto ps = evolve_distribution(me, initial_distribution(me, law), {t}, tol);
    std::vector<StateIdx> cfg(me.n_vertices);
    double joint = 0.0, yi = 0.0, yj = 0.0;
    for (std::size_t c = 0; c < me.n_configs; ++c) {
        const double p = ps[0][c];
        if (p == 0.0) continue;
        me.decode(c, cfg.data());
        if (cfg[i] == s) yi += p;
        if (cfg[j] == s2) yj += p;
        if (cfg[i] == s && cfg[j] == s2) joint += p;
    }
    return joint - yi * yj;
}

} // namespace hyperips
