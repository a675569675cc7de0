#include "hyperips/forward.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace hyperips {

AliasTable::AliasTable(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    if (n == 0) return;
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0 || std::isnan(w)) fail(Errc::ParameterDomain, "alias weights must be >= 0");
        sum += w;
    }
    if (sum <= 0) fail(Errc::ParameterDomain, "alias weights must not all be zero");
    prob_.resize(n);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * double(n) / sum;
    std::vector<uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(uint32_t(i));
    while (!small.empty() && !large.empty()) {
        const uint32_t s = small.back(), l = large.back();
        small.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (uint32_t l : large) prob_[l] = 1.0;
    for (uint32_t s : small) prob_[s] = 1.0; // numerical leftovers
}

uint32_t AliasTable::sample(Rng& rng) const {
    const uint64_t r = rng.next_u64();
    const uint32_t i = uint32_t(r % prob_.size());
    const double u = double(r >> 11) * 0x1.0p-53;
    return u < prob_[i] ? i : alias_[i];
}

std::vector<StateIdx> Trajectory::state_at(const RateSystem& sys, double t) const {
    std::vector<StateIdx> cfg = initial;
    for (const auto& e : events) {
        if (e.time > t) break;
        if (e.applied) cfg[sys.target(e.rule)] = sys.to_state(e.rule);
    }
    return cfg;
}

ForwardEngine::ForwardEngine(const RateSystem& sys) : sys_(&sys), lambda_(sys.total_rate()) {
    if (sys.n_rules() > 0) {
        std::vector<double> w(sys.n_rules());
        for (std::size_t r = 0; r < w.size(); ++r) w[r] = sys.rate(r);
        alias_ = AliasTable(w);
    }
}

Trajectory simulate_forward(const RateSystem& sys, const InitialLaw& law, double t_end,
                            uint64_t seed, const ForwardOptions& opt) {
    law.validate_against(sys);
    if (t_end < 0) fail(Errc::ParameterDomain, "t_end must be >= 0");
    ForwardEngine eng(sys);
    Rng rng(seed);
    Trajectory tr;
    tr.t_end = t_end;
    std::vector<StateIdx> cfg;
    eng.run(law, t_end, rng, cfg, [&](double t, uint32_t r, bool applied) {
        if (applied || opt.keep_phantoms) tr.events.push_back({t, r, applied});
    }, opt);
    // the initial draw happens before any event, so replay it for the record
    Rng replay(seed);
    tr.initial = law.sample(replay);
    return tr;
}

uint32_t resolved_threads(uint64_t replicas, uint32_t threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return uint32_t(std::min<uint64_t>(threads, replicas ? replicas : 1));
}

void parallel_replicas(uint64_t replicas, uint32_t threads,
                       const std::function<void(uint32_t, uint64_t, uint64_t)>& work) {
    threads = resolved_threads(replicas, threads);
    if (threads <= 1) {
        work(0, 0, replicas);
        return;
    }
    const uint64_t block = (replicas + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (uint32_t w = 0; w < threads; ++w) {
        const uint64_t b = w * block, e = std::min(replicas, b + block);
        if (b >= e) break;
        pool.emplace_back([&work, w, b, e] { work(w, b, e); });
    }
    for (auto& th : pool) th.join();
}

MarginalEstimate estimate_marginals(const RateSystem& sys, const InitialLaw& law,
                                    const std::vector<double>& grid, uint64_t replicas,
                                    uint64_t seed, uint32_t threads) {
    law.validate_against(sys);
    if (grid.empty()) fail(Errc::ParameterDomain, "empty time grid");
    for (std::size_t g = 1; g < grid.size(); ++g)
        if (grid[g] < grid[g - 1]) fail(Errc::ParameterDomain, "grid must be non-decreasing");
    if (replicas < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");

    const std::size_t S = sys.states().size();
    const std::size_t n = sys.n_vertices();
    const std::size_t G = grid.size();
    const double t_end = grid.back();
    ForwardEngine eng(sys);

    threads = resolved_threads(replicas, threads);
    std::vector<std::vector<uint64_t>> part(threads, std::vector<uint64_t>(G * n * S, 0));

    parallel_replicas(replicas, threads, [&](uint32_t w, uint64_t b, uint64_t e) {
        auto& counts = part[w];
        std::vector<StateIdx> cfg;
        for (uint64_t rep = b; rep < e; ++rep) {
            Rng rng = Rng::stream(seed, rep);
            std::size_t g = 0;
            auto record_until = [&](double t) {
                while (g < G && grid[g] < t) {
                    const std::size_t off = g * n * S;
                    for (std::size_t i = 0; i < n; ++i) ++counts[off + i * S + cfg[i]];
                    ++g;
                }
            };
            // cfg is drawn first inside run(); events stream in time order
            eng.run(law, t_end, rng, cfg, [&](double t, uint32_t r, bool applied) {
                if (applied) record_until(t);
                (void)r;
            });
            record_until(std::nextafter(t_end, INFINITY)); // flush grid points >= last event
        }
    });

    MarginalEstimate est;
    est.grid = grid;
    est.n = Vertex(n);
    est.n_states = S;
    est.replicas = replicas;
    est.seed = seed;
    est.counts.assign(G * n * S, 0);
    for (const auto& c : part)
        for (std::size_t k = 0; k < c.size(); ++k) est.counts[k] += c[k];
    return est;
}

SubpopVarianceResult estimate_subpop_variance(const RateSystem& sys, const InitialLaw& law,
                                              const std::vector<Vertex>& subset, StateIdx s,
                                              double t, uint64_t replicas, uint64_t seed,
                                              uint32_t threads) {
    law.validate_against(sys);
    if (subset.empty()) fail(Errc::EmptySubset, "subset must be nonempty");
    for (Vertex v : subset)
        if (v >= sys.n_vertices()) fail(Errc::ParameterDomain, "subset vertex out of range");
    if (s >= sys.states().size()) fail(Errc::StateNotInSpace, "state index out of range");

    ForwardEngine eng(sys);
    std::vector<double> fr(replicas, 0.0);
    parallel_replicas(replicas, threads, [&](uint32_t, uint64_t b, uint64_t e) {
        std::vector<StateIdx> cfg;
        for (uint64_t rep = b; rep < e; ++rep) {
            Rng rng = Rng::stream(seed, rep);
            eng.run(law, t, rng, cfg, [](double, uint32_t, bool) {});
            std::size_t hits = 0;
            for (Vertex v : subset) hits += cfg[v] == s;
            fr[rep] = double(hits) / double(subset.size());
        }
    });
    return {variance_report(fr, seed), std::move(fr)};
}

} // namespace hyperips
