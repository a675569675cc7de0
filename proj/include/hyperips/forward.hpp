#ifndef HYPERIPS_FORWARD_HPP
#define HYPERIPS_FORWARD_HPP

#include <functional>
#include <vector>

#include "hyperips/estimator.hpp"
#include "hyperips/initial_law.hpp"
#include "hyperips/rate_system.hpp"
#include "hyperips/rng.hpp"

namespace hyperips {

// O(1) categorical sampling over fixed nonnegative weights.
class AliasTable {
  public:
    AliasTable() = default;
    explicit AliasTable(const std::vector<double>& weights);
    uint32_t sample(Rng& rng) const;
    bool empty() const { return prob_.empty(); }

  private:
    std::vector<double> prob_;
    std::vector<uint32_t> alias_;
};

struct ForwardEvent {
    double time;
    uint32_t rule;
    bool applied; // false = rejected by the state check (phantom)
};

struct Trajectory {
    std::vector<StateIdx> initial;
    std::vector<ForwardEvent> events; // applied events only unless keep_phantoms
    double t_end = 0.0;

    // replays the applied events up to and including time t
    std::vector<StateIdx> state_at(const RateSystem& sys, double t) const;
};

struct ForwardOptions {
    bool keep_phantoms = false;
    uint64_t event_cap = 2'000'000'000; // CapExceeded beyond this
};

// Exact event-driven engine.  All labels fire as one superposed Poisson
// stream at the constant total rate; each candidate event picks a rule
// proportionally to its rate and is applied only if the configuration
// matches the rule's label.  Build once per system, run many replicas.
class ForwardEngine {
  public:
    explicit ForwardEngine(const RateSystem& sys);

    const RateSystem& system() const { return *sys_; }
    double total_rate() const { return lambda_; }

    // visit(t, rule, applied) is called for every candidate event, *before*
    // the state change lands, so cfg still holds the pre-event configuration
    template <class Visitor>
    void run(const InitialLaw& law, double t_end, Rng& rng, std::vector<StateIdx>& cfg,
             Visitor&& visit, const ForwardOptions& opt = {}) const {
        cfg = law.sample(rng);
        if (lambda_ <= 0.0 || t_end <= 0.0) return;
        double t = 0.0;
        uint64_t n_events = 0;
        while (true) {
            t += rng.exponential(lambda_);
            if (t > t_end) break;
            if (++n_events > opt.event_cap) fail(Errc::CapExceeded, "forward event cap exceeded");
            const uint32_t r = alias_.sample(rng);
            const bool applied = rule_matches(r, cfg);
            visit(t, r, applied);
            if (applied) cfg[sys_->target(r)] = sys_->to_state(r);
        }
    }

    bool rule_matches(uint32_t r, const std::vector<StateIdx>& cfg) const {
        if (cfg[sys_->target(r)] != sys_->from_state(r)) return false;
        const uint32_t m = sys_->order(r);
        const Vertex* b = sys_->base(r);
        const StateIdx* bs = sys_->base_states(r);
        for (uint32_t l = 0; l < m; ++l)
            if (cfg[b[l]] != bs[l]) return false;
        return true;
    }

  private:
    const RateSystem* sys_;
    AliasTable alias_;
    double lambda_ = 0.0;
};

// One replica with a fully recorded event log; a pure function of
// (system, law, t_end, seed).
Trajectory simulate_forward(const RateSystem& sys, const InitialLaw& law, double t_end,
                            uint64_t seed, const ForwardOptions& opt = {});

// Per-(vertex, state, grid time) occupation frequencies over replicas.
struct MarginalEstimate {
    std::vector<double> grid;
    Vertex n = 0;
    std::size_t n_states = 0;
    uint64_t replicas = 0;
    uint64_t seed = 0;
    std::vector<uint64_t> counts; // [g][i][s], g-major

    double value(std::size_t g, Vertex i, StateIdx s) const {
        return double(counts[(g * n + i) * n_states + s]) / double(replicas);
    }
    double std_error(std::size_t g, Vertex i, StateIdx s) const {
        const double p = value(g, i, s);
        return std::sqrt(p * (1.0 - p) / double(replicas));
    }
};

MarginalEstimate estimate_marginals(const RateSystem& sys, const InitialLaw& law,
                                    const std::vector<double>& grid, uint64_t replicas,
                                    uint64_t seed, uint32_t threads = 1);

// Sample variance (with jackknife SE) of the subset's state-s fraction at
// time t.  The per-replica fractions are also returned for reuse.
struct SubpopVarianceResult {
    VarianceReport report;
    std::vector<double> fractions;
};

SubpopVarianceResult estimate_subpop_variance(const RateSystem& sys, const InitialLaw& law,
                                              const std::vector<Vertex>& subset, StateIdx s,
                                              double t, uint64_t replicas, uint64_t seed,
                                              uint32_t threads = 1);

// worker count actually used for a replica batch (0 = hardware threads);
// size per-worker accumulators with this before calling parallel_replicas
uint32_t resolved_threads(uint64_t replicas, uint32_t threads);

// static block partition of [0, replicas) over worker threads; results are
// merged in worker order so thread count never changes any output
void parallel_replicas(uint64_t replicas, uint32_t threads,
                       const std::function<void(uint32_t worker, uint64_t rep_begin,
                                                uint64_t rep_end)>& work);

} // namespace hyperips

#endif
