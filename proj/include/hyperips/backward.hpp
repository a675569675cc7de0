#ifndef HYPERIPS_BACKWARD_HPP
#define HYPERIPS_BACKWARD_HPP

#include <cstdint>
#include <vector>

#include "hyperips/estimator.hpp"
#include "hyperips/forward.hpp" // AliasTable, parallel_replicas
#include "hyperips/initial_law.hpp"
#include "hyperips/rate_system.hpp"
#include "hyperips/rng.hpp"

namespace hyperips {

struct BackwardOptions {
    std::size_t size_cap = 100'000; // information-set member cap
    std::size_t pop_cap = 100'000;  // branching population cap
    uint64_t event_cap = 2'000'000'000;
};

// --- information sets --------------------------------------------------------

struct InfoSetJump {
    double time;                // elapsed backward time
    std::vector<Vertex> added;  // newly joined members; empty = no-op jump
};

// One realization of the growing vertex set that carries all information
// needed to evaluate the root at the horizon.
struct InfoSetSample {
    Vertex root = 0;
    double horizon = 0.0;
    bool truncated = false;
    std::vector<InfoSetJump> jumps;
    std::vector<Vertex> members; // final set, sorted

    std::vector<Vertex> members_at(double tau) const; // sorted
    std::size_t size_at(double tau) const;
};

// Jump-chain sampler: while the set is H, every member k and every base
// with target k proposes "join the base" at the base's total label rate;
// jumps whose base is already inside consume time but change nothing.
// Build once per system, sample many replicas.
class InfoSetSampler {
  public:
    explicit InfoSetSampler(const RateSystem& sys);

    InfoSetSample sample(Vertex root, double t, Rng& rng, const BackwardOptions& opt = {}) const;

  private:
    const RateSystem* sys_;
    std::vector<double> weight_;                // per-vertex total interacting label rate
    std::vector<AliasTable> pick_;              // per-vertex label choice
    std::vector<std::vector<uint32_t>> rules_;  // per-vertex interacting rule ids
};

InfoSetSample sample_information_set(const RateSystem& sys, Vertex root, double t, uint64_t seed,
                                     const BackwardOptions& opt = {});

// estimator plus the number of replicas that hit a cap (those are folded
// into the estimate conservatively, never dropped)
struct BackwardEstimate {
    EstimatorReport report;
    uint64_t truncated = 0;
    double truncation_fraction() const { return double(truncated) / double(report.replicas); }
};

// Frequency of H_i(t) and H_j(t) (sampled independently) meeting; i == j
// reports 1 by the diagonal convention.  Truncated sets count as collisions.
BackwardEstimate estimate_collision_prob(const RateSystem& sys, Vertex i, Vertex j, double t,
                                         uint64_t replicas, uint64_t seed, uint32_t threads = 1,
                                         const BackwardOptions& opt = {});

// Mean of |H_root(2t) ∩ M| / |M| over roots drawn uniformly from M.
// Requires a pair system with a symmetric rate matrix.
BackwardEstimate estimate_blowup_functional(const RateSystem& sys, const std::vector<Vertex>& m_set,
                                            double t, uint64_t replicas, uint64_t seed,
                                            uint32_t threads = 1,
                                            const BackwardOptions& opt = {});

// --- branching structure ------------------------------------------------------

struct BranchParticle {
    Vertex vertex;
    uint32_t copy;       // 1 = first particle to reach this vertex
    StateIdx init_state; // drawn at birth (0 when sampled without a law)
};

struct BranchEvent {
    double tau;           // elapsed backward time
    uint32_t particle;
    uint32_t rule;
    uint32_t first_child; // children are consecutive particle ids in base order
    bool relevant;        // drives the plain-process value at the root
};

// One realization of the backward branching structure plus the coupled
// evaluation: sigma is the original process at the root, sigma_tilde the
// value of the auxiliary structure where every particle evolves on its own.
// Both are meaningless when truncated; they agree whenever ghost is false.
struct BranchingSample {
    Vertex root = 0;
    double horizon = 0.0;
    bool truncated = false;
    bool ghost = false; // some vertex holds two or more particles
    std::vector<BranchParticle> particles; // [0] is the root particle
    std::vector<BranchEvent> events;       // backward-time order
    StateIdx sigma = 0;
    StateIdx sigma_tilde = 0;
};

class BranchingSampler {
  public:
    explicit BranchingSampler(const RateSystem& sys);

    // structure only: no initial-state draws, no coupled evaluation
    BranchingSample sample_structure(Vertex root, double t0, Rng& rng,
                                     const BackwardOptions& opt = {}) const;
    // full coupled sample
    BranchingSample sample(Vertex root, double t0, const InitialLaw& law, Rng& rng,
                           const BackwardOptions& opt = {}) const;

  private:
    BranchingSample run(Vertex root, double t0, const InitialLaw* law, Rng& rng,
                        const BackwardOptions& opt) const;
    void evaluate(BranchingSample& s) const;

    const RateSystem* sys_;
    std::vector<double> weight_;               // per-vertex total label rate, all orders
    std::vector<AliasTable> pick_;
    std::vector<std::vector<uint32_t>> rules_;
};

BranchingSample sample_branching_structure(const RateSystem& sys, Vertex root, double t0,
                                           uint64_t seed, const BackwardOptions& opt = {});

// Frequency of a ghost (truncation counts as one, keeping the estimate
// conservative).  Initial states never matter for this event.
BackwardEstimate estimate_ghost_prob(const RateSystem& sys, Vertex root, double t,
                                     uint64_t replicas, uint64_t seed, uint32_t threads = 1,
                                     const BackwardOptions& opt = {});

// Replica tallies of the coupled pair at one (root, t).
struct BranchingMarginals {
    uint64_t replicas = 0;
    uint64_t evaluated = 0; // non-truncated samples, the denominator below
    uint64_t truncated = 0;
    uint64_t ghosts = 0;
    uint64_t no_ghost = 0;
    uint64_t mismatch_no_ghost = 0; // sigma != sigma_tilde without a ghost (must stay 0)
    uint64_t seed = 0;
    std::vector<uint64_t> tilde_counts; // per state
    std::vector<uint64_t> plain_counts;

    double tilde_freq(StateIdx s) const { return double(tilde_counts[s]) / double(evaluated); }
    double plain_freq(StateIdx s) const { return double(plain_counts[s]) / double(evaluated); }
    double freq_std_error(double p) const;
};

BranchingMarginals estimate_branching_marginals(const RateSystem& sys, const InitialLaw& law,
                                                Vertex root, double t, uint64_t replicas,
                                                uint64_t seed, uint32_t threads = 1,
                                                const BackwardOptions& opt = {});

} // namespace hyperips

#endif
