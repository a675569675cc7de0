#ifndef HYPERIPS_MOTIF_HPP
#define HYPERIPS_MOTIF_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperips/models.hpp"
#include "hyperips/rng.hpp"

namespace hyperips {

// Small undirected pattern graph on k labelled vertices.
struct Motif {
    uint32_t k = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges; // each (a, b) with a < b < k
};

Motif motif_edge();     // K_2
Motif motif_triangle(); // K_3

// Adjacency view over a flip / joint configuration: graph vertex pair
// {i, j} is an edge iff the corresponding edge agent sits in `on_state`.
class EdgeConfigView {
  public:
    EdgeConfigView(const std::vector<StateIdx>& cfg, Vertex n_graph, Vertex agent_offset,
                   StateIdx on_state);
    // agents are the full configuration in a pure flip model ...
    EdgeConfigView(const std::vector<StateIdx>& cfg, const FlipModel& m)
        : EdgeConfigView(cfg, m.n_graph, 0, 1) {}
    // ... and the tail block after the vertex agents in the joint model
    EdgeConfigView(const std::vector<StateIdx>& cfg, const JointModel& m)
        : EdgeConfigView(cfg, m.n_graph, m.edge_agent_base,
                         StateIdx(m.system.states().index("1"))) {}

    Vertex n() const { return n_; }
    bool has_edge(Vertex i, Vertex j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return (*cfg_)[off_ + edge_agent(n_, i, j)] == on_;
    }
    std::size_t count_edges() const;

  private:
    const std::vector<StateIdx>* cfg_;
    Vertex n_;
    Vertex off_;
    StateIdx on_;
};

struct HomDensity {
    double value = 0.0;
    double std_error = 0.0; // 0 when exact
    bool exact = true;
    uint64_t maps = 0; // maps enumerated or sampled
};

// t(F, G) = (#maps [k] -> [n] sending every F-edge to a G-edge) / n^k.
// Exact (pruned) enumeration for k <= 3; uniform map sampling with a
// binomial standard error above that; MotifTooLarge past k_cap.
HomDensity homomorphism_density(const EdgeConfigView& g, const Motif& f, uint32_t k_cap = 10,
                                uint64_t sample_maps = 200'000, uint64_t seed = 0);

} // namespace hyperips

#endif
