#ifndef HYPERIPS_MODELS_HPP
#define HYPERIPS_MODELS_HPP

#include <functional>
#include <string>
#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/generators.hpp"
#include "hyperips/initial_law.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

using WarnSink = std::function<void(const std::string&)>; // default: stderr

// --- epidemic models on pair / hypergraph structures ------------------------

// States {S, I}.  R[j][i] is the infection rate j -> i applied to label
// (I, S) -> (I, I); recovery[i] adds the spontaneous I -> S rule (empty
// vector = no recovery, i.e. plain SI).
RateSystem build_sis(const Csr& R, const std::vector<double>& recovery = {});

// Entry carrying a total tuple -> target rate for one sorted base.
struct RateEntry {
    std::vector<Vertex> base;
    Vertex target;
    double rate;
};

// States {S, I}; every base of infected vertices infects a susceptible
// target at its entry rate; arbitrary mixed orders.
RateSystem build_simplicial_sis(Vertex n, const std::vector<RateEntry>& entries,
                                const std::vector<double>& recovery = {});

// States {S, A, I}: infected vertices infect susceptible (beta_s * w1) and
// alert (beta_a * w1) neighbours, and alert susceptible neighbours
// (kappa * w2); gamma[i] is the recovery rate.  Warns when beta_a >= beta_s
// (alertness should reduce susceptibility).
RateSystem build_sais(const Csr& w1, const Csr& w2, double beta_s, double beta_a, double kappa,
                      const std::vector<double>& gamma, const WarnSink& warn = {});

// --- graph-valued dynamics ---------------------------------------------------

// One transition label of a clique-update kernel: base states are assigned
// to the clique's other edges in sorted-agent order.
struct FlipLabel {
    std::vector<StateIdx> base_states; // size C(clique,2)-1, over states {0,1}
    StateIdx from, to;
    double q; // total rate of this label per clique
};

// Agents are the C(n,2) unordered pairs of [n]; states {0 = absent,
// 1 = present}.  For every clique of `clique` vertices and every edge slot in
// it, each label fires at rate q / C(n-2, clique-2).  The default kernel is
// triangle removal: (1,1,1) -> (1,1,0) with q = 1 on clique = 3.
struct FlipModel {
    RateSystem system;
    Vertex n_graph = 0;     // graph vertices (agents = n_graph choose 2)
    uint32_t clique = 3;
};

FlipModel build_triangle_flip(Vertex n_graph, const std::vector<FlipLabel>& labels = {},
                              uint32_t clique = 3, std::size_t rule_cap = 20'000'000);

// pair (i,j), i<j  ->  agent id (row-major upper triangle)
Vertex edge_agent(Vertex n, Vertex i, Vertex j);
std::pair<Vertex, Vertex> agent_pair(Vertex n, Vertex a);

// Joint vertex+edge dynamics: agents = n vertices (states {S,I}) followed by
// C(n,2) edge agents (states {1,0}).  An infected vertex j infects i through
// the present edge {j,i} at rate 1/(n-1); triangles of present edges flip an
// edge off at rate 1/(n-2).
struct JointModel {
    RateSystem system;
    Vertex n_graph = 0;
    Vertex edge_agent_base = 0; // first edge agent id (= n_graph)
};

JointModel build_joint_si_flip(Vertex n_graph, std::size_t rule_cap = 20'000'000);

// --- worst-case instance -----------------------------------------------------

// Three-state system {*, S, I} built from a family of total rates: every
// base needs one member in * and the rest in I to flip a susceptible target.
// With the law {i: S, j: fair coin between * and I, rest: I} the exact and
// mean-field marginals are known in closed form and their gap at t = 1 is
// exactly  (1/2) (1 - exp(-influence_max/2))^2.
struct CounterexampleModel {
    RateSystem system;
    InitialLaw law;
    Vertex i = 0, j = 0;    // target and special vertex (the argmax influence pair)
    double rtilde_max = 0;  // influence_max of the *input* rate family
    StateIdx star, s, inf;  // state indices of *, S, I
};

CounterexampleModel build_linf_counterexample(Vertex n, const std::vector<RateEntry>& entries);

// all (unordered) triangles of a pair graph, emitted as the 3 directed
// hyperedges (pair of edges -> opposite vertex ... base vertices -> target)
std::vector<HyperEdge> triangle_hyperedges(const Adjacency& g);

} // namespace hyperips

#endif
