#ifndef HYPERIPS_GENERATORS_HPP
#define HYPERIPS_GENERATORS_HPP

#include <map>
#include <string>
#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

// A base tuple (sorted, strictly increasing) acting on a target vertex.
struct HyperEdge {
    std::vector<Vertex> base;
    Vertex target;
};

// Unweighted interaction structure.  Pair edges are stored once: for
// undirected graphs as (min,max), for directed graphs as (source,target).
// Hyperedges (order >= 2) are always directional base -> target.
struct Adjacency {
    Vertex n = 0;
    bool directed = false;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<HyperEdge> hyperedges;

    // every (j, i) pair with influence j -> i; undirected edges expand to both
    std::vector<std::pair<Vertex, Vertex>> directed_pairs() const;
    std::size_t degree_check() const { return edges.size(); }
};

// G(n, lambda/n); undirected, each pair kept independently.  The pair keyed
// RNG makes the result a pure function of (n, lambda, seed).
Adjacency erdos_renyi(Vertex n, double lambda, uint64_t seed);

// Rank-based inhomogeneous graph: vertices carry 1-based ranks and the pair
// (i, j) appears with probability  n^alpha (n/i)^gamma (n/j)^gamma / sum_k (n/k)^gamma,
// clamped to 1.  Requires 0 < gamma < 1/3 and gamma < alpha < 1 - 2*gamma.
Adjacency chung_lu(Vertex n, double alpha, double gamma, uint64_t seed);

// complete | directed_star_out | path
Adjacency named_graph(const std::string& name, Vertex n);

// Random simple d-regular graph via the pairing model with degree-preserving
// 2-swap repair of self loops and multi-edges; reshuffles when the repair
// stalls, up to max_restarts (InfeasibleRegular is thrown immediately when
// n*d is odd or d >= n).
Adjacency random_regular(Vertex n, uint32_t d, uint64_t seed, uint32_t max_restarts = 1000);

// One order's worth of normalized interaction weights.
struct WeightedHyperEntry {
    std::vector<Vertex> base;
    Vertex target;
    double weight;
};

struct NormalizedWeights {
    Vertex n = 0;
    Csr pair_weights;                      // order-1 weights a_{ji}/dbar^(1), rows = influencer
    std::vector<WeightedHyperEntry> hyper; // order >= 2 entries
    std::map<uint32_t, double> dbar;       // mean in-degree per order
    std::map<uint32_t, double> k_min;      // smallest K with d_i <= (K/qbar) dbar
};

// Divides each adjacency entry by the mean in-degree of its order so that
// total rates stay O(1) as the graph grows; qbar_per_order supplies the
// per-order total label rate used for the regularity report.
NormalizedWeights normalize_rates(const Adjacency& adj,
                                  const std::map<uint32_t, double>& qbar_per_order);

} // namespace hyperips

#endif
