#include "hyperips/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hyperips/rng.hpp"

namespace hyperips {

std::vector<std::pair<Vertex, Vertex>> Adjacency::directed_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges.size() * (directed ? 1 : 2));
    for (auto [a, b] : edges) {
        out.emplace_back(a, b);
        if (!directed) out.emplace_back(b, a);
    }
    return out;
}

Adjacency erdos_renyi(Vertex n, double lambda, uint64_t seed) {
    if (n < 2) fail(Errc::ParameterDomain, "erdos_renyi needs n >= 2");
    if (lambda < 0) fail(Errc::ParameterDomain, "erdos_renyi needs lambda >= 0");
    const double p = std::min(1.0, lambda / double(n));
    Adjacency g;
    g.n = n;
    g.directed = false;
    uint64_t pair_idx = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++pair_idx)
            if (Rng::stream(seed, pair_idx).next_double() < p) g.edges.emplace_back(i, j);
    return g;
}

Adjacency chung_lu(Vertex n, double alpha, double gamma, uint64_t seed) {
    if (n < 2) fail(Errc::ParameterDomain, "chung_lu needs n >= 2");
    if (!(gamma > 0.0 && gamma < 1.0 / 3.0))
        fail(Errc::ParameterDomain, "chung_lu needs 0 < gamma < 1/3");
    if (!(alpha > gamma && alpha < 1.0 - 2.0 * gamma))
        fail(Errc::ParameterDomain, "chung_lu needs gamma < alpha < 1 - 2*gamma");
    // ranks are 1-based in the connection formula
    double norm = 0.0;
    for (Vertex k = 1; k <= n; ++k) norm += std::pow(double(n) / double(k), gamma);
    const double pref = std::pow(double(n), alpha) / norm;
    Adjacency g;
    g.n = n;
    g.directed = false;
    uint64_t pair_idx = 0;
    for (Vertex i = 1; i <= n; ++i) {
        const double wi = std::pow(double(n) / double(i), gamma);
        for (Vertex j = i + 1; j <= n; ++j, ++pair_idx) {
            const double p = std::min(1.0, pref * wi * std::pow(double(n) / double(j), gamma));
            if (Rng::stream(seed, pair_idx).next_double() < p) g.edges.emplace_back(i - 1, j - 1);
        }
    }
    return g;
}

Adjacency named_graph(const std::string& name, Vertex n) {
    if (n < 2) fail(Errc::ParameterDomain, "named_graph needs n >= 2");
    Adjacency g;
    g.n = n;
    if (name == "complete") {
        g.directed = false;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    } else if (name == "directed_star_out") {
        // center 0 influences every leaf; nothing points back
        g.directed = true;
        for (Vertex j = 1; j < n; ++j) g.edges.emplace_back(0, j);
    } else if (name == "path") {
        g.directed = false;
        for (Vertex i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    } else {
        fail(Errc::ParameterDomain, "unknown named graph '" + name + "'");
    }
    return g;
}

Adjacency random_regular(Vertex n, uint32_t d, uint64_t seed, uint32_t max_restarts) {
    if (n < 2 || d == 0) fail(Errc::ParameterDomain, "random_regular needs n >= 2, d >= 1");
    if ((uint64_t(n) * d) % 2 != 0)
        fail(Errc::InfeasibleRegular, "n*d must be even");
    if (d >= n) fail(Errc::InfeasibleRegular, "d must be < n");

    const auto key = [](Vertex a, Vertex b) {
        return std::pair<Vertex, Vertex>(std::min(a, b), std::max(a, b));
    };
    const std::size_t stubs = std::size_t(n) * d;
    const std::size_t m = stubs / 2;
    for (uint32_t attempt = 0; attempt < max_restarts; ++attempt) {
        Rng rng = Rng::stream(seed, attempt);
        std::vector<Vertex> perm(stubs);
        for (std::size_t s = 0; s < stubs; ++s) perm[s] = Vertex(s / d);
        // Fisher-Yates on the stub multiset, then pair consecutive stubs
        for (std::size_t s = stubs - 1; s > 0; --s)
            std::swap(perm[s], perm[rng.uniform_int(s + 1)]);
        std::vector<std::pair<Vertex, Vertex>> e(m);
        std::set<std::pair<Vertex, Vertex>> present;
        std::vector<char> good(m, 0);
        std::vector<std::size_t> bad;
        for (std::size_t k = 0; k < m; ++k) {
            e[k] = {perm[2 * k], perm[2 * k + 1]};
            if (e[k].first != e[k].second && present.insert(key(e[k].first, e[k].second)).second)
                good[k] = 1;
            else
                bad.push_back(k);
        }

        // repair self-loops and duplicates by random 2-swaps with other
        // edges; each swap keeps every vertex degree at exactly d
        bool stuck = false;
        while (!bad.empty() && !stuck) {
            const std::size_t kb = bad.back();
            if (good[kb]) { // fixed earlier as a swap partner
                bad.pop_back();
                continue;
            }
            stuck = true;
            for (uint32_t trial = 0; trial < 400; ++trial) {
                const std::size_t kp = rng.uniform_int(m);
                if (kp == kb) continue;
                Vertex u = e[kb].first, v = e[kb].second;
                Vertex x = e[kp].first, y = e[kp].second;
                if (rng.next_double() < 0.5) std::swap(x, y);
                if (u == x || v == y || key(u, x) == key(v, y)) continue;
                if (present.count(key(u, x)) || present.count(key(v, y))) continue;
                if (good[kp]) present.erase(key(e[kp].first, e[kp].second));
                e[kb] = {u, x};
                e[kp] = {v, y};
                present.insert(key(u, x));
                present.insert(key(v, y));
                good[kb] = good[kp] = 1;
                bad.pop_back();
                stuck = false;
                break;
            }
        }
        if (!bad.empty()) continue; // repair stalled; reshuffle and retry

        Adjacency g;
        g.n = n;
        g.directed = false;
        g.edges.assign(present.begin(), present.end());
        return g;
    }
    fail(Errc::InfeasibleRegular,
         "no simple " + std::to_string(d) + "-regular pairing found in " +
             std::to_string(max_restarts) + " attempts");
}

NormalizedWeights normalize_rates(const Adjacency& adj,
                                  const std::map<uint32_t, double>& qbar_per_order) {
    if (adj.n == 0) fail(Errc::EmptyGraph, "empty adjacency");
    NormalizedWeights w;
    w.n = adj.n;

    // in-degree per order
    std::map<uint32_t, std::vector<double>> deg;
    auto pairs = adj.directed_pairs();
    if (!pairs.empty()) deg[1].assign(adj.n, 0.0);
    for (auto [j, i] : pairs) {
        (void)j;
        deg[1][i] += 1.0;
    }
    for (const auto& h : adj.hyperedges) {
        const uint32_t m = uint32_t(h.base.size());
        if (m < 2) fail(Errc::MalformedRule, "hyperedge of order < 2");
        auto& dm = deg[m];
        if (dm.empty()) dm.assign(adj.n, 0.0);
        dm[h.target] += 1.0;
    }

    for (const auto& [m, q] : qbar_per_order) {
        auto it = deg.find(m);
        if (it == deg.end())
            fail(Errc::EmptyGraph, "no order-" + std::to_string(m) + " interactions in adjacency");
        const auto& dm = it->second;
        const double dbar = std::accumulate(dm.begin(), dm.end(), 0.0) / double(adj.n);
        if (dbar == 0.0)
            fail(Errc::EmptyGraph, "order-" + std::to_string(m) + " mean degree is zero");
        w.dbar[m] = dbar;
        const double dmaxv = *std::max_element(dm.begin(), dm.end());
        w.k_min[m] = q * dmaxv / dbar;
    }

    if (qbar_per_order.count(1) && !pairs.empty()) {
        std::vector<Triple> t;
        t.reserve(pairs.size());
        const double dbar = w.dbar.at(1);
        for (auto [j, i] : pairs) t.push_back({j, i, 1.0 / dbar});
        w.pair_weights = csr_from_triples(adj.n, adj.n, std::move(t));
    }
    for (const auto& h : adj.hyperedges) {
        const uint32_t m = uint32_t(h.base.size());
        if (!qbar_per_order.count(m)) continue;
        w.hyper.push_back({h.base, h.target, 1.0 / w.dbar.at(m)});
    }
    return w;
}

} // namespace hyperips
