#include "hyperips/models.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

namespace hyperips {

namespace {

void default_warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

// n choose k in double; exact for the small arguments used here
double choose(uint64_t n, uint64_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (uint64_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

} // namespace

RateSystem build_sis(const Csr& R, const std::vector<double>& recovery) {
    if (R.rows != R.cols) fail(Errc::ParameterDomain, "rate matrix must be square");
    const Vertex n = Vertex(R.rows);
    if (!recovery.empty() && recovery.size() != n)
        fail(Errc::ParameterDomain, "recovery vector length must equal n");
    StateSpace sp({"S", "I"});
    const StateIdx S = 0, I = 1;
    RateSystemBuilder b(sp, n);
    for (Vertex j = 0; j < n; ++j)
        for (std::size_t k = R.off[j]; k < R.off[j + 1]; ++k) {
            const Vertex i = R.col[k];
            if (i == j) fail(Errc::MalformedRule, "rate matrix must have zero diagonal");
            const StateIdx bs = I;
            b.add_rule(&j, &bs, 1, i, S, I, R.val[k]);
        }
    for (Vertex i = 0; i < Vertex(recovery.size()); ++i)
        b.add_rule(nullptr, nullptr, 0, i, I, S, recovery[i]);
    return b.build();
}

RateSystem build_simplicial_sis(Vertex n, const std::vector<RateEntry>& entries,
                                const std::vector<double>& recovery) {
    if (!recovery.empty() && recovery.size() != n)
        fail(Errc::ParameterDomain, "recovery vector length must equal n");
    StateSpace sp({"S", "I"});
    const StateIdx S = 0, I = 1;
    RateSystemBuilder b(sp, n);
    std::vector<StateIdx> all_I;
    for (const auto& e : entries) {
        all_I.assign(e.base.size(), I);
        b.add_rule(e.base.data(), all_I.data(), uint32_t(e.base.size()), e.target, S, I, e.rate);
    }
    for (Vertex i = 0; i < Vertex(recovery.size()); ++i)
        b.add_rule(nullptr, nullptr, 0, i, I, S, recovery[i]);
    return b.build();
}

RateSystem build_sais(const Csr& w1, const Csr& w2, double beta_s, double beta_a, double kappa,
                      const std::vector<double>& gamma, const WarnSink& warn) {
    if (w1.rows != w1.cols || w2.rows != w2.cols || w1.rows != w2.rows)
        fail(Errc::ParameterDomain, "layer matrices must be square and same size");
    if (beta_s < 0 || beta_a < 0 || kappa < 0)
        fail(Errc::NegativeRate, "model parameters must be nonnegative");
    const Vertex n = Vertex(w1.rows);
    if (!gamma.empty() && gamma.size() != n)
        fail(Errc::ParameterDomain, "gamma vector length must equal n");
    if (beta_a >= beta_s && beta_a > 0)
        (warn ? warn : default_warn)("alert infection rate >= susceptible infection rate; "
                                     "alertness gives no protection");
    StateSpace sp({"S", "A", "I"});
    const StateIdx S = 0, A = 1, I = 2;
    RateSystemBuilder b(sp, n);
    auto add_layer = [&](const Csr& w, StateIdx from, StateIdx to, StateIdx bstate, double scale) {
        for (Vertex j = 0; j < n; ++j)
            for (std::size_t k = w.off[j]; k < w.off[j + 1]; ++k) {
                const Vertex i = w.col[k];
                if (i == j) fail(Errc::MalformedRule, "layer matrix must have zero diagonal");
                const double r = scale * w.val[k];
                if (r > 0) b.add_rule(&j, &bstate, 1, i, from, to, r);
            }
    };
    add_layer(w1, S, I, I, beta_s); // infection of susceptibles
    add_layer(w1, A, I, I, beta_a); // infection of the alert
    add_layer(w2, S, A, I, kappa);  // alerting through the second layer
    for (Vertex i = 0; i < Vertex(gamma.size()); ++i)
        b.add_rule(nullptr, nullptr, 0, i, I, S, gamma[i]);
    return b.build();
}

Vertex edge_agent(Vertex n, Vertex i, Vertex j) {
    if (i > j) std::swap(i, j);
    if (i == j || j >= n) fail(Errc::ParameterDomain, "edge agent needs i < j < n");
    // row-major upper triangle: offset(i) = i*(2n-i-1)/2
    return Vertex(uint64_t(i) * (2 * uint64_t(n) - i - 1) / 2 + (j - i - 1));
}

std::pair<Vertex, Vertex> agent_pair(Vertex n, Vertex a) {
    uint64_t rem = a;
    for (Vertex i = 0; i + 1 < n; ++i) {
        const uint64_t row = n - 1 - i;
        if (rem < row) return {i, Vertex(i + 1 + rem)};
        rem -= row;
    }
    fail(Errc::ParameterDomain, "agent id out of range");
}

FlipModel build_triangle_flip(Vertex n_graph, const std::vector<FlipLabel>& labels_in,
                              uint32_t clique, std::size_t rule_cap) {
    if (n_graph < 3) fail(Errc::ParameterDomain, "flip process needs n >= 3");
    if (clique < 3 || clique > n_graph)
        fail(Errc::ParameterDomain, "clique size must be in [3, n]");
    const uint32_t m = clique * (clique - 1) / 2 - 1; // base edges per target slot

    std::vector<FlipLabel> labels = labels_in;
    if (labels.empty()) labels.push_back({std::vector<StateIdx>(m, 1), 1, 0, 1.0});
    for (const auto& l : labels) {
        if (l.base_states.size() != m)
            fail(Errc::MalformedRule, "flip label has wrong base length");
        if (l.q < 0) fail(Errc::NegativeRate, "flip label rate must be nonnegative");
    }

    const double denom = choose(n_graph - 2, clique - 2);
    const double n_cliques = choose(n_graph, clique);
    const double est = n_cliques * double(clique * (clique - 1) / 2) * double(labels.size());
    if (est > double(rule_cap))
        fail(Errc::TooLarge, "flip process would need " + std::to_string(std::size_t(est)) +
                                 " rules (cap " + std::to_string(rule_cap) + ")");

    const Vertex n_agents = Vertex(uint64_t(n_graph) * (n_graph - 1) / 2);
    StateSpace sp({"0", "1"});
    RateSystemBuilder b(sp, n_agents);

    // enumerate cliques of `clique` vertices
    std::vector<Vertex> c(clique);
    for (uint32_t l = 0; l < clique; ++l) c[l] = l;
    std::vector<Vertex> eagents(clique * (clique - 1) / 2), base(m);
    while (true) {
        std::size_t idx = 0;
        for (uint32_t a = 0; a < clique; ++a)
            for (uint32_t bb = a + 1; bb < clique; ++bb) eagents[idx++] = edge_agent(n_graph, c[a], c[bb]);
        std::sort(eagents.begin(), eagents.end());
        for (std::size_t tgt = 0; tgt < eagents.size(); ++tgt) {
            base.clear();
            for (std::size_t o = 0; o < eagents.size(); ++o)
                if (o != tgt) base.push_back(eagents[o]);
            for (const auto& l : labels)
                b.add_rule(base.data(), l.base_states.data(), m, eagents[tgt], l.from, l.to,
                           l.q / denom);
        }
        // next combination
        int pos = int(clique) - 1;
        while (pos >= 0 && c[pos] == n_graph - clique + Vertex(pos)) --pos;
        if (pos < 0) break;
        ++c[pos];
        for (uint32_t q = uint32_t(pos) + 1; q < clique; ++q) c[q] = c[q - 1] + 1;
    }

    FlipModel out;
    out.system = b.build();
    out.n_graph = n_graph;
    out.clique = clique;
    return out;
}

JointModel build_joint_si_flip(Vertex n_graph, std::size_t rule_cap) {
    if (n_graph < 3) fail(Errc::ParameterDomain, "joint dynamics needs n >= 3");
    const Vertex n_edges = Vertex(uint64_t(n_graph) * (n_graph - 1) / 2);
    const double est = double(n_graph) * (n_graph - 1) + 3.0 * choose(n_graph, 3);
    if (est > double(rule_cap))
        fail(Errc::TooLarge, "joint model would need " + std::to_string(std::size_t(est)) + " rules");

    StateSpace sp({"S", "I", "1", "0"});
    const StateIdx S = 0, I = 1, ON = 2, OFF = 3;
    RateSystemBuilder b(sp, n_graph + n_edges);

    // transmission along present edges
    const double beta = 1.0 / double(n_graph - 1);
    for (Vertex j = 0; j < n_graph; ++j)
        for (Vertex i = 0; i < n_graph; ++i) {
            if (i == j) continue;
            const Vertex e = n_graph + edge_agent(n_graph, j, i);
            const Vertex base[2] = {j, e}; // vertex ids < edge agent ids, already sorted
            const StateIdx bs[2] = {I, ON};
            b.add_rule(base, bs, 2, i, S, I, beta);
        }

    // triangle removal among the edge agents
    const double q = 1.0 / double(n_graph - 2);
    for (Vertex x = 0; x < n_graph; ++x)
        for (Vertex y = x + 1; y < n_graph; ++y)
            for (Vertex z = y + 1; z < n_graph; ++z) {
                const Vertex exy = n_graph + edge_agent(n_graph, x, y);
                const Vertex exz = n_graph + edge_agent(n_graph, x, z);
                const Vertex eyz = n_graph + edge_agent(n_graph, y, z);
                const Vertex tri[3] = {exy, exz, eyz};
                for (int t = 0; t < 3; ++t) {
                    Vertex base[2];
                    int p = 0;
                    for (int o = 0; o < 3; ++o)
                        if (o != t) base[p++] = tri[o];
                    if (base[0] > base[1]) std::swap(base[0], base[1]);
                    const StateIdx bs[2] = {ON, ON};
                    b.add_rule(base, bs, 2, tri[t], ON, OFF, q);
                }
            }

    JointModel out;
    out.system = b.build();
    out.n_graph = n_graph;
    out.edge_agent_base = n_graph;
    return out;
}

CounterexampleModel build_linf_counterexample(Vertex n, const std::vector<RateEntry>& entries) {
    if (entries.empty()) fail(Errc::EmptyGraph, "counterexample needs at least one rate entry");

    // influence of the *input* family and its argmax pair
    std::map<std::pair<Vertex, Vertex>, double> inf;
    for (const auto& e : entries) {
        if (e.rate < 0) fail(Errc::NegativeRate, "rates must be nonnegative");
        for (Vertex j : e.base) inf[{j, e.target}] += e.rate;
    }
    Vertex ji = 0, ii = 0;
    double rmax = -1.0;
    for (const auto& [k, v] : inf)
        if (v > rmax) {
            rmax = v;
            ji = k.first;
            ii = k.second;
        }

    StateSpace sp({"*", "S", "I"});
    const StateIdx STAR = 0, S = 1, I = 2;
    RateSystemBuilder b(sp, n);
    std::vector<StateIdx> bs;
    for (const auto& e : entries) {
        if (e.rate == 0) continue;
        // one label per choice of which base member carries the star
        for (std::size_t p = 0; p < e.base.size(); ++p) {
            bs.assign(e.base.size(), I);
            bs[p] = STAR;
            b.add_rule(e.base.data(), bs.data(), uint32_t(e.base.size()), e.target, S, I, e.rate);
        }
    }

    CounterexampleModel out;
    out.system = b.build();
    out.law = InitialLaw::point(n, 3, I);
    out.law.set_vertex(ii, {0.0, 1.0, 0.0});
    out.law.set_vertex(ji, {0.5, 0.0, 0.5});
    out.i = ii;
    out.j = ji;
    out.rtilde_max = rmax;
    out.star = STAR;
    out.s = S;
    out.inf = I;
    return out;
}

std::vector<HyperEdge> triangle_hyperedges(const Adjacency& g) {
    // adjacency bitmap for the triangle scan
    std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
    for (auto [a, b] : g.directed_pairs()) adj[a][b] = true;
    std::vector<HyperEdge> out;
    for (Vertex x = 0; x < g.n; ++x)
        for (Vertex y = x + 1; y < g.n; ++y) {
            if (!(adj[x][y] && adj[y][x])) continue;
            for (Vertex z = y + 1; z < g.n; ++z) {
                if (adj[x][z] && adj[z][x] && adj[y][z] && adj[z][y]) {
                    out.push_back({{y, z}, x});
                    out.push_back({{x, z}, y});
                    out.push_back({{x, y}, z});
                }
            }
        }
    return out;
}

} // namespace hyperips
