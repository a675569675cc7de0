#include "hyperips/motif.hpp"

#include <algorithm>
#include <cmath>

namespace hyperips {

Motif motif_edge() { return {2, {{0, 1}}}; }

Motif motif_triangle() { return {3, {{0, 1}, {0, 2}, {1, 2}}}; }

EdgeConfigView::EdgeConfigView(const std::vector<StateIdx>& cfg, Vertex n_graph,
                               Vertex agent_offset, StateIdx on_state)
    : cfg_(&cfg), n_(n_graph), off_(agent_offset), on_(on_state) {
    if (n_graph == 0) fail(Errc::EmptyGraph, "edge view needs at least one graph vertex");
    const std::size_t need = std::size_t(agent_offset) + std::size_t(n_graph) * (n_graph - 1) / 2;
    if (cfg.size() < need) fail(Errc::ParameterDomain, "configuration too short for edge agents");
}

std::size_t EdgeConfigView::count_edges() const {
    const std::size_t n_agents = std::size_t(n_) * (n_ - 1) / 2;
    std::size_t c = 0;
    for (std::size_t a = 0; a < n_agents; ++a) c += (*cfg_)[off_ + a] == on_;
    return c;
}

namespace {

void check_motif(const Motif& f) {
    if (f.k == 0) fail(Errc::ParameterDomain, "motif needs at least one vertex");
    std::vector<std::pair<uint32_t, uint32_t>> es = f.edges;
    for (auto [a, b] : es)
        if (a >= b || b >= f.k) fail(Errc::ParameterDomain, "motif edge endpoints must be a < b < k");
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end())
        fail(Errc::ParameterDomain, "duplicate motif edge");
}

// motif edges whose later endpoint is exactly v: checkable as soon as the
// map is assigned on 0..v
std::vector<std::vector<uint32_t>> edges_by_closer(const Motif& f) {
    std::vector<std::vector<uint32_t>> by(f.k);
    for (uint32_t e = 0; e < f.edges.size(); ++e) by[f.edges[e].second].push_back(f.edges[e].first);
    return by;
}

} // namespace

HomDensity homomorphism_density(const EdgeConfigView& g, const Motif& f, uint32_t k_cap,
                                uint64_t sample_maps, uint64_t seed) {
    check_motif(f);
    if (f.k > k_cap) fail(Errc::MotifTooLarge, "motif exceeds the vertex cap");
    const Vertex n = g.n();
    const auto by = edges_by_closer(f);

    HomDensity out;
    if (f.k <= 3) {
        // exact count over all n^k maps, pruning a branch as soon as an edge fails
        uint64_t hom = 0;
        std::vector<Vertex> img(f.k);
        // depth-first over assignment positions (k <= 3 keeps this tiny)
        auto descend = [&](auto&& self, uint32_t v) -> void {
            if (v == f.k) {
                ++hom;
                return;
            }
            for (Vertex x = 0; x < n; ++x) {
                img[v] = x;
                bool ok = true;
                for (uint32_t a : by[v])
                    if (!g.has_edge(img[a], x)) {
                        ok = false;
                        break;
                    }
                if (ok) self(self, v + 1);
            }
        };
        descend(descend, 0);
        double total = 1.0;
        for (uint32_t v = 0; v < f.k; ++v) total *= double(n);
        out.value = double(hom) / total;
        out.maps = uint64_t(total);
        return out;
    }

    if (sample_maps < 2) fail(Errc::ParameterDomain, "need at least 2 sampled maps");
    Rng rng(seed);
    std::vector<Vertex> img(f.k);
    uint64_t hits = 0;
    for (uint64_t s = 0; s < sample_maps; ++s) {
        bool ok = true;
        for (uint32_t v = 0; v < f.k && ok; ++v) {
            img[v] = Vertex(rng.uniform_int(n));
            for (uint32_t a : by[v])
                if (!g.has_edge(img[a], img[v])) {
                    ok = false;
                    break;
                }
        }
        hits += ok;
    }
    out.value = double(hits) / double(sample_maps);
    out.std_error = std::sqrt(out.value * (1.0 - out.value) / double(sample_maps));
    out.exact = false;
    out.maps = sample_maps;
    return out;
}

} // namespace hyperips
