#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperips/errors.hpp"
#include "hyperips/generators.hpp"

using namespace hyperips;

namespace {

std::vector<uint32_t> degrees(const Adjacency& g) {
    std::vector<uint32_t> d(g.n, 0);
    for (auto [a, b] : g.edges) {
        d[a]++;
        if (!g.directed) d[b]++;
    }
    return d;
}

bool simple_sorted(const Adjacency& g) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (auto [a, b] : g.edges) {
        if (a == b || a >= g.n || b >= g.n) return false;
        if (!g.directed && a > b) return false;
        if (!seen.insert({a, b}).second) return false;
    }
    return std::is_sorted(g.edges.begin(), g.edges.end());
}

} // namespace

TEST_SUITE_BEGIN("generators");

TEST_CASE("erdos renyi: determinism, simplicity, expected edge count") {
    const Adjacency g = erdos_renyi(400, 6.0, 17);
    CHECK(g.n == 400);
    CHECK(!g.directed);
    CHECK(simple_sorted(g));
    CHECK(erdos_renyi(400, 6.0, 17).edges == g.edges);
    CHECK(erdos_renyi(400, 6.0, 18).edges != g.edges);

    // |E| ~ Binomial(C(n,2), lambda/n): mean 1200, sd ~ sqrt(1182) ~ 34
    const double mean = 399.0 * 6.0 / 2.0;
    CHECK(std::abs(double(g.edges.size()) - mean) < 6.0 * 35.0);

    CHECK(erdos_renyi(50, 0.0, 3).edges.empty());
    CHECK_THROWS_AS(erdos_renyi(0, 1.0, 0), Error);
}

TEST_CASE("erdos renyi: directed pair expansion doubles undirected edges") {
    const Adjacency g = erdos_renyi(30, 4.0, 5);
    const auto pairs = g.directed_pairs();
    CHECK(pairs.size() == 2 * g.edges.size());
    for (auto [a, b] : g.edges) {
        CHECK(std::count(pairs.begin(), pairs.end(), std::pair<Vertex, Vertex>{a, b}) == 1);
        CHECK(std::count(pairs.begin(), pairs.end(), std::pair<Vertex, Vertex>{b, a}) == 1);
    }
}

TEST_CASE("chung lu: parameter domain and rank-skewed degrees") {
    CHECK_THROWS_AS(chung_lu(50, 0.5, 0.4, 1), Error);  // gamma >= 1/3
    CHECK_THROWS_AS(chung_lu(50, 0.5, 0.0, 1), Error);  // gamma <= 0
    CHECK_THROWS_AS(chung_lu(50, 0.2, 0.25, 1), Error); // alpha <= gamma
    CHECK_THROWS_AS(chung_lu(50, 0.6, 0.25, 1), Error); // alpha >= 1 - 2 gamma

    const Adjacency g = chung_lu(400, 0.4, 0.25, 11);
    CHECK(g.n == 400);
    CHECK(simple_sorted(g));
    CHECK(chung_lu(400, 0.4, 0.25, 11).edges == g.edges);

    // low ranks carry polynomially larger weight; compare top and bottom decile
    const auto deg = degrees(g);
    uint64_t top = 0, bottom = 0;
    for (int i = 0; i < 40; ++i) {
        top += deg[i];
        bottom += deg[399 - i];
    }
    CHECK(top > 2 * bottom);
}

TEST_CASE("named graphs have the promised shapes") {
    const Adjacency k = named_graph("complete", 5);
    CHECK(k.edges.size() == 10);
    CHECK(!k.directed);

    const Adjacency p = named_graph("path", 5);
    CHECK(p.edges.size() == 4);
    for (Vertex i = 0; i + 1 < 5; ++i)
        CHECK(std::count(p.edges.begin(), p.edges.end(), std::pair<Vertex, Vertex>{i, i + 1}) == 1);

    const Adjacency s = named_graph("directed_star_out", 6);
    CHECK(s.directed);
    CHECK(s.edges.size() == 5);
    for (auto [a, b] : s.edges) {
        CHECK(a == 0);
        CHECK(b >= 1);
    }
    CHECK(s.directed_pairs().size() == 5); // no doubling when directed

    CHECK_THROWS_AS(named_graph("moebius", 5), Error);
}

TEST_CASE("random regular: exact degree for small and large d") {
    for (uint32_t d : {3u, 8u, 32u}) {
        const Adjacency g = random_regular(100, d, 42);
        CHECK(simple_sorted(g));
        CHECK(g.edges.size() == 50 * d);
        for (uint32_t x : degrees(g)) CHECK(x == d);
        CHECK(random_regular(100, d, 42).edges == g.edges);
    }
    CHECK(random_regular(100, 8, 1).edges != random_regular(100, 8, 2).edges);
}

TEST_CASE("random regular: infeasible inputs are rejected up front") {
    CHECK_THROWS_WITH_AS(random_regular(5, 3, 0), "InfeasibleRegular: n*d must be even", Error);
    CHECK_THROWS_AS(random_regular(4, 4, 0), Error); // d >= n
    CHECK_THROWS_AS(random_regular(4, 0, 0), Error); // ParameterDomain
    try {
        random_regular(4, 4, 0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InfeasibleRegular);
        CHECK(!e.is_cap());
    }
}

TEST_CASE("normalize rates: path graph hand check") {
    const Adjacency p = named_graph("path", 3); // in-degrees 1,2,1 -> dbar 4/3
    const NormalizedWeights w = normalize_rates(p, {{1, 1.0}});
    CHECK(w.n == 3);
    CHECK(w.dbar.at(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(w.pair_weights.rows == 3);
    for (double v : w.pair_weights.val) CHECK(v == doctest::Approx(0.75).epsilon(1e-12));
    // smallest K with max in-degree <= (K / qbar) * dbar
    CHECK(w.k_min.at(1) == doctest::Approx(1.0 * 2.0 / (4.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("normalize rates: hyperedge orders get their own mean degree") {
    Adjacency g;
    g.n = 4;
    g.edges = {{0, 1}};
    g.hyperedges.push_back({{0, 1}, 2});
    g.hyperedges.push_back({{1, 2}, 3});
    const NormalizedWeights w = normalize_rates(g, {{1, 1.0}, {2, 2.0}});
    CHECK(w.dbar.at(1) == doctest::Approx(0.5).epsilon(1e-12));  // 2 pairs / 4
    CHECK(w.dbar.at(2) == doctest::Approx(0.5).epsilon(1e-12));  // 2 hyper / 4
    REQUIRE(w.hyper.size() == 2);
    for (const auto& h : w.hyper) CHECK(h.weight == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.k_min.at(2) == doctest::Approx(2.0 * 1.0 / 0.5).epsilon(1e-12));
}

TEST_SUITE_END();
