#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/errors.hpp"
#include "hyperips/models.hpp"
#include "hyperips/motif.hpp"

using namespace hyperips;

namespace {

Csr path3(double c) {
    return csr_from_triples(3, 3, {{0, 1, c}, {1, 0, c}, {1, 2, c}, {2, 1, c}});
}

} // namespace

TEST_SUITE_BEGIN("models");

TEST_CASE("sis on a path: rules, deltas, influence") {
    const RateSystem sys = build_sis(path3(0.6), {0.25, 0.25, 0.25});
    CHECK(sys.states().names() == std::vector<std::string>{"S", "I"});
    CHECK(sys.n_vertices() == 3);
    CHECK(sys.n_rules() == 7); // 4 infection + 3 recovery
    CHECK(sys.max_order() == 1);

    CHECK(sys.delta(1, 0) == doctest::Approx(0.6));
    CHECK(sys.delta(1, 1) == doctest::Approx(1.2));
    CHECK(sys.delta_max() == doctest::Approx(1.2));
    CHECK(sys.target_rate(1) == doctest::Approx(1.2 + 0.25));
    CHECK(sys.target_rate_interacting(1) == doctest::Approx(1.2));
    CHECK(sys.total_rate() == doctest::Approx(4 * 0.6 + 3 * 0.25));

    const Csr& inf = sys.influence_matrix();
    CHECK(inf.at(0, 1) == doctest::Approx(0.6));
    CHECK(inf.at(1, 0) == doctest::Approx(0.6));
    CHECK(inf.at(0, 2) == 0.0);
    CHECK(sys.influence_max() == doctest::Approx(0.6));

    // infection rules flip S -> I with the influencer required infected
    for (uint32_t r : sys.rules_of_target(2)) {
        if (sys.order(r) == 0) continue;
        CHECK(sys.order(r) == 1);
        CHECK(sys.base(r)[0] == 1);
        CHECK(sys.base_states(r)[0] == sys.states().index("I"));
        CHECK(sys.from_state(r) == sys.states().index("S"));
        CHECK(sys.to_state(r) == sys.states().index("I"));
    }
    CHECK(pair_rate_matrix(sys).at(1, 2) == doctest::Approx(0.6));
}

TEST_CASE("sis rejects diagonal rate entries and bad recovery length") {
    CHECK_THROWS_AS(build_sis(csr_from_triples(2, 2, {{0, 0, 1.0}})), Error);
    CHECK_THROWS_AS(build_sis(path3(0.5), {1.0}), Error);
}

TEST_CASE("simplicial sis carries mixed orders") {
    const RateSystem sys =
        build_simplicial_sis(3, {{{0}, 1, 0.5}, {{0, 1}, 2, 1.3}}, {0.2, 0.2, 0.2});
    CHECK(sys.n_rules() == 5);
    CHECK(sys.max_order() == 2);
    CHECK(sys.delta(1, 1) == doctest::Approx(0.5));
    CHECK(sys.delta(2, 2) == doctest::Approx(1.3));
    CHECK(sys.target_rate(2) == doctest::Approx(1.3 + 0.2));
    // both base members of the order-2 rule carry its full rate as influence
    CHECK(sys.influence_matrix().at(0, 2) == doctest::Approx(1.3));
    CHECK(sys.influence_matrix().at(1, 2) == doctest::Approx(1.3));
    CHECK_THROWS_AS(pair_rate_matrix(sys), Error); // order-2 has no pair matrix
}

TEST_CASE("sais wires three mechanisms over two layers") {
    std::vector<std::string> warnings;
    const RateSystem sys = build_sais(path3(0.5), path3(0.5), 1.0, 0.4, 0.7, {0.2, 0.2, 0.2},
                                      [&](const std::string& w) { warnings.push_back(w); });
    CHECK(warnings.empty());
    CHECK(sys.states().names() == std::vector<std::string>{"S", "A", "I"});
    CHECK(sys.n_rules() == 15); // 3 mechanisms x 4 pairs + 3 recovery

    const StateIdx S = 0, A = 1, I = 2;
    double s_to_i = 0, a_to_i = 0, s_to_a = 0;
    for (uint32_t r : sys.rules_of_target(1)) {
        if (sys.order(r) == 0) continue;
        if (sys.from_state(r) == S && sys.to_state(r) == I) s_to_i += sys.rate(r);
        if (sys.from_state(r) == A && sys.to_state(r) == I) a_to_i += sys.rate(r);
        if (sys.from_state(r) == S && sys.to_state(r) == A) s_to_a += sys.rate(r);
        CHECK(sys.base_states(r)[0] == I); // all mechanisms are driven by infecteds
    }
    CHECK(s_to_i == doctest::Approx(2 * 0.5 * 1.0));
    CHECK(a_to_i == doctest::Approx(2 * 0.5 * 0.4));
    CHECK(s_to_a == doctest::Approx(2 * 0.5 * 0.7));

    // protection warning when alertness does not reduce the infection rate
    build_sais(path3(0.5), path3(0.5), 0.4, 1.0, 0.7, {},
               [&](const std::string& w) { warnings.push_back(w); });
    CHECK(warnings.size() == 1);
}

TEST_CASE("edge agents enumerate the upper triangle") {
    const Vertex n = 7;
    Vertex next = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) {
            CHECK(edge_agent(n, i, j) == next);
            CHECK(edge_agent(n, j, i) == next); // order-insensitive
            const auto [a, b] = agent_pair(n, next);
            CHECK(a == i);
            CHECK(b == j);
            ++next;
        }
    CHECK(next == n * (n - 1) / 2);
    CHECK_THROWS_AS(edge_agent(n, 2, 2), Error);
    CHECK_THROWS_AS(edge_agent(n, 2, 7), Error);
    CHECK_THROWS_AS(agent_pair(n, 21), Error);
}

TEST_CASE("triangle flip: one decay label per edge per triangle") {
    const FlipModel m = build_triangle_flip(4);
    CHECK(m.n_graph == 4);
    CHECK(m.system.n_vertices() == 6);
    CHECK(m.system.n_rules() == 12); // C(4,3) triangles x 3 edge slots
    CHECK(m.system.max_order() == 2);
    for (std::size_t r = 0; r < m.system.n_rules(); ++r) {
        CHECK(m.system.order(r) == 2);
        CHECK(m.system.rate(r) == doctest::Approx(0.5)); // q / (n - 2)
        CHECK(m.system.from_state(r) == 1);
        CHECK(m.system.to_state(r) == 0);
        CHECK(m.system.base_states(r)[0] == 1);
        CHECK(m.system.base_states(r)[1] == 1);
    }
    // a two-direction label set doubles the rule count
    const FlipModel both = build_triangle_flip(4, {{{1, 1}, 1, 0, 1.0}, {{1, 1}, 0, 1, 1.0}});
    CHECK(both.system.n_rules() == 24);

    CHECK_THROWS_AS(build_triangle_flip(2), Error);
    CHECK_THROWS_AS(build_triangle_flip(10, {}, 3, 10), Error); // rule cap
}

TEST_CASE("joint model: transmission needs the edge present") {
    const JointModel m = build_joint_si_flip(4);
    CHECK(m.n_graph == 4);
    CHECK(m.edge_agent_base == 4);
    CHECK(m.system.n_vertices() == 10);
    CHECK(m.system.states().names() == std::vector<std::string>{"S", "I", "1", "0"});
    CHECK(m.system.n_rules() == 24); // 12 transmission + 12 removal

    const StateIdx S = 0, I = 1, ON = 2, OFF = 3;
    std::size_t transmission = 0, removal = 0;
    for (std::size_t r = 0; r < m.system.n_rules(); ++r) {
        REQUIRE(m.system.order(r) == 2);
        if (m.system.to_state(r) == I) {
            ++transmission;
            CHECK(m.system.from_state(r) == S);
            CHECK(m.system.rate(r) == doctest::Approx(1.0 / 3.0));
            CHECK(m.system.base_states(r)[0] == I);  // infected graph vertex
            CHECK(m.system.base_states(r)[1] == ON); // connecting edge agent
            CHECK(m.system.base(r)[0] < 4);
            CHECK(m.system.base(r)[1] >= 4);
        } else {
            ++removal;
            CHECK(m.system.from_state(r) == ON);
            CHECK(m.system.to_state(r) == OFF);
            CHECK(m.system.rate(r) == doctest::Approx(0.5));
        }
    }
    CHECK(transmission == 12);
    CHECK(removal == 12);
}

TEST_CASE("worst-case instance: star placement, law, and argmax bookkeeping") {
    const CounterexampleModel m = build_linf_counterexample(3, {{{1}, 0, 1.0}});
    CHECK(m.system.states().names() == std::vector<std::string>{"*", "S", "I"});
    CHECK(m.rtilde_max == doctest::Approx(1.0));
    CHECK(m.i == 0);
    CHECK(m.j == 1);
    CHECK(m.system.n_rules() == 1);
    CHECK(m.system.base_states(0)[0] == m.star);

    // law: target S, influencer half star / half infected, bystanders infected
    CHECK(m.law.prob(0, m.s) == doctest::Approx(1.0));
    CHECK(m.law.prob(1, m.star) == doctest::Approx(0.5));
    CHECK(m.law.prob(1, m.inf) == doctest::Approx(0.5));
    CHECK(m.law.prob(2, m.inf) == doctest::Approx(1.0));

    // an order-2 entry expands to one label per star placement
    const CounterexampleModel m2 = build_linf_counterexample(4, {{{1, 2}, 0, 0.8}});
    CHECK(m2.system.n_rules() == 2);
    CHECK(m2.rtilde_max == doctest::Approx(0.8));

    CHECK_THROWS_AS(build_linf_counterexample(3, {}), Error);
    CHECK_THROWS_AS(build_linf_counterexample(3, {{{1}, 0, -1.0}}), Error);
}

TEST_CASE("homomorphism density: exact small-motif counts") {
    // complete graph on 4 vertices: all 6 agents on
    const FlipModel m = build_triangle_flip(4);
    std::vector<StateIdx> cfg(6, 1);
    const EdgeConfigView all(cfg, m);
    CHECK(all.count_edges() == 6);

    HomDensity tri = homomorphism_density(all, motif_triangle());
    CHECK(tri.exact);
    CHECK(tri.std_error == 0.0);
    CHECK(tri.value == doctest::Approx(24.0 / 64.0).epsilon(1e-15)); // 4*3*2 / 4^3

    HomDensity edge = homomorphism_density(all, motif_edge());
    CHECK(edge.value == doctest::Approx(12.0 / 16.0).epsilon(1e-15)); // 2|E| / n^2

    // drop {0,1}: only triangles {0,2,3} and {1,2,3} survive
    cfg[edge_agent(4, 0, 1)] = 0;
    const EdgeConfigView one_off(cfg, m);
    CHECK(homomorphism_density(one_off, motif_triangle()).value ==
          doctest::Approx(12.0 / 64.0).epsilon(1e-15));

    std::fill(cfg.begin(), cfg.end(), 0);
    CHECK(homomorphism_density(EdgeConfigView(cfg, m), motif_triangle()).value == 0.0);
}

TEST_CASE("homomorphism density: sampled four-cycle matches the closed form") {
    const Vertex n = 6;
    const FlipModel m = build_triangle_flip(n);
    std::vector<StateIdx> cfg(n * (n - 1) / 2, 1);
    const EdgeConfigView g(cfg, m);

    Motif c4{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
    const HomDensity est = homomorphism_density(g, c4, 10, 200'000, 9);
    CHECK(!est.exact);
    CHECK(est.std_error > 0.0);
    // hom(C4, K6) = trace((J - I)^4) = 5^4 + 5 = 630 over 6^4 maps
    const double truth = 630.0 / 1296.0;
    CHECK(std::abs(est.value - truth) < 5.0 * est.std_error);

    // pure function of the seed
    CHECK(homomorphism_density(g, c4, 10, 200'000, 9).value == est.value);
    CHECK(homomorphism_density(g, c4, 10, 200'000, 10).value != est.value);
}

TEST_CASE("motif guards: malformed patterns and the size cap") {
    const FlipModel m = build_triangle_flip(4);
    std::vector<StateIdx> cfg(6, 1);
    const EdgeConfigView g(cfg, m);

    CHECK_THROWS_AS(homomorphism_density(g, Motif{3, {{0, 3}}}), Error);    // endpoint >= k
    CHECK_THROWS_AS(homomorphism_density(g, Motif{3, {{1, 1}}}), Error);    // self loop
    CHECK_THROWS_AS(homomorphism_density(g, Motif{0, {}}), Error);          // empty
    Motif big{11, {{0, 1}}};
    try {
        homomorphism_density(g, big);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MotifTooLarge);
        CHECK(e.is_cap());
    }
}

TEST_SUITE_END();
