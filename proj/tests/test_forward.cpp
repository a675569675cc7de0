#include <doctest.h>

#include <cmath>
#include <vector>

#include "hyperips/errors.hpp"
#include "hyperips/forward.hpp"
#include "hyperips/models.hpp"

using namespace hyperips;

namespace {

Csr path3(double c) {
    return csr_from_triples(3, 3, {{0, 1, c}, {1, 0, c}, {1, 2, c}, {2, 1, c}});
}

Csr pair2(double c) { return csr_from_triples(2, 2, {{0, 1, c}, {1, 0, c}}); }

InitialLaw first_infected(Vertex n) {
    InitialLaw law = InitialLaw::point(n, 2, 0);
    law.set_vertex(0, {0.0, 1.0});
    return law;
}

} // namespace

TEST_SUITE_BEGIN("forward");

TEST_CASE("alias table reproduces its weights") {
    const std::vector<double> w = {1.0, 2.0, 3.0, 0.5};
    const AliasTable tab(w);
    Rng rng(5);
    const uint64_t n = 130'000;
    std::vector<uint64_t> hits(w.size(), 0);
    for (uint64_t k = 0; k < n; ++k) hits[tab.sample(rng)]++;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double p = w[i] / 6.5;
        const double sd = std::sqrt(p * (1 - p) / double(n));
        CHECK(std::abs(double(hits[i]) / double(n) - p) < 5 * sd);
    }
}

TEST_CASE("trajectories are pure functions of the seed") {
    const RateSystem sys = build_sis(path3(0.7), {0.2, 0.2, 0.2});
    const InitialLaw law = InitialLaw::iid(3, {0.5, 0.5});
    const Trajectory a = simulate_forward(sys, law, 5.0, 99);
    const Trajectory b = simulate_forward(sys, law, 5.0, 99);
    REQUIRE(a.events.size() == b.events.size());
    CHECK(a.initial == b.initial);
    for (std::size_t k = 0; k < a.events.size(); ++k) {
        CHECK(a.events[k].time == b.events[k].time);
        CHECK(a.events[k].rule == b.events[k].rule);
    }
    const Trajectory c = simulate_forward(sys, law, 5.0, 100);
    CHECK((c.initial != a.initial || c.events.size() != a.events.size() ||
           (!c.events.empty() && c.events[0].time != a.events[0].time)));
}

TEST_CASE("phantom logging changes the record, never the dynamics") {
    const RateSystem sys = build_sis(path3(0.7), {0.2, 0.2, 0.2});
    const InitialLaw law = InitialLaw::iid(3, {0.5, 0.5});
    const Trajectory lean = simulate_forward(sys, law, 4.0, 7);
    ForwardOptions opt;
    opt.keep_phantoms = true;
    const Trajectory full = simulate_forward(sys, law, 4.0, 7, opt);

    for (const ForwardEvent& e : lean.events) CHECK(e.applied);
    std::vector<ForwardEvent> applied;
    for (const ForwardEvent& e : full.events)
        if (e.applied) applied.push_back(e);
    REQUIRE(applied.size() == lean.events.size());
    for (std::size_t k = 0; k < applied.size(); ++k) {
        CHECK(applied[k].time == lean.events[k].time);
        CHECK(applied[k].rule == lean.events[k].rule);
    }
    CHECK(full.events.size() >= lean.events.size());
    CHECK(full.state_at(sys, 4.0) == lean.state_at(sys, 4.0));
}

TEST_CASE("state_at replays the event log") {
    const RateSystem sys = build_sis(path3(0.9));
    Trajectory tr = simulate_forward(sys, first_infected(3), 6.0, 3);
    CHECK(tr.state_at(sys, 0.0) == tr.initial);

    std::vector<StateIdx> cfg = tr.initial;
    std::size_t infected = 1;
    for (std::size_t k = 0; k < tr.events.size(); ++k) {
        const auto& e = tr.events[k];
        // transmission only ever flips S to I: the infected set grows
        CHECK(cfg[sys.target(e.rule)] == sys.from_state(e.rule));
        cfg[sys.target(e.rule)] = sys.to_state(e.rule);
        ++infected;
        CHECK(tr.state_at(sys, e.time) == cfg);
        const double mid =
            k + 1 < tr.events.size() ? (e.time + tr.events[k + 1].time) / 2 : tr.t_end;
        CHECK(tr.state_at(sys, mid) == cfg);
    }
    CHECK(infected == 1 + tr.events.size());
    CHECK(tr.events.size() <= 2); // only two susceptibles exist
}

TEST_CASE("pure transmission pair matches the closed form") {
    const double c = 0.8, t = 0.7;
    const uint64_t reps = 200'000;
    const MarginalEstimate est =
        estimate_marginals(build_sis(pair2(c)), first_infected(2), {0.0, t}, reps, 21);
    CHECK(est.value(0, 0, 1) == 1.0); // point mass survives the init draw
    CHECK(est.value(1, 0, 1) == 1.0);
    const double p = 1.0 - std::exp(-c * t);
    CHECK(std::abs(est.value(1, 1, 1) - p) < 4 * est.std_error(1, 1, 1) + 1e-12);
}

TEST_CASE("frequencies meet the exact marginals on a recoverable path") {
    // dual route: event-driven Monte Carlo vs independently frozen
    // matrix-exponential values for the same system
    const RateSystem sys = build_sis(path3(0.6), {0.25, 0.25, 0.25});
    const InitialLaw law = InitialLaw::iid(3, {0.6, 0.4});
    const uint64_t reps = 60'000;
    const MarginalEstimate est = estimate_marginals(sys, law, {1.0}, reps, 17);
    const double want[3] = {0.42323262998697653, 0.48842932487160806, 0.42323262998697653};
    for (Vertex i = 0; i < 3; ++i) {
        CHECK(std::abs(est.value(0, i, 1) - want[i]) < 4 * est.std_error(0, i, 1));
        CHECK(est.counts[2 * i] + est.counts[2 * i + 1] == reps);
    }
}

TEST_CASE("worker count never changes the tallies") {
    const RateSystem sys = build_sis(path3(0.6), {0.25, 0.25, 0.25});
    const InitialLaw law = InitialLaw::iid(3, {0.5, 0.5});
    const MarginalEstimate one = estimate_marginals(sys, law, {0.5, 1.0}, 999, 4, 1);
    const MarginalEstimate three = estimate_marginals(sys, law, {0.5, 1.0}, 999, 4, 3);
    CHECK(one.counts == three.counts);
    CHECK(resolved_threads(999, 3) == 3);
    CHECK(resolved_threads(2, 8) == 2);  // never more workers than replicas
    CHECK(resolved_threads(10, 0) >= 1); // 0 resolves to the hardware count
}

TEST_CASE("subset variance matches iid theory when vertices do not interact") {
    // no transmission, recovery 1: six independent Bernoulli(p e^{-t})
    const RateSystem sys = build_sis(Csr{6, 6, std::vector<std::size_t>(7, 0), {}, {}},
                                     std::vector<double>(6, 1.0));
    const InitialLaw law = InitialLaw::iid(6, {0.5, 0.5});
    const double t = 0.8;
    const SubpopVarianceResult r =
        estimate_subpop_variance(sys, law, {0, 1, 2, 3, 4, 5}, 1, t, 40'000, 13);
    const double p = 0.5 * std::exp(-t);
    const double want = p * (1 - p) / 6.0;
    CHECK(r.fractions.size() == 40'000);
    CHECK(std::abs(r.report.variance - want) < 4 * r.report.std_error);
    CHECK(std::abs(r.report.mean - p) < 5.0 * std::sqrt(want / 40'000.0));
}

TEST_CASE("event cap fires as a cap error") {
    const RateSystem sys = build_sis(path3(0.9), {0.4, 0.4, 0.4});
    ForwardOptions opt;
    opt.event_cap = 3;
    try {
        simulate_forward(sys, InitialLaw::iid(3, {0.5, 0.5}), 1e6, 1, opt);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CapExceeded);
        CHECK(e.is_cap());
    }
}

TEST_SUITE_END();
