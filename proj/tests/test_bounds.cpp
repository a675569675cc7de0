#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperips/bounds.hpp"
#include "hyperips/errors.hpp"
#include "hyperips/models.hpp"

using namespace hyperips;

namespace {

// symmetric 4x4 with distinct row sums (column sums 0.9, 0.5, 1.5, 1.2)
Csr sym4() {
    std::vector<Triple> t;
    for (auto [i, j, v] : std::vector<std::tuple<uint32_t, uint32_t, double>>{
             {0, 1, 0.3}, {0, 2, 0.5}, {1, 2, 0.2}, {2, 3, 0.8}, {0, 3, 0.4}}) {
        t.push_back({i, j, v});
        t.push_back({j, i, v});
    }
    return csr_from_triples(4, 4, t);
}

Csr cycle4(double c) {
    std::vector<Triple> t;
    for (auto [i, j] : std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}) {
        t.push_back({i, j, c});
        t.push_back({j, i, c});
    }
    return csr_from_triples(4, 4, t);
}

bool has_name(const std::vector<BoundReport>& rs, const std::string& name) {
    return std::any_of(rs.begin(), rs.end(),
                       [&](const BoundReport& r) { return r.name == name; });
}

} // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("closed forms match independently evaluated references") {
    CHECK(concentration_upper(1.7, 0.9, 250) ==
          doctest::Approx(0.085310228648107611).epsilon(1e-13));
    CHECK(collision_upper(1.2, 2, 0.35, 0.9) ==
          doctest::Approx(26.415826274403269).epsilon(1e-13));
    CHECK(linf_upper(1.2, 2, 0.35, 0.9) == doctest::Approx(94.737671647949128).epsilon(1e-13));
    CHECK(linf_lower_general(0.35) == doctest::Approx(0.012887024090149359).epsilon(1e-13));
    CHECK(linf_lower_general(0.0) == 0.0);
}

TEST_CASE("l1 bounds on a fixed symmetric matrix at t = 1") {
    const L1Bounds b = l1_bounds(sym4(), 1.0);
    CHECK(b.norm2 == doctest::Approx(1.2146955829744046).epsilon(1e-8));
    CHECK(b.delta_max == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(b.theta == doctest::Approx(0.59).epsilon(1e-12));

    CHECK(b.upper_delta.require() == doctest::Approx(212.44042986923151).epsilon(1e-9));
    CHECK(b.upper_sigma.require() == doctest::Approx(101.82258325777831).epsilon(1e-7));
    CHECK(b.lower_exp_delta.require() ==
          doctest::Approx(0.003005709604965435).epsilon(1e-12));
    CHECK(b.lower_theta.require() ==
          doctest::Approx(5.1465769264109697e-13).epsilon(1e-6));

    // weighted non-uniform entries: the unweighted-graph floor must refuse
    CHECK(!b.lower_graph.available);
    CHECK(b.lower_graph.errc == Errc::RequiresUnweighted);
    CHECK_THROWS_AS(b.lower_graph.require(), Error);
}

TEST_CASE("unweighted-graph floor accepts a normalized cycle") {
    // 4-cycle with entries 1/dbar = 0.5: exactly the normalized regime
    const L1Bounds b = l1_bounds(cycle4(0.5), 1.0);
    CHECK(b.dbar == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(b.lower_graph.require() ==
          doctest::Approx(5.2416035609767477e-06).epsilon(1e-9));
}

TEST_CASE("l1 fields are gated by time and symmetry") {
    const L1Bounds late = l1_bounds(sym4(), 2.0);
    CHECK(late.upper_delta.available); // uppers hold for every t
    CHECK(!late.lower_exp_delta.available);
    CHECK(!late.lower_graph.available);
    CHECK(!late.lower_theta.available);

    const Csr asym = csr_from_triples(3, 3, {{0, 1, 1.0}, {1, 2, 0.5}});
    const L1Bounds a = l1_bounds(asym, 1.0);
    CHECK(!a.upper_delta.available);
    CHECK(a.upper_delta.errc == Errc::RequiresSymmetric);
    CHECK(!a.upper_sigma.available);

    const Csr zero{3, 3, std::vector<std::size_t>(4, 0), {}, {}};
    const L1Bounds z = l1_bounds(zero, 1.0);
    CHECK(z.upper_delta.require() == 0.0);
    CHECK(z.upper_sigma.require() == 0.0);
    CHECK(z.lower_exp_delta.require() == 0.0);
    CHECK(z.lower_graph.require() == 0.0);
    CHECK(z.lower_theta.require() == 0.0);
}

TEST_CASE("ghost ceiling and covariance surface match dense references") {
    const Csr c = csr_from_triples(
        3, 3, {{0, 1, 0.6}, {1, 0, 0.6}, {0, 2, 0.2}, {2, 0, 0.2}, {1, 2, 0.9}, {2, 1, 0.9}});
    CHECK(ghost_upper_bk(c, 0, 0.8) == doctest::Approx(2.8481164155394718).epsilon(1e-6));
    CHECK(cov_exp_bound(c, 0, 2, 0.8) == doctest::Approx(1.4281891384025027).epsilon(1e-6));

    const Csr asym = csr_from_triples(2, 2, {{0, 1, 1.0}});
    CHECK_THROWS_AS(ghost_upper_bk(asym, 0, 0.5), Error);
}

TEST_CASE("report set adapts to the system and the time") {
    const RateSystem pair_sys =
        build_sis(csr_from_triples(2, 2, {{0, 1, 0.5}, {1, 0, 0.5}}), {0.1, 0.1});
    const auto at1 = bound_reports(pair_sys, 1.0, 2);
    CHECK(has_name(at1, "collision_upper"));
    CHECK(has_name(at1, "linf_upper"));
    CHECK(has_name(at1, "linf_lower_general"));
    CHECK(has_name(at1, "concentration_upper"));
    CHECK(has_name(at1, "ghost_upper_bk"));
    CHECK(has_name(at1, "l1_upper_delta"));
    CHECK(has_name(at1, "l1_lower_theta"));

    const auto at2 = bound_reports(pair_sys, 2.0, 2);
    CHECK(!has_name(at2, "linf_lower_general")); // worst-case floor is a t=1 statement
    CHECK(!has_name(at2, "l1_lower_theta"));
    CHECK(has_name(at2, "l1_upper_delta"));

    // a higher-order system keeps only the order-agnostic bounds
    const RateSystem simp = build_simplicial_sis(3, {{{0, 1}, 2, 1.0}}, {});
    const auto hs = bound_reports(simp, 1.0, 3);
    CHECK(has_name(hs, "collision_upper"));
    CHECK(has_name(hs, "linf_upper"));
    CHECK(!has_name(hs, "concentration_upper"));
    CHECK(!has_name(hs, "l1_upper_delta"));

    // every report carries its inputs for auditability
    for (const auto& r : at1) {
        CHECK(!r.name.empty());
        CHECK(!r.inputs.empty());
    }
}

TEST_SUITE_END();
