#include <doctest.h>

#include <cmath>
#include <vector>

#include "hyperips/errors.hpp"
#include "hyperips/generators.hpp"
#include "hyperips/models.hpp"
#include "hyperips/nimfa.hpp"
#include "hyperips/rng.hpp"

using namespace hyperips;

namespace {

Csr path3(double c) {
    return csr_from_triples(3, 3, {{0, 1, c}, {1, 0, c}, {1, 2, c}, {2, 1, c}});
}

Csr pair2(double c) { return csr_from_triples(2, 2, {{0, 1, c}, {1, 0, c}}); }

} // namespace

TEST_SUITE_BEGIN("nimfa");

TEST_CASE("pure transmission pair: mean field is exact and matches e^{-ct}") {
    // vertex 0 starts infected and never recovers, so vertex 1 is infected
    // at constant hazard c and the mean-field equation has no closure error
    const double c = 0.8, t = 0.7;
    const RateSystem sys = build_sis(pair2(c));
    const InitialLaw law = [&] {
        InitialLaw l = InitialLaw::point(2, 2, 0);
        l.set_vertex(0, {0.0, 1.0});
        return l;
    }();
    const NimfaResult res = integrate_nimfa(sys, law, {0.0, t});
    CHECK(res.value(0, 0, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.value(1, 0, 1, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.value(1, 1, 1, 2) == doctest::Approx(1.0 - std::exp(-c * t)).epsilon(1e-8));
}

TEST_CASE("two-vertex recoverable pair matches an independent integration") {
    // beta 0.7 both ways, recovery 0.3, vertex 0 infected; reference values
    // from a separate high-accuracy solve of the same equations
    const RateSystem sys = build_sis(pair2(0.7), {0.3, 0.3});
    InitialLaw law = InitialLaw::point(2, 2, 0);
    law.set_vertex(0, {0.0, 1.0});
    const NimfaResult res = integrate_nimfa(sys, law, {0.8});
    CHECK(res.value(0, 0, 1, 2) == doctest::Approx(0.80114745059514325).epsilon(1e-7));
    CHECK(res.value(0, 1, 1, 2) == doctest::Approx(0.35181848647786845).epsilon(1e-7));
}

TEST_CASE("path of three matches an independent integration") {
    const RateSystem sys = build_sis(path3(0.6), {0.25, 0.25, 0.25});
    const InitialLaw law = InitialLaw::iid(3, {0.6, 0.4});
    const NimfaResult res = integrate_nimfa(sys, law, {0.0, 1.0});
    const double want[3] = {0.45751259934711624, 0.54624145222077369, 0.45751259934711624};
    for (Vertex i = 0; i < 3; ++i) {
        CHECK(res.value(0, i, 1, 2) == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(res.value(1, i, 1, 2) == doctest::Approx(want[i]).epsilon(1e-7));
    }
}

TEST_CASE("mixed-order system matches an independent integration") {
    const RateSystem sys =
        build_simplicial_sis(3, {{{0}, 1, 0.5}, {{0, 1}, 2, 1.3}}, {0.2, 0.2, 0.2});
    const NimfaResult res = integrate_nimfa(sys, InitialLaw::iid(3, {0.5, 0.5}), {0.7});
    const double want[3] = {0.43467911769940393, 0.50982032450655723, 0.5312440358566386};
    for (Vertex i = 0; i < 3; ++i)
        CHECK(res.value(0, i, 1, 2) == doctest::Approx(want[i]).epsilon(1e-7));
}

TEST_CASE("triangle flip decay follows (1 + 2t)^{-1/2} per agent") {
    // every agent sits in n-2 triangles firing at 1/(n-2) each, so the
    // all-on mean-field marginal solves w' = -w^3
    const FlipModel m = build_triangle_flip(6);
    const InitialLaw law = InitialLaw::point(m.system.n_vertices(), 2, 1);
    const NimfaResult res = integrate_nimfa(m.system, law, {0.0, 0.4, 1.0});
    for (Vertex a = 0; a < m.system.n_vertices(); ++a) {
        CHECK(res.value(1, a, 1, 2) == doctest::Approx(1.0 / std::sqrt(1.8)).epsilon(1e-7));
        CHECK(res.value(2, a, 1, 2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
    }
}

TEST_CASE("generic and pair-specialized right-hand sides agree") {
    const Csr r = path3(0.6);
    const std::vector<double> recovery = {0.25, 0.25, 0.25};
    const RateSystem sys = build_sis(r, recovery);
    const Csr rt = r.transpose();

    Rng rng(91);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> zi(3), z(6), dz(6), dzi(3);
        for (int i = 0; i < 3; ++i) {
            zi[i] = rng.next_double();
            z[2 * i] = 1.0 - zi[i];
            z[2 * i + 1] = zi[i];
        }
        nimfa_rhs(sys, z.data(), dz.data());
        nimfa_rhs_sis(rt, recovery, zi.data(), dzi.data());
        for (int i = 0; i < 3; ++i) {
            CHECK(dzi[i] == doctest::Approx(dz[2 * i + 1]).epsilon(1e-12));
            CHECK(dz[2 * i] == doctest::Approx(-dz[2 * i + 1]).epsilon(1e-12));
        }
    }
}

TEST_CASE("rows stay on the probability simplex") {
    const RateSystem sys = build_sais(path3(0.9), path3(0.9), 1.2, 0.3, 0.8, {0.4, 0.4, 0.4},
                                      [](const std::string&) {});
    const NimfaResult res = integrate_nimfa(sys, InitialLaw::iid(3, {0.5, 0.2, 0.3}),
                                            {0.0, 0.5, 1.0, 2.0, 4.0});
    CHECK(res.max_simplex_drift <= 1e-8);
    for (const auto& row : res.z) {
        for (double v : row) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0 + 1e-12);
        }
        for (std::size_t i = 0; i + 2 < row.size(); i += 3)
            CHECK(row[i] + row[i + 1] + row[i + 2] == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(res.grid == std::vector<double>{0.0, 0.5, 1.0, 2.0, 4.0});
    CHECK(res.stats.accepted > 0);
}

TEST_CASE("grid validation") {
    const RateSystem sys = build_sis(pair2(0.5));
    const InitialLaw law = InitialLaw::iid(2, {0.5, 0.5});
    CHECK_THROWS_AS(integrate_nimfa(sys, law, {}), Error);
    CHECK_THROWS_AS(integrate_nimfa(sys, law, {1.0, 0.5}), Error);
    CHECK_THROWS_AS(integrate_nimfa(sys, law, {-1.0, 0.5}), Error);
}

TEST_SUITE_END();
