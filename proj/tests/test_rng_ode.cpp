#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "hyperips/ode.hpp"
#include "hyperips/rng.hpp"

using namespace hyperips;

TEST_SUITE_BEGIN("rng_ode");

TEST_CASE("rng streams are deterministic and decorrelated") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // split children don't collide with the parent or each other
    Rng p(7);
    Rng c0 = p.split(0), c1 = p.split(1);
    CHECK(c0.next_u64() != c1.next_u64());
    CHECK(Rng::stream(7, 0).next_u64() == Rng(7).split(0).next_u64());

    // splitting does not advance the parent
    Rng q(9);
    uint64_t first = Rng(9).next_u64();
    (void)q.split(123);
    CHECK(q.next_u64() == first);
}

TEST_CASE("rng uniforms look uniform") {
    Rng r(1234);
    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        double x = r.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        sum += x;
        sum2 += x * x;
    }
    // mean 1/2 (se ~ 6.5e-4), second moment 1/3
    CHECK(std::abs(sum / n - 0.5) < 4e-3);
    CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 4e-3);
}

TEST_CASE("rng exponential has the right mean") {
    Rng r(99);
    const int n = 200000;
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += r.exponential(2.5);
    CHECK(std::abs(sum / n - 0.4) < 0.005);
}

TEST_CASE("uniform_int covers its range without bias") {
    Rng r(5);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) ++counts[r.uniform_int(7)];
    for (int c : counts) CHECK(std::abs(c - n / 7) < 5 * std::sqrt(n / 7.0));
}

TEST_CASE("ode: scalar exponential decay") {
    std::vector<double> y{1.0};
    ode_integrate([](double, const std::vector<double>& u, std::vector<double>& d) { d[0] = -2.0 * u[0]; },
                  y, 0.0, 1.5);
    CHECK(y[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-8));
}

TEST_CASE("ode: harmonic oscillator round trip") {
    std::vector<double> y{1.0, 0.0};
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-12;
    OdeStats st;
    ode_integrate([](double, const std::vector<double>& u, std::vector<double>& d) {
        d[0] = u[1];
        d[1] = -u[0];
    }, y, 0.0, 2.0 * M_PI, opt, &st);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(y[1]) < 1e-7);
    CHECK(st.accepted > 10);
}

TEST_CASE("ode: grid solve hits logistic closed form") {
    // z' = z(1-z), z(0)=0.3  ->  z(t) = 0.3 e^t / (0.7 + 0.3 e^t)
    std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
    auto sol = ode_solve_grid([](double, const std::vector<double>& u, std::vector<double>& d) {
        d[0] = u[0] * (1.0 - u[0]);
    }, {0.3}, 0.0, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double e = 0.3 * std::exp(grid[g]);
        CHECK(sol[g][0] == doctest::Approx(e / (0.7 + e)).epsilon(1e-8));
    }
}

TEST_CASE("ode: stiff-ish decay still meets tolerance") {
    std::vector<double> y{1.0};
    ode_integrate([](double, const std::vector<double>& u, std::vector<double>& d) { d[0] = -80.0 * u[0]; },
                  y, 0.0, 1.0);
    CHECK(y[0] == doctest::Approx(std::exp(-80.0)).epsilon(1e-4));
}

TEST_CASE("ode: monitor sees monotone time and can clamp") {
    std::vector<double> y{1.0};
    double last_t = 0.0;
    StepMonitor mon = [&](double t, std::vector<double>& u) {
        CHECK(t > last_t);
        last_t = t;
        if (u[0] < 0) u[0] = 0; // emulate the clamp hook
    };
    ode_integrate([](double, const std::vector<double>& u, std::vector<double>& d) { d[0] = -u[0]; },
                  y, 0.0, 1.0, {}, nullptr, mon);
    CHECK(last_t == doctest::Approx(1.0));
}

TEST_SUITE_END();
