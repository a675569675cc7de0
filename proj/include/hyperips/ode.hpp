#ifndef HYPERIPS_ODE_HPP
#define HYPERIPS_ODE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "hyperips/errors.hpp"

namespace hyperips {

struct OdeOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h_init = 0.0;       // 0 -> pick automatically
    double h_min_factor = 1e-14; // underflow guard relative to span
    std::size_t max_steps = 10'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

// Called after every accepted step with (t, y); may adjust y in place
// (e.g. clamp tiny negatives).  Return value ignored.
using StepMonitor = std::function<void(double, std::vector<double>&)>;

namespace detail {

// Dormand-Prince 5(4) coefficients
inline constexpr double DP_C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double DP_A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights (same as A[6]); error weights = b5 - b4
inline constexpr double DP_E[7] = {71.0 / 57600,    0.0,        -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

} // namespace detail

// Integrates y' = f(t, y, dy) from t0 to t1 in place.  f must write the
// derivative into dy.  Throws Error(StepUnderflow) when the controller
// cannot make progress and Error(TooLarge) when max_steps is exceeded.
template <class Rhs>
void ode_integrate(Rhs&& f, std::vector<double>& y, double t0, double t1,
                   const OdeOptions& opt = {}, OdeStats* stats = nullptr,
                   const StepMonitor& monitor = {}) {
    const std::size_t n = y.size();
    if (t1 == t0 || n == 0) return;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    std::vector<double> k[7];
    for (auto& v : k) v.assign(n, 0.0);
    std::vector<double> ytmp(n), ynew(n);

    double t = t0;
    double h = opt.h_init > 0 ? opt.h_init : span / 100.0;
    h = std::min(h, span);

    OdeStats local;
    OdeStats& st = stats ? *stats : local;

    while (dir * (t1 - t) > 0) {
        if (st.accepted + st.rejected >= opt.max_steps)
            fail(Errc::TooLarge, "ode_integrate: step budget exhausted");
        h = std::min(h, std::abs(t1 - t));
        if (h < opt.h_min_factor * std::max(1.0, std::abs(t)))
            fail(Errc::StepUnderflow, "ode_integrate: step size underflow at t=" + std::to_string(t));
        const double hs = dir * h;

        f(t, y, k[0]);
        for (int s = 1; s < 7; ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += detail::DP_A[s][j] * k[j][i];
                ytmp[i] = y[i] + hs * acc;
            }
            f(t + detail::DP_C[s] * hs, ytmp, k[s]);
        }
        st.rhs_evals += 7;
        // stage 7 was evaluated at the 5th-order solution (A[6] row == b)
        ynew = ytmp;

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = 0.0;
            for (int s = 0; s < 7; ++s) e += detail::DP_E[s] * k[s][i];
            e *= hs;
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = e / sc;
            err += q * q;
        }
        err = std::sqrt(err / double(n));

        if (err <= 1.0) {
            t += hs;
            y.swap(ynew);
            ++st.accepted;
            if (monitor) monitor(t, y);
            const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            ++st.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
}

// Convenience wrapper: returns y evaluated at every point of an increasing
// grid (grid[0] may equal t0).  y0 is the state at t0.
template <class Rhs>
std::vector<std::vector<double>> ode_solve_grid(Rhs&& f, std::vector<double> y0, double t0,
                                                const std::vector<double>& grid,
                                                const OdeOptions& opt = {}, OdeStats* stats = nullptr,
                                                const StepMonitor& monitor = {}) {
    std::vector<std::vector<double>> out;
    out.reserve(grid.size());
    double t = t0;
    for (double tg : grid) {
        if (tg < t) fail(Errc::ParameterDomain, "ode_solve_grid: grid must be non-decreasing from t0");
        if (tg > t) {
            ode_integrate(f, y0, t, tg, opt, stats, monitor);
            t = tg;
        }
        out.push_back(y0);
    }
    return out;
}

} // namespace hyperips

#endif
