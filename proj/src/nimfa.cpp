#include "hyperips/nimfa.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace hyperips {

void nimfa_rhs(const RateSystem& sys, const double* z, double* dz) {
    const std::size_t S = sys.states().size();
    std::memset(dz, 0, sizeof(double) * std::size_t(sys.n_vertices()) * S);
    const std::size_t nr = sys.n_rules();
    for (std::size_t r = 0; r < nr; ++r) {
        const uint32_t m = sys.order(r);
        const Vertex* b = sys.base(r);
        const StateIdx* bs = sys.base_states(r);
        double prod = sys.rate(r);
        for (uint32_t l = 0; l < m; ++l) prod *= z[std::size_t(b[l]) * S + bs[l]];
        if (prod == 0.0) continue;
        const std::size_t row = std::size_t(sys.target(r)) * S;
        const double flow = prod * z[row + sys.from_state(r)];
        dz[row + sys.to_state(r)] += flow;
        dz[row + sys.from_state(r)] -= flow;
    }
}

void nimfa_rhs_sis(const Csr& rt, const std::vector<double>& recovery, const double* z_i,
                   double* dz_i) {
    const std::size_t n = rt.rows;
    for (std::size_t i = 0; i < n; ++i) {
        double press = 0.0; // total infection pressure sum_j R_{ji} z_j
        for (std::size_t k = rt.off[i]; k < rt.off[i + 1]; ++k) press += rt.val[k] * z_i[rt.col[k]];
        dz_i[i] = (1.0 - z_i[i]) * press - (recovery.empty() ? 0.0 : recovery[i]) * z_i[i];
    }
}

NimfaResult integrate_nimfa(const RateSystem& sys, const InitialLaw& law,
                            const std::vector<double>& grid, const NimfaOptions& opt) {
    law.validate_against(sys);
    if (grid.empty()) fail(Errc::ParameterDomain, "empty time grid");
    if (grid.front() < 0) fail(Errc::ParameterDomain, "grid must start at t >= 0");

    const std::size_t S = sys.states().size();
    const std::size_t n = sys.n_vertices();

    NimfaResult res;
    res.grid = grid;
    OdeOptions oopt;
    oopt.rtol = opt.rtol;
    oopt.atol = opt.atol;

    StepMonitor monitor = [&](double t, std::vector<double>& y) {
        for (std::size_t i = 0; i < n; ++i) {
            double* row = y.data() + i * S;
            double sum = 0.0;
            for (std::size_t s = 0; s < S; ++s) sum += row[s];
            const double drift = std::abs(sum - 1.0);
            res.max_simplex_drift = std::max(res.max_simplex_drift, drift);
            if (drift > opt.simplex_tol)
                fail(Errc::SimplexViolation, "row sum drifted by " + std::to_string(drift) +
                                                 " at t=" + std::to_string(t));
            bool clamped = false;
            for (std::size_t s = 0; s < S; ++s) {
                if (row[s] < 0.0) {
                    if (row[s] < -opt.neg_clamp)
                        fail(Errc::SimplexViolation,
                             "marginal went negative (" + std::to_string(row[s]) + ") at t=" +
                                 std::to_string(t));
                    res.max_renormalization = std::max(res.max_renormalization, -row[s]);
                    row[s] = 0.0;
                    clamped = true;
                }
            }
            if (clamped) {
                double s2 = 0.0;
                for (std::size_t s = 0; s < S; ++s) s2 += row[s];
                if (s2 > 0)
                    for (std::size_t s = 0; s < S; ++s) row[s] /= s2;
            }
        }
    };

    auto rhs = [&sys](double, const std::vector<double>& y, std::vector<double>& d) {
        d.resize(y.size());
        nimfa_rhs(sys, y.data(), d.data());
    };

    res.z = ode_solve_grid(rhs, law.flat(), 0.0, grid, oopt, &res.stats, monitor);
    return res;
}

} // namespace hyperips
