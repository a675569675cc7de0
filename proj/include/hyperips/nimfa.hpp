#ifndef HYPERIPS_NIMFA_HPP
#define HYPERIPS_NIMFA_HPP

#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/initial_law.hpp"
#include "hyperips/ode.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

struct NimfaOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    // negative entries smaller than this are clamped to zero (with row
    // renormalization); anything larger aborts with SimplexViolation
    double neg_clamp = 1e-9;
    // row-sum drift beyond this aborts with SimplexViolation
    double simplex_tol = 1e-6;
};

struct NimfaResult {
    std::vector<double> grid;
    std::vector<std::vector<double>> z; // one n*S row-major block per grid point
    double max_simplex_drift = 0.0;     // max |row sum - 1| seen before renormalization
    double max_renormalization = 0.0;   // largest clamped magnitude
    OdeStats stats;

    double value(std::size_t g, Vertex i, StateIdx s, std::size_t n_states) const {
        return z[g][std::size_t(i) * n_states + s];
    }
};

// Mean-field drift of the full system: for every rule, probability mass
// flows from the target's from-state to its to-state at the label rate times
// the product of the base marginals.  dz must hold n*S doubles; it is
// overwritten.
void nimfa_rhs(const RateSystem& sys, const double* z, double* dz);

// Order-1 {S,I} specialization, tracking only the I-marginal.  rt is the
// transpose of the pair rate matrix (rows = target), recovery may be empty.
void nimfa_rhs_sis(const Csr& rt, const std::vector<double>& recovery, const double* z_i,
                   double* dz_i);

// Integrates the mean-field system from law's marginals over the given
// non-decreasing grid (grid[0] >= 0; t = 0 rows are the initial marginals).
NimfaResult integrate_nimfa(const RateSystem& sys, const InitialLaw& law,
                            const std::vector<double>& grid, const NimfaOptions& opt = {});

} // namespace hyperips

#endif
