#ifndef HYPERIPS_MASTER_EQUATION_HPP
#define HYPERIPS_MASTER_EQUATION_HPP

#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/initial_law.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

// Exact distribution-level description of a small system.  Configurations
// are encoded mixed-radix with vertex 0 as the least significant digit; the
// generator Q has one row per source configuration (so p' = p Q).
struct MasterEquation {
    std::size_t n_states = 0;
    Vertex n_vertices = 0;
    std::size_t n_configs = 0;
    Csr q;

    std::size_t encode(const StateIdx* cfg) const;
    void decode(std::size_t idx, StateIdx* cfg) const;
};

// Throws StateSpaceTooLarge when |S|^n exceeds config_cap (default 2^20).
MasterEquation build_generator(const RateSystem& sys, std::size_t config_cap = std::size_t(1) << 20);

// Product-law vector over configurations.
std::vector<double> initial_distribution(const MasterEquation& me, const InitialLaw& law);

// Distribution rows p(t) on a non-decreasing grid starting from p0 at t=0.
std::vector<std::vector<double>> evolve_distribution(const MasterEquation& me,
                                                     std::vector<double> p0,
                                                     const std::vector<double>& grid,
                                                     double tol = 1e-10);

struct OracleMarginals {
    std::vector<double> grid;
    std::size_t n_states = 0;
    std::vector<std::vector<double>> y; // n*S row-major per grid point

    double value(std::size_t g, Vertex i, StateIdx s) const {
        return y[g][std::size_t(i) * n_states + s];
    }
};

OracleMarginals exact_marginals(const RateSystem& sys, const InitialLaw& law,
                                const std::vector<double>& grid, double tol = 1e-10,
                                std::size_t config_cap = std::size_t(1) << 20);

// P(sigma_i(t)=s, sigma_j(t)=s2) and the centered covariance of the two
// indicator variables.
double exact_pair_prob(const RateSystem& sys, const InitialLaw& law, Vertex i, StateIdx s,
                       Vertex j, StateIdx s2, double t, double tol = 1e-10);
double exact_covariance(const RateSystem& sys, const InitialLaw& law, Vertex i, StateIdx s,
                        Vertex j, StateIdx s2, double t, double tol = 1e-10);

} // namespace hyperips

#endif
