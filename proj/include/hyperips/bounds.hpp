#ifndef HYPERIPS_BOUNDS_HPP
#define HYPERIPS_BOUNDS_HPP

#include <string>
#include <utility>
#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

// One evaluated bound with the derived quantities it consumed, so a report
// can be audited without rerunning anything.
struct BoundReport {
    std::string name;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> inputs;
};

// Var(xi_bar) <= e^{2 ||R||_2 t} / |M|   for pair systems
double concentration_upper(double norm2_r, double t, std::size_t m_size);

// P(H_i(t) meets H_j(t)) <= t e^{d M t} (1 + e^{d M t}) r~,  d = delta_max
double collision_upper(double delta_max, uint32_t max_order, double r_tilde_max, double t);

// max_{i,s} |y - z|(t) <= 2 M t e^{2 M d t} r~
double linf_upper(double delta_max, uint32_t max_order, double r_tilde_max, double t);

// worst-case floor at t = 1:  (1/2) (1 - e^{-r~/2})^2; the companion
// counterexample model attains it exactly
double linf_lower_general(double r_tilde_max);

// mean l1 mean-field error bounds for a pair rate matrix; fields that do
// not apply to the given matrix or time are flagged off with a reason
// instead of being extrapolated
struct L1Field {
    bool available = false;
    double value = 0.0;
    Errc errc = Errc::ParameterDomain; // thrown by require() when unavailable
    std::string reason;

    double require() const {
        if (!available) fail(errc, reason);
        return value;
    }
};

struct L1Bounds {
    L1Field upper_delta;     // 4 t^2 e^{3 d t} (1/N) sum (R^2)_mm     [symmetric]
    L1Field upper_sigma;     // 4 t^2 e^{3 ||R||_2 t} rms((R^2)_mm)    [symmetric]
    L1Field lower_exp_delta; // (1/16)(1/N) sum e^{-(d_i+d_j)} R_ji^2  [t = 1]
    L1Field lower_graph;     // (1/32) e^{-8 ||R||_2^2} / dbar         [t = 1, R = A/dbar]
    L1Field lower_theta;     // (1/32) e^{-8 ||R||_2^3 / th} th        [t = 1]
    // echoes of the derived quantities
    double norm2 = 0.0, delta_max = 0.0, theta = 0.0, dbar = 0.0;
};

L1Bounds l1_bounds(const Csr& r, double t);

// P(ghost at the root by t) <= sum_m (e^{Rt})_{root,m} ((e^{2Rt})_{mm} - 1)
// for a symmetric pair matrix; matrix exponentials act column by column.
double ghost_upper_bk(const Csr& r, Vertex root, double t, double tol = 1e-10);

// |Cov(xi_i, xi_j)| control surface (e^{R^T t} e^{Rt})_{ij}; auxiliary.
double cov_exp_bound(const Csr& r, Vertex i, Vertex j, double t, double tol = 1e-10);

// All bounds that apply to the system at time t, for the CLI table / JSON.
// Pair-matrix bounds are skipped for higher-order systems; the ghost bound
// additionally needs symmetry.
std::vector<BoundReport> bound_reports(const RateSystem& sys, double t, std::size_t m_size,
                                       Vertex root = 0);

} // namespace hyperips

#endif
