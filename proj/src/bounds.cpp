#include "hyperips/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace hyperips {

double concentration_upper(double norm2_r, double t, std::size_t m_size) {
    if (norm2_r < 0 || t < 0) fail(Errc::ParameterDomain, "norm and time must be >= 0");
    if (m_size == 0) fail(Errc::EmptySubset, "subset must be nonempty");
    return std::exp(2.0 * norm2_r * t) / double(m_size);
}

double collision_upper(double delta_max, uint32_t max_order, double r_tilde_max, double t) {
    if (delta_max < 0 || r_tilde_max < 0 || t < 0)
        fail(Errc::ParameterDomain, "rates and time must be >= 0");
    const double g = std::exp(delta_max * double(max_order) * t);
    return t * g * (1.0 + g) * r_tilde_max;
}

double linf_upper(double delta_max, uint32_t max_order, double r_tilde_max, double t) {
    if (delta_max < 0 || r_tilde_max < 0 || t < 0)
        fail(Errc::ParameterDomain, "rates and time must be >= 0");
    const double m = double(max_order);
    return 2.0 * m * t * std::exp(2.0 * m * delta_max * t) * r_tilde_max;
}

double linf_lower_general(double r_tilde_max) {
    if (r_tilde_max < 0) fail(Errc::ParameterDomain, "influence must be >= 0");
    const double g = 1.0 - std::exp(-0.5 * r_tilde_max);
    return 0.5 * g * g;
}

namespace {

bool near_one(double x) { return std::abs(x - 1.0) < 1e-9; }

} // namespace

L1Bounds l1_bounds(const Csr& r, double t) {
    if (r.rows != r.cols) fail(Errc::ParameterDomain, "rate matrix must be square");
    if (r.rows == 0) fail(Errc::EmptyGraph, "rate matrix must be nonempty");
    if (t < 0) fail(Errc::ParameterDomain, "time must be >= 0");

    L1Bounds out;
    const std::size_t n = r.rows;
    double maxabs = 0.0;
    for (double v : r.val) maxabs = std::max(maxabs, std::abs(v));

    if (maxabs == 0.0) { // no interactions: every bound degenerates to zero
        for (L1Field* f : {&out.upper_delta, &out.upper_sigma, &out.lower_exp_delta,
                           &out.lower_graph, &out.lower_theta})
            f->available = true;
        return out;
    }

    const std::vector<double> delta = r.col_sums(); // total rate targeting each vertex
    out.delta_max = *std::max_element(delta.begin(), delta.end());
    out.norm2 = spectral_norm(r).value; // recomputed, never trusted from the caller
    out.theta = frobenius_theta(r);
    const DiagR2Stats d2 = diag_r2_stats(r);
    const bool symmetric = r.is_symmetric(1e-12);
    const bool at_one = std::abs(t - 1.0) < 1e-12;

    if (symmetric) {
        out.upper_delta.available = true;
        out.upper_delta.value = 4.0 * t * t * std::exp(3.0 * out.delta_max * t) * d2.mean;
        out.upper_sigma.available = true;
        out.upper_sigma.value = 4.0 * t * t * std::exp(3.0 * out.norm2 * t) * d2.rms;
    } else {
        for (L1Field* f : {&out.upper_delta, &out.upper_sigma}) {
            f->errc = Errc::RequiresSymmetric;
            f->reason = "upper bounds need a symmetric rate matrix";
        }
    }

    if (!at_one) {
        for (L1Field* f : {&out.lower_exp_delta, &out.lower_graph, &out.lower_theta}) {
            f->errc = Errc::ParameterDomain;
            f->reason = "lower bounds are stated at t = 1 only";
        }
    } else {
        double s = 0.0;
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t k = r.off[row]; k < r.off[row + 1]; ++k)
                s += std::exp(-(delta[r.col[k]] + delta[row])) * r.val[k] * r.val[k];
        out.lower_exp_delta.available = true;
        out.lower_exp_delta.value = s / (16.0 * double(n));

        // unweighted normalization: symmetric, one common entry value c with
        // c = 1/dbar for the mean degree dbar = (stored edges)/n
        std::size_t nnz = 0;
        bool uniform = true;
        for (double v : r.val) {
            if (v == 0.0) continue;
            ++nnz;
            if (std::abs(v - maxabs) > 1e-9 * maxabs) uniform = false;
        }
        out.dbar = double(nnz) / double(n);
        if (symmetric && uniform && near_one(maxabs * out.dbar)) {
            out.lower_graph.available = true;
            out.lower_graph.value = std::exp(-8.0 * out.norm2 * out.norm2) / (32.0 * out.dbar);
        } else {
            out.lower_graph.errc = symmetric ? Errc::RequiresUnweighted : Errc::RequiresSymmetric;
            out.lower_graph.reason = "needs an unweighted graph scaled by its mean degree";
        }

        out.lower_theta.available = true;
        out.lower_theta.value =
            std::exp(-8.0 * out.norm2 * out.norm2 * out.norm2 / out.theta) * out.theta / 32.0;
    }
    return out;
}

double ghost_upper_bk(const Csr& r, Vertex root, double t, double tol) {
    if (r.rows != r.cols) fail(Errc::ParameterDomain, "rate matrix must be square");
    if (root >= r.rows) fail(Errc::ParameterDomain, "root out of range");
    if (t < 0) fail(Errc::ParameterDomain, "time must be >= 0");
    if (!r.is_symmetric(1e-12))
        fail(Errc::RequiresSymmetric, "ghost bound needs a symmetric rate matrix");

    const std::size_t n = r.rows;
    std::vector<double> e(n, 0.0);
    e[root] = 1.0;
    const std::vector<double> row = expm_action(r, e, t, tol); // symmetric: row = column
    double sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<double> em(n, 0.0);
        em[m] = 1.0;
        const double d2 = expm_action(r, em, 2.0 * t, tol)[m];
        sum += row[m] * (d2 - 1.0);
    }
    return std::max(0.0, sum);
}

double cov_exp_bound(const Csr& r, Vertex i, Vertex j, double t, double tol) {
    if (r.rows != r.cols) fail(Errc::ParameterDomain, "rate matrix must be square");
    if (i >= r.rows || j >= r.rows) fail(Errc::ParameterDomain, "vertex out of range");
    if (t < 0) fail(Errc::ParameterDomain, "time must be >= 0");
    const std::size_t n = r.rows;
    std::vector<double> ei(n, 0.0), ej(n, 0.0);
    ei[i] = 1.0;
    ej[j] = 1.0;
    const std::vector<double> u = expm_action(r, ei, t, tol);
    const std::vector<double> v = expm_action(r, ej, t, tol);
    double dot = 0.0;
    for (std::size_t k = 0; k < n; ++k) dot += u[k] * v[k];
    return dot;
}

std::vector<BoundReport> bound_reports(const RateSystem& sys, double t, std::size_t m_size,
                                       Vertex root) {
    const double dmax = sys.delta_max();
    const double rtil = sys.influence_max();
    const uint32_t m = std::max(1u, sys.max_order());
    std::vector<BoundReport> out;

    out.push_back({"collision_upper",
                   collision_upper(dmax, m, rtil, t),
                   {{"delta_max", dmax}, {"M", double(m)}, {"r_tilde_max", rtil}, {"t", t}}});
    out.push_back({"linf_upper",
                   linf_upper(dmax, m, rtil, t),
                   {{"delta_max", dmax}, {"M", double(m)}, {"r_tilde_max", rtil}, {"t", t}}});
    if (std::abs(t - 1.0) < 1e-12)
        out.push_back(
            {"linf_lower_general", linf_lower_general(rtil), {{"r_tilde_max", rtil}, {"t", t}}});

    if (sys.max_order() <= 1) {
        const Csr r = pair_rate_matrix(sys);
        const L1Bounds l1 = l1_bounds(r, t);
        out.push_back({"concentration_upper",
                       concentration_upper(l1.norm2, t, m_size),
                       {{"norm2", l1.norm2}, {"t", t}, {"subset_size", double(m_size)}}});
        const std::pair<const char*, const L1Field*> fields[] = {
            {"l1_upper_delta", &l1.upper_delta},     {"l1_upper_sigma", &l1.upper_sigma},
            {"l1_lower_exp_delta", &l1.lower_exp_delta}, {"l1_lower_graph", &l1.lower_graph},
            {"l1_lower_theta", &l1.lower_theta}};
        for (const auto& [name, f] : fields)
            if (f->available)
                out.push_back({name,
                               f->value,
                               {{"norm2", l1.norm2},
                                {"delta_max", l1.delta_max},
                                {"theta", l1.theta},
                                {"dbar", l1.dbar},
                                {"t", t}}});
        if (r.is_symmetric(1e-12))
            out.push_back({"ghost_upper_bk",
                           ghost_upper_bk(r, root, t),
                           {{"root", double(root)}, {"t", t}}});
    }
    return out;
}

} // namespace hyperips
