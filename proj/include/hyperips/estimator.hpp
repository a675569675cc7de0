#ifndef HYPERIPS_ESTIMATOR_HPP
#define HYPERIPS_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperips/errors.hpp"

namespace hyperips {

// Monte-Carlo scalar with its uncertainty; std_error is sd/sqrt(replicas)
// (binomial where the underlying value is an indicator frequency).
struct EstimatorReport {
    double value = 0.0;
    double std_error = 0.0;
    uint64_t replicas = 0;
    uint64_t seed = 0;
};

inline EstimatorReport frequency_report(uint64_t hits, uint64_t replicas, uint64_t seed) {
    if (replicas < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");
    const double p = double(hits) / double(replicas);
    return {p, std::sqrt(p * (1.0 - p) / double(replicas)), replicas, seed};
}

inline EstimatorReport mean_report(const std::vector<double>& xs, uint64_t seed) {
    if (xs.size() < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");
    const double n = double(xs.size());
    double s = 0.0;
    for (double x : xs) s += x;
    const double mean = s / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n), uint64_t(xs.size()), seed};
}

// Unbiased sample variance together with its jackknife standard error.
struct VarianceReport {
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0; // jackknife SE of the variance estimate
    uint64_t replicas = 0;
    uint64_t seed = 0;
};

inline VarianceReport variance_report(const std::vector<double>& xs, uint64_t seed) {
    const std::size_t n = xs.size();
    if (n < 3) fail(Errc::ParameterDomain, "variance estimation needs at least 3 replicas");
    double s1 = 0.0, s2 = 0.0;
    for (double x : xs) {
        s1 += x;
        s2 += x * x;
    }
    const double mean = s1 / double(n);
    // the power-sum form can dip a few ulp below zero under cancellation
    const double var = std::max(0.0, (s2 - double(n) * mean * mean) / double(n - 1));

    // leave-one-out variances in O(n) from the two power sums
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m1 = (s1 - xs[i]) / double(n - 1);
        const double v =
            std::max(0.0, (s2 - xs[i] * xs[i] - double(n - 1) * m1 * m1) / double(n - 2));
        loo[i] = v;
        loo_mean += v;
    }
    loo_mean /= double(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    const double se = std::sqrt(ss * double(n - 1) / double(n));

    return {mean, var, se, uint64_t(n), seed};
}

} // namespace hyperips

#endif
