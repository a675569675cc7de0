#include "hyperips/initial_law.hpp"

#include <cmath>

namespace hyperips {

InitialLaw::InitialLaw(Vertex n, std::size_t n_states) : n_(n), s_(n_states) {
    if (n == 0 || n_states == 0) fail(Errc::ParameterDomain, "initial law needs n >= 1, states >= 1");
    p_.assign(std::size_t(n) * n_states, 0.0);
    for (Vertex i = 0; i < n; ++i) p_[std::size_t(i) * s_] = 1.0;
}

InitialLaw InitialLaw::point(Vertex n, std::size_t n_states, StateIdx s) {
    InitialLaw law(n, n_states);
    if (s >= n_states) fail(Errc::StateNotInSpace, "point law state out of range");
    for (Vertex i = 0; i < n; ++i) {
        law.p_[std::size_t(i) * n_states] = 0.0;
        law.p_[std::size_t(i) * n_states + s] = 1.0;
    }
    return law;
}

InitialLaw InitialLaw::iid(Vertex n, std::vector<double> probs) {
    InitialLaw law(n, probs.size());
    for (Vertex i = 0; i < n; ++i) law.set_vertex(i, probs);
    return law;
}

void InitialLaw::set_vertex(Vertex i, const std::vector<double>& probs) {
    if (i >= n_) fail(Errc::ParameterDomain, "vertex out of range");
    if (probs.size() != s_) fail(Errc::ParameterDomain, "probability row has wrong length");
    double sum = 0.0;
    for (double p : probs) {
        if (std::isnan(p) || p < 0.0) fail(Errc::ParameterDomain, "probabilities must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) fail(Errc::ParameterDomain, "probability row must sum to 1");
    for (std::size_t s = 0; s < s_; ++s) p_[std::size_t(i) * s_ + s] = probs[s];
}

StateIdx InitialLaw::sample_vertex(Vertex i, Rng& rng) const {
    double u = rng.next_double();
    const double* row = p_.data() + std::size_t(i) * s_;
    for (std::size_t s = 0; s + 1 < s_; ++s) {
        if (u < row[s]) return StateIdx(s);
        u -= row[s];
    }
    return StateIdx(s_ - 1);
}

std::vector<StateIdx> InitialLaw::sample(Rng& rng) const {
    std::vector<StateIdx> cfg(n_);
    for (Vertex i = 0; i < n_; ++i) cfg[i] = sample_vertex(i, rng);
    return cfg;
}

void InitialLaw::validate_against(const RateSystem& sys) const {
    if (n_ != sys.n_vertices() || s_ != sys.states().size())
        fail(Errc::ParameterDomain, "initial law does not match the system's dimensions");
}

} // namespace hyperips
