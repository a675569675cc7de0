#ifndef HYPERIPS_INITIAL_LAW_HPP
#define HYPERIPS_INITIAL_LAW_HPP

#include <vector>

#include "hyperips/rate_system.hpp"
#include "hyperips/rng.hpp"

namespace hyperips {

// Product law over vertices: each vertex draws its initial state
// independently from its own categorical distribution.
class InitialLaw {
  public:
    InitialLaw() = default;
    InitialLaw(Vertex n, std::size_t n_states); // all mass on state 0

    static InitialLaw point(Vertex n, std::size_t n_states, StateIdx s);
    static InitialLaw iid(Vertex n, std::vector<double> probs);

    Vertex n_vertices() const { return n_; }
    std::size_t n_states() const { return s_; }

    void set_vertex(Vertex i, const std::vector<double>& probs); // validates the row
    double prob(Vertex i, StateIdx s) const { return p_[std::size_t(i) * s_ + s]; }
    const std::vector<double>& flat() const { return p_; } // n x S row-major; NIMFA z(0)

    std::vector<StateIdx> sample(Rng& rng) const;
    StateIdx sample_vertex(Vertex i, Rng& rng) const;

    void validate_against(const RateSystem& sys) const; // dimension check

  private:
    Vertex n_ = 0;
    std::size_t s_ = 0;
    std::vector<double> p_;
};

} // namespace hyperips

#endif
