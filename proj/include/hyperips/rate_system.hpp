#ifndef HYPERIPS_RATE_SYSTEM_HPP
#define HYPERIPS_RATE_SYSTEM_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperips/csr.hpp"
#include "hyperips/errors.hpp"

namespace hyperips {

using Vertex = uint32_t;
using StateIdx = uint8_t;

class StateSpace {
  public:
    StateSpace() = default;
    explicit StateSpace(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(StateIdx s) const { return names_[s]; }
    const std::vector<std::string>& names() const { return names_; }
    StateIdx index(const std::string& name) const; // throws StateNotInSpace
    bool contains(const std::string& name) const { return lookup_.count(name) > 0; }
    bool operator==(const StateSpace& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, StateIdx> lookup_;
};

// One transition label: the ordered (strictly increasing) base tuple, its
// required states, and the target's state change.  Order m = base.size();
// m = 0 means a spontaneous (self) transition of the target.
struct InteractionRule {
    std::vector<Vertex> base;
    std::vector<StateIdx> base_states;
    Vertex target = 0;
    StateIdx from_state = 0;
    StateIdx to_state = 0;
    double rate = 0.0;
};

// Immutable rule collection with flat storage and the derived quantities the
// solvers and bound evaluators need.  Construction validates every rule and
// rejects duplicates; zero-rate rules are validated, then dropped.
class RateSystem {
  public:
    RateSystem() = default;

    const StateSpace& states() const { return states_; }
    Vertex n_vertices() const { return n_; }
    std::size_t n_rules() const { return rate_.size(); }
    uint32_t max_order() const { return max_order_; } // over m >= 1 rules; 0 if none

    // per-rule accessors (r < n_rules())
    uint32_t order(std::size_t r) const { return base_off_[r + 1] - base_off_[r]; }
    const Vertex* base(std::size_t r) const { return base_v_.data() + base_off_[r]; }
    const StateIdx* base_states(std::size_t r) const { return base_s_.data() + base_off_[r]; }
    Vertex target(std::size_t r) const { return target_[r]; }
    StateIdx from_state(std::size_t r) const { return from_[r]; }
    StateIdx to_state(std::size_t r) const { return to_[r]; }
    double rate(std::size_t r) const { return rate_[r]; }

    // rule ids grouped by target / by base membership
    const std::vector<uint32_t>& rules_of_target(Vertex i) const { return by_target_[i]; }
    const std::vector<uint32_t>& rules_with_member(Vertex j) const { return by_member_[j]; }

    // total label rate pointed at i (all orders incl. m=0) and restricted to m>=1
    double target_rate(Vertex i) const { return target_rate_[i]; }
    double target_rate_interacting(Vertex i) const { return target_rate_m1_[i]; }
    double total_rate() const { return total_rate_; }

    // delta^(m)_i = total tuple rate of order-m rules aimed at i (m >= 1)
    double delta(uint32_t m, Vertex i) const { return delta_by_order_.at(m - 1)[i]; }
    double delta_max() const { return delta_max_; }

    // influence r~_{ji}: total rate of labels whose base contains j and whose
    // target is i.  Sparse rows indexed by influencer j; built lazily.
    const Csr& influence_matrix() const;
    double influence_max() const; // r~_max = max_{j,i} r~_{ji}
    // argmax pair (j, i); ties broken by smallest j then i
    std::pair<Vertex, Vertex> influence_argmax() const;

    friend RateSystem build_rate_system(StateSpace states, Vertex n_vertices,
                                        const std::vector<InteractionRule>& rules);
    friend class RateSystemBuilder;

  private:
    void finalize();

    StateSpace states_;
    Vertex n_ = 0;
    uint32_t max_order_ = 0;

    // flat rule storage
    std::vector<uint32_t> base_off_; // size n_rules+1
    std::vector<Vertex> base_v_;
    std::vector<StateIdx> base_s_;
    std::vector<Vertex> target_;
    std::vector<StateIdx> from_, to_;
    std::vector<double> rate_;

    std::vector<std::vector<uint32_t>> by_target_, by_member_;
    std::vector<double> target_rate_, target_rate_m1_;
    std::vector<std::vector<double>> delta_by_order_;
    double delta_max_ = 0.0, total_rate_ = 0.0;

    // lazy influence cache; heap block keeps RateSystem movable
    struct InfluenceCache {
        std::once_flag once;
        Csr matrix;
        double max = 0.0;
        std::pair<Vertex, Vertex> argmax{0, 0};
    };
    mutable std::unique_ptr<InfluenceCache> icache_;
};

// Incremental construction used by the model builders; add_rule validates
// shape immediately, build() checks duplicates and computes derived data.
class RateSystemBuilder {
  public:
    RateSystemBuilder(StateSpace states, Vertex n_vertices);

    void add_rule(const Vertex* base, const StateIdx* base_states, uint32_t m, Vertex target,
                  StateIdx from, StateIdx to, double rate);
    void add_rule(const InteractionRule& r);
    std::size_t n_added() const { return sys_.rate_.size(); }

    RateSystem build(); // consumes the builder

  private:
    RateSystem sys_;
    bool built_ = false;
};

RateSystem build_rate_system(StateSpace states, Vertex n_vertices,
                             const std::vector<InteractionRule>& rules);

// Pair-rate matrix R with R[j][i] = total label rate j -> i; only defined
// for systems whose interacting rules are all order 1 (OrderTooHigh else).
// The diagonal is structurally zero.
Csr pair_rate_matrix(const RateSystem& sys);

} // namespace hyperips

#endif
