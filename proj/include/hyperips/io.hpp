#ifndef HYPERIPS_IO_HPP
#define HYPERIPS_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperips/backward.hpp"
#include "hyperips/bounds.hpp"
#include "hyperips/forward.hpp"
#include "hyperips/generators.hpp"
#include "hyperips/initial_law.hpp"
#include "hyperips/master_equation.hpp"
#include "hyperips/nimfa.hpp"
#include "hyperips/rate_system.hpp"

namespace hyperips {

inline constexpr const char* kVersion = "0.1.0";

// shortest decimal form that round-trips a double (%.17g)
std::string fmt17(double x);

// --- rule-set text ------------------------------------------------------------
// states: S,I
// vertices: 4
// # m | base | target | base-states | from -> to | rate
// 1 | 2 | 0 | I | S -> I | 0.25
// 0 |   | 0 |   | I -> S | 1
// '#' starts a comment; all fields are whitespace-insensitive.
void write_rule_system(std::ostream& os, const RateSystem& sys);
RateSystem read_rule_system(std::istream& is);

// --- adjacency text -------------------------------------------------------------
// n 5 directed 0
// 0 1            <- pair edge (source target when directed)
// 2 | 0,1 | 3    <- hyperedge: order | base | target
void write_adjacency(std::ostream& os, const Adjacency& g);
Adjacency read_adjacency(std::istream& is);

// --- initial-law text -----------------------------------------------------------
// states: S,I
// vertices: 3
// 0.5 0.5        <- one probability row per vertex
void write_law(std::ostream& os, const InitialLaw& law, const StateSpace& states);
InitialLaw read_law(std::istream& is, const StateSpace& expect);

// --- CSV -----------------------------------------------------------------------
// marginal schema shared by simulation, NIMFA, and the exact oracle so the
// files diff directly: vertex,state,t,value,std_error,replicas,seed_base
void write_marginals_csv(std::ostream& os, const MarginalEstimate& est, const StateSpace& states);
void write_nimfa_csv(std::ostream& os, const NimfaResult& res, const StateSpace& states, Vertex n);
void write_oracle_csv(std::ostream& os, const OracleMarginals& res, const StateSpace& states,
                      Vertex n);

// one row per time point: t,value,std_error,replicas,seed_base
struct TimeRow {
    double t;
    double value;
    double std_error;
    uint64_t replicas;
    uint64_t seed;
};
void write_time_csv(std::ostream& os, const std::vector<TimeRow>& rows);

// root,partner,t,value,std_error,replicas,truncation_fraction (partner may
// be blank for single-root estimates)
struct BackwardRow {
    Vertex root;
    bool has_partner;
    Vertex partner;
    double t;
    BackwardEstimate est;
};
void write_backward_csv(std::ostream& os, const std::vector<BackwardRow>& rows);

// --- JSON ----------------------------------------------------------------------
std::string bounds_json(const std::vector<BoundReport>& reports);

// file helpers (IoError on failure); write_file is used for every artifact
// so reruns produce byte-identical outputs
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace hyperips

#endif
