#include "hyperips/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace hyperips {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
    fail(Errc::IoError, "line " + std::to_string(line) + ": " + what);
}

uint64_t parse_u64(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        const uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        bad_line(line, "expected an integer, got '" + s + "'");
    }
}

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        bad_line(line, "expected a number, got '" + s + "'");
    }
}

// next content line: comments stripped, blanks skipped; false at EOF
bool next_line(std::istream& is, std::string& out, std::size_t& line) {
    std::string raw;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        out = trim(raw);
        if (!out.empty()) return true;
    }
    return false;
}

std::string expect_header(std::istream& is, const std::string& key, std::size_t& line) {
    std::string s;
    if (!next_line(is, s, line)) bad_line(line, "missing '" + key + ":' header");
    if (s.rfind(key + ":", 0) != 0) bad_line(line, "expected '" + key + ":' header");
    return trim(s.substr(key.size() + 1));
}

std::string join_states(const StateSpace& states) {
    std::string out;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (s) out += ',';
        out += states.name(StateIdx(s));
    }
    return out;
}

} // namespace

// --- rule-set text ------------------------------------------------------------

void write_rule_system(std::ostream& os, const RateSystem& sys) {
    os << "states: " << join_states(sys.states()) << "\n";
    os << "vertices: " << sys.n_vertices() << "\n";
    os << "# m | base | target | base-states | from -> to | rate\n";
    const StateSpace& sp = sys.states();
    for (std::size_t r = 0; r < sys.n_rules(); ++r) {
        const uint32_t m = sys.order(r);
        os << m << " | ";
        for (uint32_t l = 0; l < m; ++l) os << (l ? "," : "") << sys.base(r)[l];
        os << " | " << sys.target(r) << " | ";
        for (uint32_t l = 0; l < m; ++l) os << (l ? "," : "") << sp.name(sys.base_states(r)[l]);
        os << " | " << sp.name(sys.from_state(r)) << " -> " << sp.name(sys.to_state(r));
        os << " | " << fmt17(sys.rate(r)) << "\n";
    }
}

RateSystem read_rule_system(std::istream& is) {
    std::size_t line = 0;
    std::vector<std::string> names = split(expect_header(is, "states", line), ',');
    StateSpace sp(names);
    const Vertex n = Vertex(parse_u64(expect_header(is, "vertices", line), line));

    std::vector<InteractionRule> rules;
    std::string s;
    while (next_line(is, s, line)) {
        const auto f = split(s, '|');
        if (f.size() != 6) bad_line(line, "expected 6 '|' fields");
        InteractionRule rule;
        const uint64_t m = parse_u64(f[0], line);
        if (m > 0) {
            for (const auto& tok : split(f[1], ','))
                rule.base.push_back(Vertex(parse_u64(tok, line)));
            for (const auto& tok : split(f[3], ','))
                rule.base_states.push_back(StateIdx(sp.index(tok)));
        } else if (!f[1].empty() || !f[3].empty()) {
            bad_line(line, "order-0 rule must leave base fields empty");
        }
        if (rule.base.size() != m || rule.base_states.size() != m)
            bad_line(line, "base fields disagree with the stated order");
        rule.target = Vertex(parse_u64(f[2], line));
        const auto arrow = f[4].find("->");
        if (arrow == std::string::npos) bad_line(line, "expected 'from -> to'");
        rule.from_state = StateIdx(sp.index(trim(f[4].substr(0, arrow))));
        rule.to_state = StateIdx(sp.index(trim(f[4].substr(arrow + 2))));
        rule.rate = parse_double(f[5], line);
        rules.push_back(std::move(rule));
    }
    return build_rate_system(std::move(sp), n, rules);
}

// --- adjacency text -------------------------------------------------------------

void write_adjacency(std::ostream& os, const Adjacency& g) {
    os << "n " << g.n << " directed " << (g.directed ? 1 : 0) << "\n";
    for (const auto& [a, b] : g.edges) os << a << " " << b << "\n";
    for (const auto& h : g.hyperedges) {
        os << h.base.size() << " | ";
        for (std::size_t l = 0; l < h.base.size(); ++l) os << (l ? "," : "") << h.base[l];
        os << " | " << h.target << "\n";
    }
}

Adjacency read_adjacency(std::istream& is) {
    std::size_t line = 0;
    std::string s;
    if (!next_line(is, s, line)) bad_line(line, "missing 'n <N> directed <0|1>' header");
    std::istringstream head(s);
    std::string kw_n, kw_d;
    uint64_t n = 0, dir = 0;
    if (!(head >> kw_n >> n >> kw_d >> dir) || kw_n != "n" || kw_d != "directed" || dir > 1)
        bad_line(line, "expected 'n <N> directed <0|1>'");

    Adjacency g;
    g.n = Vertex(n);
    g.directed = dir == 1;
    while (next_line(is, s, line)) {
        if (s.find('|') != std::string::npos) {
            const auto f = split(s, '|');
            if (f.size() != 3) bad_line(line, "expected 'm | base | target'");
            HyperEdge h;
            for (const auto& tok : split(f[1], ','))
                h.base.push_back(Vertex(parse_u64(tok, line)));
            if (h.base.size() != parse_u64(f[0], line))
                bad_line(line, "base length disagrees with the stated order");
            h.target = Vertex(parse_u64(f[2], line));
            g.hyperedges.push_back(std::move(h));
        } else {
            const auto f = split(s, ' ');
            std::vector<std::string> toks;
            for (const auto& t : f)
                if (!t.empty()) toks.push_back(t);
            if (toks.size() != 2) bad_line(line, "expected an edge 'a b'");
            g.edges.emplace_back(Vertex(parse_u64(toks[0], line)),
                                 Vertex(parse_u64(toks[1], line)));
        }
    }
    for (auto& [a, b] : g.edges) {
        if (a >= g.n || b >= g.n) fail(Errc::ParameterDomain, "edge endpoint out of range");
        if (!g.directed && a > b) std::swap(a, b);
    }
    return g;
}

// --- initial-law text -----------------------------------------------------------

void write_law(std::ostream& os, const InitialLaw& law, const StateSpace& states) {
    os << "states: " << join_states(states) << "\n";
    os << "vertices: " << law.n_vertices() << "\n";
    for (Vertex i = 0; i < law.n_vertices(); ++i) {
        for (std::size_t s = 0; s < law.n_states(); ++s)
            os << (s ? " " : "") << fmt17(law.prob(i, StateIdx(s)));
        os << "\n";
    }
}

InitialLaw read_law(std::istream& is, const StateSpace& expect) {
    std::size_t line = 0;
    const std::string names = expect_header(is, "states", line);
    if (names != join_states(expect))
        bad_line(line, "law states '" + names + "' do not match the system");
    const Vertex n = Vertex(parse_u64(expect_header(is, "vertices", line), line));

    InitialLaw law(n, expect.size());
    std::string s;
    for (Vertex i = 0; i < n; ++i) {
        if (!next_line(is, s, line)) bad_line(line, "missing probability row");
        std::vector<double> row;
        for (const auto& tok : split(s, ' '))
            if (!tok.empty()) row.push_back(parse_double(tok, line));
        if (row.size() != expect.size()) bad_line(line, "wrong number of probabilities");
        law.set_vertex(i, row);
    }
    if (next_line(is, s, line)) bad_line(line, "trailing content after the last vertex row");
    return law;
}

// --- CSV -----------------------------------------------------------------------

namespace {

constexpr const char* kMarginalHeader = "vertex,state,t,value,std_error,replicas,seed_base\n";

} // namespace

void write_marginals_csv(std::ostream& os, const MarginalEstimate& est, const StateSpace& states) {
    os << kMarginalHeader;
    for (std::size_t g = 0; g < est.grid.size(); ++g)
        for (Vertex i = 0; i < est.n; ++i)
            for (std::size_t s = 0; s < est.n_states; ++s)
                os << i << "," << states.name(StateIdx(s)) << "," << fmt17(est.grid[g]) << ","
                   << fmt17(est.value(g, i, StateIdx(s))) << ","
                   << fmt17(est.std_error(g, i, StateIdx(s))) << "," << est.replicas << ","
                   << est.seed << "\n";
}

void write_nimfa_csv(std::ostream& os, const NimfaResult& res, const StateSpace& states,
                     Vertex n) {
    os << kMarginalHeader;
    const std::size_t S = states.size();
    for (std::size_t g = 0; g < res.grid.size(); ++g)
        for (Vertex i = 0; i < n; ++i)
            for (std::size_t s = 0; s < S; ++s)
                os << i << "," << states.name(StateIdx(s)) << "," << fmt17(res.grid[g]) << ","
                   << fmt17(res.value(g, i, StateIdx(s), S)) << ",0,0,0\n";
}

void write_oracle_csv(std::ostream& os, const OracleMarginals& res, const StateSpace& states,
                      Vertex n) {
    os << kMarginalHeader;
    for (std::size_t g = 0; g < res.grid.size(); ++g)
        for (Vertex i = 0; i < n; ++i)
            for (std::size_t s = 0; s < res.n_states; ++s)
                os << i << "," << states.name(StateIdx(s)) << "," << fmt17(res.grid[g]) << ","
                   << fmt17(res.value(g, i, StateIdx(s))) << ",0,0,0\n";
}

void write_time_csv(std::ostream& os, const std::vector<TimeRow>& rows) {
    os << "t,value,std_error,replicas,seed_base\n";
    for (const auto& r : rows)
        os << fmt17(r.t) << "," << fmt17(r.value) << "," << fmt17(r.std_error) << "," << r.replicas
           << "," << r.seed << "\n";
}

void write_backward_csv(std::ostream& os, const std::vector<BackwardRow>& rows) {
    os << "root,partner,t,value,std_error,replicas,truncation_fraction\n";
    for (const auto& r : rows) {
        os << r.root << ",";
        if (r.has_partner) os << r.partner;
        os << "," << fmt17(r.t) << "," << fmt17(r.est.report.value) << ","
           << fmt17(r.est.report.std_error) << "," << r.est.report.replicas << ","
           << fmt17(r.est.truncation_fraction()) << "\n";
    }
}

// --- JSON ----------------------------------------------------------------------

std::string bounds_json(const std::vector<BoundReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.inputs) inputs[k] = v;
        arr.push_back({{"name", r.name}, {"value", r.value}, {"inputs", inputs}});
    }
    return arr.dump(2) + "\n";
}

// --- files ---------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(Errc::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail(Errc::IoError, "cannot open '" + path + "' for writing");
    f << content;
    if (!f) fail(Errc::IoError, "write to '" + path + "' failed");
}

} // namespace hyperips
