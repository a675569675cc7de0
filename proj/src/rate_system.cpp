#include "hyperips/rate_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace hyperips {

StateSpace::StateSpace(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) fail(Errc::ParameterDomain, "state space must contain at least one state");
    if (names_.size() > 255) fail(Errc::TooLarge, "state space exceeds 255 states");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const std::string& s = names_[i];
        if (s.empty() || s.find_first_of(", \t|#") != std::string::npos)
            fail(Errc::ParameterDomain, "state name '" + s + "' is empty or contains reserved characters");
        if (!lookup_.emplace(s, StateIdx(i)).second)
            fail(Errc::ParameterDomain, "duplicate state name '" + s + "'");
    }
}

StateIdx StateSpace::index(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) fail(Errc::StateNotInSpace, "state '" + name + "' not in state space");
    return it->second;
}

RateSystemBuilder::RateSystemBuilder(StateSpace states, Vertex n_vertices) {
    if (n_vertices == 0) fail(Errc::ParameterDomain, "system needs at least one vertex");
    sys_.states_ = std::move(states);
    sys_.n_ = n_vertices;
    sys_.base_off_.push_back(0);
}

void RateSystemBuilder::add_rule(const Vertex* base, const StateIdx* base_states, uint32_t m,
                                 Vertex target, StateIdx from, StateIdx to, double rate) {
    const Vertex n = sys_.n_;
    const std::size_t ns = sys_.states_.size();
    if (m >= n) fail(Errc::OrderTooHigh, "interaction order " + std::to_string(m) +
                                             " not allowed on " + std::to_string(n) + " vertices");
    if (target >= n) fail(Errc::MalformedRule, "target vertex out of range");
    for (uint32_t l = 0; l < m; ++l) {
        if (base[l] >= n) fail(Errc::MalformedRule, "base vertex out of range");
        if (l > 0 && base[l] <= base[l - 1])
            fail(Errc::MalformedRule, "base tuple must be strictly increasing");
        if (base[l] == target) fail(Errc::MalformedRule, "target may not appear in its own base");
        if (base_states[l] >= ns) fail(Errc::StateNotInSpace, "base state index out of range");
    }
    if (from >= ns || to >= ns) fail(Errc::StateNotInSpace, "target state index out of range");
    if (from == to)
        fail(Errc::MalformedRule, "labels must change the target state; leaving rates are synthesized");
    if (std::isnan(rate) || std::isinf(rate)) fail(Errc::MalformedRule, "rate must be finite");
    if (rate < 0) fail(Errc::NegativeRate, "rate must be nonnegative");
    if (rate == 0) return; // valid but inert; dropped

    sys_.base_v_.insert(sys_.base_v_.end(), base, base + m);
    sys_.base_s_.insert(sys_.base_s_.end(), base_states, base_states + m);
    sys_.base_off_.push_back(uint32_t(sys_.base_v_.size()));
    sys_.target_.push_back(target);
    sys_.from_.push_back(from);
    sys_.to_.push_back(to);
    sys_.rate_.push_back(rate);
}

void RateSystemBuilder::add_rule(const InteractionRule& r) {
    if (r.base.size() != r.base_states.size())
        fail(Errc::MalformedRule, "base tuple and base state tuple differ in length");
    add_rule(r.base.data(), r.base_states.data(), uint32_t(r.base.size()), r.target, r.from_state,
             r.to_state, r.rate);
}

RateSystem RateSystemBuilder::build() {
    if (built_) fail(Errc::ParameterDomain, "builder already consumed");
    built_ = true;
    sys_.finalize();
    return std::move(sys_);
}

void RateSystem::finalize() {
    const std::size_t nr = rate_.size();

    // duplicate detection on the canonical tuple (base, target, base states, from, to)
    std::vector<uint32_t> ids(nr);
    for (std::size_t i = 0; i < nr; ++i) ids[i] = uint32_t(i);
    auto key_less = [this](uint32_t a, uint32_t b) {
        if (target_[a] != target_[b]) return target_[a] < target_[b];
        uint32_t ma = base_off_[a + 1] - base_off_[a], mb = base_off_[b + 1] - base_off_[b];
        if (ma != mb) return ma < mb;
        int c = std::memcmp(base_v_.data() + base_off_[a], base_v_.data() + base_off_[b],
                            ma * sizeof(Vertex));
        if (c) return c < 0;
        c = std::memcmp(base_s_.data() + base_off_[a], base_s_.data() + base_off_[b], ma);
        if (c) return c < 0;
        if (from_[a] != from_[b]) return from_[a] < from_[b];
        return to_[a] < to_[b];
    };
    std::sort(ids.begin(), ids.end(), key_less);
    for (std::size_t i = 1; i < nr; ++i)
        if (!key_less(ids[i - 1], ids[i]) && !key_less(ids[i], ids[i - 1]))
            fail(Errc::DuplicateRule,
                 "rule with target " + std::to_string(target_[ids[i]]) + " appears twice");

    by_target_.assign(n_, {});
    by_member_.assign(n_, {});
    target_rate_.assign(n_, 0.0);
    target_rate_m1_.assign(n_, 0.0);
    max_order_ = 0;
    for (std::size_t r = 0; r < nr; ++r) max_order_ = std::max(max_order_, order(r));
    delta_by_order_.assign(max_order_, std::vector<double>(n_, 0.0));

    std::vector<uint32_t> tcount(n_, 0), mcount(n_, 0);
    for (std::size_t r = 0; r < nr; ++r) {
        ++tcount[target_[r]];
        for (uint32_t k = base_off_[r]; k < base_off_[r + 1]; ++k) ++mcount[base_v_[k]];
    }
    for (Vertex v = 0; v < n_; ++v) {
        by_target_[v].reserve(tcount[v]);
        by_member_[v].reserve(mcount[v]);
    }
    for (std::size_t r = 0; r < nr; ++r) {
        const Vertex i = target_[r];
        const uint32_t m = order(r);
        by_target_[i].push_back(uint32_t(r));
        for (uint32_t k = base_off_[r]; k < base_off_[r + 1]; ++k)
            by_member_[base_v_[k]].push_back(uint32_t(r));
        target_rate_[i] += rate_[r];
        total_rate_ += rate_[r];
        if (m >= 1) {
            target_rate_m1_[i] += rate_[r];
            delta_by_order_[m - 1][i] += rate_[r];
        }
    }
    delta_max_ = 0.0;
    for (const auto& dm : delta_by_order_)
        for (double d : dm) delta_max_ = std::max(delta_max_, d);

    icache_ = std::make_unique<InfluenceCache>();
}

const Csr& RateSystem::influence_matrix() const {
    std::call_once(icache_->once, [this] {
        std::vector<Triple> trips;
        trips.reserve(base_v_.size());
        for (std::size_t r = 0; r < rate_.size(); ++r)
            for (uint32_t k = base_off_[r]; k < base_off_[r + 1]; ++k)
                trips.push_back({base_v_[k], target_[r], rate_[r]});
        icache_->matrix = csr_from_triples(n_, n_, std::move(trips));
        const Csr& m = icache_->matrix;
        for (std::size_t j = 0; j < m.rows; ++j)
            for (std::size_t k = m.off[j]; k < m.off[j + 1]; ++k)
                if (m.val[k] > icache_->max) {
                    icache_->max = m.val[k];
                    icache_->argmax = {Vertex(j), Vertex(m.col[k])};
                }
    });
    return icache_->matrix;
}

double RateSystem::influence_max() const {
    influence_matrix();
    return icache_->max;
}

std::pair<Vertex, Vertex> RateSystem::influence_argmax() const {
    influence_matrix();
    return icache_->argmax;
}

RateSystem build_rate_system(StateSpace states, Vertex n_vertices,
                             const std::vector<InteractionRule>& rules) {
    RateSystemBuilder b(std::move(states), n_vertices);
    for (const auto& r : rules) b.add_rule(r);
    return b.build();
}

Csr pair_rate_matrix(const RateSystem& sys) {
    if (sys.max_order() > 1)
        fail(Errc::OrderTooHigh, "pair rate matrix is defined for order-1 systems only");
    std::vector<Triple> trips;
    for (std::size_t r = 0; r < sys.n_rules(); ++r)
        if (sys.order(r) == 1) trips.push_back({sys.base(r)[0], sys.target(r), sys.rate(r)});
    return csr_from_triples(sys.n_vertices(), sys.n_vertices(), std::move(trips));
}

} // namespace hyperips
