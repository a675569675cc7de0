#include "hyperips/backward.hpp"

#include <algorithm>
#include <cmath>

namespace hyperips {

namespace {

// Fenwick tree over nonnegative weights: append, add, and inverse-prefix
// lookup, all O(log n); used to pick the firing particle by total weight.
class WeightTree {
  public:
    void push(double w) {
        tree_.push_back(w);
        const std::size_t i = tree_.size(); // 1-based position of the new leaf
        // fold in the completed subtree to the left of position i
        for (std::size_t step = 1; (i & step) == 0 && step < i; step <<= 1)
            tree_[i - 1] += tree_[i - 1 - step];
        total_ += w;
    }
    double total() const { return total_; }
    // smallest index with prefix sum exceeding u
    std::size_t find(double u) const {
        std::size_t pos = 0, mask = top_bit(tree_.size());
        while (mask) {
            const std::size_t next = pos + mask;
            if (next <= tree_.size() && tree_[next - 1] <= u) {
                u -= tree_[next - 1];
                pos = next;
            }
            mask >>= 1;
        }
        return pos < tree_.size() ? pos : tree_.size() - 1;
    }

  private:
    static std::size_t top_bit(std::size_t n) {
        std::size_t b = 1;
        while ((b << 1) <= n) b <<= 1;
        return n ? b : 0;
    }
    std::vector<double> tree_; // tree_[i-1] = sum over (i - lowbit(i), i]
    double total_ = 0.0;
};

// per-vertex label tables shared by both samplers
void build_tables(const RateSystem& sys, bool interacting_only, std::vector<double>& weight,
                  std::vector<AliasTable>& pick, std::vector<std::vector<uint32_t>>& rules) {
    const Vertex n = sys.n_vertices();
    weight.assign(n, 0.0);
    pick.resize(n);
    rules.assign(n, {});
    for (Vertex i = 0; i < n; ++i) {
        std::vector<double> w;
        for (uint32_t r : sys.rules_of_target(i)) {
            if (interacting_only && sys.order(r) == 0) continue;
            rules[i].push_back(r);
            w.push_back(sys.rate(r));
            weight[i] += sys.rate(r);
        }
        if (!rules[i].empty()) pick[i] = AliasTable(w);
    }
}

} // namespace

// --- information sets --------------------------------------------------------

std::vector<Vertex> InfoSetSample::members_at(double tau) const {
    std::vector<Vertex> out{root};
    for (const auto& j : jumps) {
        if (j.time > tau) break;
        out.insert(out.end(), j.added.begin(), j.added.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t InfoSetSample::size_at(double tau) const {
    std::size_t c = 1;
    for (const auto& j : jumps) {
        if (j.time > tau) break;
        c += j.added.size();
    }
    return c;
}

InfoSetSampler::InfoSetSampler(const RateSystem& sys) : sys_(&sys) {
    build_tables(sys, /*interacting_only=*/true, weight_, pick_, rules_);
}

InfoSetSample InfoSetSampler::sample(Vertex root, double t, Rng& rng,
                                     const BackwardOptions& opt) const {
    if (root >= sys_->n_vertices()) fail(Errc::ParameterDomain, "root out of range");
    if (t < 0) fail(Errc::ParameterDomain, "horizon must be >= 0");

    InfoSetSample s;
    s.root = root;
    s.horizon = t;
    std::vector<char> in(sys_->n_vertices(), 0);
    in[root] = 1;
    std::vector<Vertex> members{root};
    double w_total = weight_[root];
    double tau = 0.0;
    uint64_t n_events = 0;

    while (w_total > 0.0) {
        tau += rng.exponential(w_total);
        if (tau > t) break;
        if (++n_events > opt.event_cap) fail(Errc::CapExceeded, "information-set event cap");

        // member whose label clock fired, by cumulative weight
        double u = rng.next_double() * w_total;
        Vertex k = members.back();
        for (Vertex v : members) {
            if (u < weight_[v]) {
                k = v;
                break;
            }
            u -= weight_[v];
        }
        const uint32_t r = rules_[k][pick_[k].sample(rng)];

        InfoSetJump jump;
        jump.time = tau;
        const Vertex* b = sys_->base(r);
        for (uint32_t l = 0; l < sys_->order(r); ++l)
            if (!in[b[l]]) {
                in[b[l]] = 1;
                members.push_back(b[l]);
                jump.added.push_back(b[l]);
                w_total += weight_[b[l]];
            }
        s.jumps.push_back(std::move(jump));
        if (members.size() > opt.size_cap) {
            s.truncated = true;
            break;
        }
    }

    std::sort(members.begin(), members.end());
    s.members = std::move(members);
    return s;
}

InfoSetSample sample_information_set(const RateSystem& sys, Vertex root, double t, uint64_t seed,
                                     const BackwardOptions& opt) {
    InfoSetSampler sampler(sys);
    Rng rng(seed);
    return sampler.sample(root, t, rng, opt);
}

BackwardEstimate estimate_collision_prob(const RateSystem& sys, Vertex i, Vertex j, double t,
                                         uint64_t replicas, uint64_t seed, uint32_t threads,
                                         const BackwardOptions& opt) {
    if (i >= sys.n_vertices() || j >= sys.n_vertices())
        fail(Errc::ParameterDomain, "vertex out of range");
    if (replicas < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");
    if (i == j) return {{1.0, 0.0, replicas, seed}, 0}; // same root: sets always share it

    InfoSetSampler sampler(sys);
    const uint32_t workers = resolved_threads(replicas, threads);
    std::vector<uint64_t> hits(workers, 0), trunc(workers, 0);
    parallel_replicas(replicas, threads, [&](uint32_t w, uint64_t b, uint64_t e) {
        for (uint64_t rep = b; rep < e; ++rep) {
            Rng base = Rng::stream(seed, rep);
            Rng ri = base.split(0), rj = base.split(1);
            const InfoSetSample hi = sampler.sample(i, t, ri, opt);
            const InfoSetSample hj = sampler.sample(j, t, rj, opt);
            bool collide = hi.truncated || hj.truncated;
            trunc[w] += hi.truncated || hj.truncated;
            if (!collide) {
                // both member lists are sorted
                auto a = hi.members.begin();
                auto c = hj.members.begin();
                while (a != hi.members.end() && c != hj.members.end()) {
                    if (*a == *c) {
                        collide = true;
                        break;
                    }
                    (*a < *c) ? ++a : ++c;
                }
            }
            hits[w] += collide;
        }
    });
    uint64_t total = 0, truncated = 0;
    for (uint32_t w = 0; w < workers; ++w) {
        total += hits[w];
        truncated += trunc[w];
    }
    return {frequency_report(total, replicas, seed), truncated};
}

BackwardEstimate estimate_blowup_functional(const RateSystem& sys, const std::vector<Vertex>& m_set,
                                            double t, uint64_t replicas, uint64_t seed,
                                            uint32_t threads, const BackwardOptions& opt) {
    if (m_set.empty()) fail(Errc::EmptySubset, "subset must be nonempty");
    for (Vertex v : m_set)
        if (v >= sys.n_vertices()) fail(Errc::ParameterDomain, "subset vertex out of range");
    if (replicas < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");
    const Csr r = pair_rate_matrix(sys); // rejects higher-order systems
    if (!r.is_symmetric(1e-12))
        fail(Errc::RequiresSymmetric, "blowup functional needs a symmetric rate matrix");

    std::vector<char> in_m(sys.n_vertices(), 0);
    for (Vertex v : m_set) in_m[v] = 1;

    InfoSetSampler sampler(sys);
    const uint32_t workers = resolved_threads(replicas, threads);
    std::vector<uint64_t> trunc(workers, 0);
    std::vector<double> vals(replicas, 0.0);
    parallel_replicas(replicas, threads, [&](uint32_t w, uint64_t b, uint64_t e) {
        for (uint64_t rep = b; rep < e; ++rep) {
            Rng rng = Rng::stream(seed, rep);
            const Vertex root = m_set[rng.uniform_int(m_set.size())];
            const InfoSetSample h = sampler.sample(root, 2.0 * t, rng, opt);
            if (h.truncated) {
                vals[rep] = 1.0; // conservative: a truncated set may reach anything
                ++trunc[w];
                continue;
            }
            std::size_t inter = 0;
            for (Vertex v : h.members) inter += in_m[v];
            vals[rep] = double(inter) / double(m_set.size());
        }
    });
    uint64_t truncated = 0;
    for (uint64_t c : trunc) truncated += c;
    return {mean_report(vals, seed), truncated};
}

// --- branching structure ------------------------------------------------------

BranchingSampler::BranchingSampler(const RateSystem& sys) : sys_(&sys) {
    build_tables(sys, /*interacting_only=*/false, weight_, pick_, rules_);
}

BranchingSample BranchingSampler::run(Vertex root, double t0, const InitialLaw* law, Rng& rng,
                                      const BackwardOptions& opt) const {
    if (root >= sys_->n_vertices()) fail(Errc::ParameterDomain, "root out of range");
    if (t0 < 0) fail(Errc::ParameterDomain, "horizon must be >= 0");

    BranchingSample s;
    s.root = root;
    s.horizon = t0;
    std::vector<uint32_t> count(sys_->n_vertices(), 0);

    WeightTree tree;
    auto born = [&](Vertex v) {
        const uint32_t copy = ++count[v];
        if (copy >= 2) s.ghost = true;
        const StateIdx init = law ? law->sample_vertex(v, rng) : StateIdx(0);
        s.particles.push_back({v, copy, init});
        tree.push(weight_[v]);
    };
    born(root);

    double tau = 0.0;
    uint64_t n_events = 0;
    while (tree.total() > 0.0) {
        tau += rng.exponential(tree.total());
        if (tau > t0) break;
        if (++n_events > opt.event_cap) fail(Errc::CapExceeded, "branching event cap");

        const uint32_t p = uint32_t(tree.find(rng.next_double() * tree.total()));
        const Vertex v = s.particles[p].vertex;
        const uint32_t r = rules_[v][pick_[v].sample(rng)];

        BranchEvent ev;
        ev.tau = tau;
        ev.particle = p;
        ev.rule = r;
        ev.first_child = uint32_t(s.particles.size());
        ev.relevant = false;
        const Vertex* b = sys_->base(r);
        for (uint32_t l = 0; l < sys_->order(r); ++l) born(b[l]);
        s.events.push_back(ev);

        if (s.particles.size() > opt.pop_cap) {
            s.truncated = true;
            break;
        }
    }
    return s;
}

void BranchingSampler::evaluate(BranchingSample& s) const {
    // pass 1, backward time: which events feed the original process?  An
    // event counts iff its particle is the first copy and its vertex already
    // belongs to the information set, which then absorbs the base.
    std::vector<char> in(sys_->n_vertices(), 0);
    in[s.root] = 1;
    for (auto& ev : s.events) {
        const BranchParticle& p = s.particles[ev.particle];
        if (p.copy != 1 || !in[p.vertex]) continue;
        ev.relevant = true;
        const Vertex* b = sys_->base(ev.rule);
        for (uint32_t l = 0; l < sys_->order(ev.rule); ++l) in[b[l]] = 1;
    }

    // pass 2, real time (reverse): every particle evolves on its own copy
    std::vector<StateIdx> tilde(s.particles.size());
    for (std::size_t p = 0; p < s.particles.size(); ++p) tilde[p] = s.particles[p].init_state;
    for (auto it = s.events.rbegin(); it != s.events.rend(); ++it) {
        const uint32_t r = it->rule;
        if (tilde[it->particle] != sys_->from_state(r)) continue;
        const StateIdx* bs = sys_->base_states(r);
        bool match = true;
        for (uint32_t l = 0; l < sys_->order(r) && match; ++l)
            match = tilde[it->first_child + l] == bs[l];
        if (match) tilde[it->particle] = sys_->to_state(r);
    }
    s.sigma_tilde = tilde[0];

    // pass 3, real time: the original process on plain vertices, driven by
    // the relevant events and the first-copy initial states
    std::vector<StateIdx> plain(sys_->n_vertices(), 0);
    for (const auto& p : s.particles)
        if (p.copy == 1) plain[p.vertex] = p.init_state;
    for (auto it = s.events.rbegin(); it != s.events.rend(); ++it) {
        if (!it->relevant) continue;
        const uint32_t r = it->rule;
        const Vertex tgt = s.particles[it->particle].vertex;
        if (plain[tgt] != sys_->from_state(r)) continue;
        const Vertex* b = sys_->base(r);
        const StateIdx* bs = sys_->base_states(r);
        bool match = true;
        for (uint32_t l = 0; l < sys_->order(r) && match; ++l) match = plain[b[l]] == bs[l];
        if (match) plain[tgt] = sys_->to_state(r);
    }
    s.sigma = plain[s.root];
}

BranchingSample BranchingSampler::sample_structure(Vertex root, double t0, Rng& rng,
                                                   const BackwardOptions& opt) const {
    return run(root, t0, nullptr, rng, opt);
}

BranchingSample BranchingSampler::sample(Vertex root, double t0, const InitialLaw& law, Rng& rng,
                                         const BackwardOptions& opt) const {
    law.validate_against(*sys_);
    BranchingSample s = run(root, t0, &law, rng, opt);
    if (!s.truncated) evaluate(s);
    return s;
}

BranchingSample sample_branching_structure(const RateSystem& sys, Vertex root, double t0,
                                           uint64_t seed, const BackwardOptions& opt) {
    BranchingSampler sampler(sys);
    Rng rng(seed);
    return sampler.sample_structure(root, t0, rng, opt);
}

BackwardEstimate estimate_ghost_prob(const RateSystem& sys, Vertex root, double t,
                                     uint64_t replicas, uint64_t seed, uint32_t threads,
                                     const BackwardOptions& opt) {
    if (replicas < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");
    BranchingSampler sampler(sys);
    const uint32_t workers = resolved_threads(replicas, threads);
    std::vector<uint64_t> hits(workers, 0), trunc(workers, 0);
    parallel_replicas(replicas, threads, [&](uint32_t w, uint64_t b, uint64_t e) {
        for (uint64_t rep = b; rep < e; ++rep) {
            Rng rng = Rng::stream(seed, rep);
            const BranchingSample s = sampler.sample_structure(root, t, rng, opt);
            hits[w] += s.ghost || s.truncated;
            trunc[w] += s.truncated;
        }
    });
    uint64_t total = 0, truncated = 0;
    for (uint32_t w = 0; w < workers; ++w) {
        total += hits[w];
        truncated += trunc[w];
    }
    return {frequency_report(total, replicas, seed), truncated};
}

double BranchingMarginals::freq_std_error(double p) const {
    return std::sqrt(p * (1.0 - p) / double(evaluated));
}

BranchingMarginals estimate_branching_marginals(const RateSystem& sys, const InitialLaw& law,
                                                Vertex root, double t, uint64_t replicas,
                                                uint64_t seed, uint32_t threads,
                                                const BackwardOptions& opt) {
    if (replicas < 2) fail(Errc::ParameterDomain, "need at least 2 replicas");
    law.validate_against(sys);
    const std::size_t S = sys.states().size();
    BranchingSampler sampler(sys);

    struct Tally {
        uint64_t truncated = 0, ghosts = 0, no_ghost = 0, mismatch = 0;
        std::vector<uint64_t> tilde, plain;
    };
    std::vector<Tally> part(resolved_threads(replicas, threads));
    for (auto& p : part) {
        p.tilde.assign(S, 0);
        p.plain.assign(S, 0);
    }

    parallel_replicas(replicas, threads, [&](uint32_t w, uint64_t b, uint64_t e) {
        Tally& tl = part[w];
        for (uint64_t rep = b; rep < e; ++rep) {
            Rng rng = Rng::stream(seed, rep);
            const BranchingSample s = sampler.sample(root, t, law, rng, opt);
            if (s.truncated) {
                ++tl.truncated;
                continue;
            }
            ++tl.tilde[s.sigma_tilde];
            ++tl.plain[s.sigma];
            if (s.ghost) {
                ++tl.ghosts;
            } else {
                ++tl.no_ghost;
                tl.mismatch += s.sigma != s.sigma_tilde;
            }
        }
    });

    BranchingMarginals out;
    out.replicas = replicas;
    out.seed = seed;
    out.tilde_counts.assign(S, 0);
    out.plain_counts.assign(S, 0);
    for (const auto& tl : part) {
        out.truncated += tl.truncated;
        out.ghosts += tl.ghosts;
        out.no_ghost += tl.no_ghost;
        out.mismatch_no_ghost += tl.mismatch;
        for (std::size_t s = 0; s < S; ++s) {
            out.tilde_counts[s] += tl.tilde[s];
            out.plain_counts[s] += tl.plain[s];
        }
    }
    out.evaluated = replicas - out.truncated;
    return out;
}

} // namespace hyperips
