#ifndef HYPERIPS_RNG_HPP
#define HYPERIPS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace hyperips {

// splitmix64 finalizer; bijective 64-bit mixer with full avalanche
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based splittable generator.  The state walks a Weyl sequence and
// every output is mix64(counter), so a stream is fully determined by its
// 64-bit key and position; independent streams are derived by hashing
// (key, stream-id) pairs, which keeps every (seed, replica) reproducible
// regardless of scheduling.
class Rng {
  public:
    explicit Rng(uint64_t seed) : ctr_(mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

    // child stream keyed by (this stream's seed, id); does not advance *this
    Rng split(uint64_t id) const { return Rng(mix64(ctr_ ^ mix64(id + 0x9e3779b97f4a7c15ULL))); }

    static Rng stream(uint64_t seed, uint64_t id) { return Rng(seed).split(id); }

    uint64_t next_u64() {
        ctr_ += 0x9e3779b97f4a7c15ULL;
        return mix64(ctr_);
    }

    // uniform in [0,1) with 53 random bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0,1]; safe to feed to log()
    double next_double_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(next_double_pos()) / rate; }

    // unbiased uniform integer in [0, n), n >= 1
    uint64_t uniform_int(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do { x = next_u64(); } while (x >= lim);
        return x % n;
    }

    bool bernoulli(double p) { return next_double() < p; }

  private:
    uint64_t ctr_;
};

} // namespace hyperips

#endif
