#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace criskeq {

// splitmix64 step; also used to derive stream seeds from (seed, id...) keys.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Streams for Monte Carlo replicates
// are derived from (seed, id...) so replicate r's draws never depend on how
// many other replicates ran before it or on which thread it runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { init(seed); }

    Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream_ids) {
        std::uint64_t key = seed;
        for (std::uint64_t id : stream_ids) {
            std::uint64_t folded = key ^ (id + 0x9e3779b97f4a7c15ULL + (key << 6) + (key >> 2));
            key = folded;
            splitmix64(key);
        }
        init(key);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1); never returns 0 or 1, so -log(u)
    // is always finite and positive.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Index drawn proportionally to nonnegative weights; -1 if all weights are 0.
    int categorical(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) return -1;
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    void init(std::uint64_t key) {
        for (auto& word : s_) word = splitmix64(key);
        // all-zero state is invalid for xoshiro; key 0 still seeds via splitmix
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t s_[4];
};

inline Rng make_stream(std::uint64_t seed, std::uint64_t a) { return Rng(seed, {a}); }
inline Rng make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) { return Rng(seed, {a, b}); }
inline Rng make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return Rng(seed, {a, b, c});
}

}  // namespace criskeq
