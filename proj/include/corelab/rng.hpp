#pragma once

#include <cstdint>
#include <random>
#include <vector>
#include <utility>

namespace corelab {

// splitmix64 finalizer; decorrelates seeds that differ in few bits.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman/Vigna). The conditioned rejection samplers burn
// billions of draws, where mt19937_64 is several times slower. State is
// seeded through splitmix64 as the authors recommend.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 1) {
        std::uint64_t sm = seed;
        for (auto& word : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

using Rng = Xoshiro256pp;

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return mix64(master ^ mix64(salt));
}

// Deterministic per-trial stream: mixes (master, k, n, m, trial) so trials can
// run on any thread in any order and still reproduce byte-identical output.
inline Rng trial_rng(std::uint64_t master, std::uint64_t k, std::uint64_t n,
                     std::uint64_t m, std::uint64_t trial) {
    std::uint64_t s = master;
    s = derive_seed(s, k);
    s = derive_seed(s, n);
    s = derive_seed(s, m);
    s = derive_seed(s, trial);
    return Rng(s);
}

// Uniform double in [0,1) from the top 53 bits; cheaper than
// uniform_real_distribution and identical across platforms.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    // rejection to avoid modulo bias
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

// Fisher-Yates with our own index draws; std::shuffle's draw sequence is not
// pinned by the standard, this is byte-stable across toolchains.
template <class T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

}  // namespace corelab
