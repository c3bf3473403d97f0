#ifndef IVMC_RNG_HPP
#define IVMC_RNG_HPP

#include <cstdint>
#include <random>

namespace ivmc {

/// Deterministic uniform generator: a seeded Mersenne Twister (mt19937_64,
/// fully specified by the standard, period 2^19937-1) mapped to doubles in
/// [0, 1) with 53 random bits. Identical seeds give identical streams on
/// every platform.
class rng {
  public:
    explicit rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

/// One splitmix64 step; used to derive independent per-replicate seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Replicate seed = splitmix64 of (master + (index+1) * golden gamma).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    return splitmix64(state);
}

} // namespace ivmc

#endif
