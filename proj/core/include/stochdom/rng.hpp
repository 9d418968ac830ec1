#ifndef STOCHDOM_RNG_HPP
#define STOCHDOM_RNG_HPP

#include <cstdint>
#include <random>

namespace stochdom {

// splitmix64 step, used to derive independent sub-stream seeds from a user
// seed. Simulation results depend only on (seed, stream index), never on
// how work is split across threads.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

// Uniform draw in the open interval (0,1). Built directly from the raw
// 64-bit output so results are identical across standard library
// implementations (std::uniform_real_distribution is not portable).
inline double uniform01(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace stochdom

#endif
