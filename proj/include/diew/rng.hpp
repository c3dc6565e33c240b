#pragma once

#include <cstdint>
#include <random>

namespace diew {

// splitmix64: used to derive independent sub-stream seeds from one master
// seed, so batched sampling gives the same result for any thread count.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SeedSequence {
  public:
    explicit SeedSequence(std::uint64_t master) : state_(master) {}
    std::uint64_t next() { return splitmix64(state_); }

  private:
    std::uint64_t state_;
};

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    std::uint64_t s = seed;
    // feed the whole 64-bit seed through splitmix so nearby seeds decorrelate
    return std::mt19937_64(splitmix64(s));
}

}  // namespace diew
