#pragma once

#include <cstdint>
#include <random>

namespace evset {

// SplitMix64 finalizer. Used to derive stream seeds from (master, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic seed for stream `index` of a given master seed. Distinct
// indices give decorrelated seeds; same (master, index) always gives the
// same seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
}

// One reproducible random stream (mt19937_64 behind a small interface).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on the open interval (0,1): 53-bit mantissa resolution,
    // endpoints excluded by construction.
    double uniform_open01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline RngStream seed_stream(std::uint64_t master, std::uint64_t index) {
    return RngStream(derive_seed(master, index));
}

} // namespace evset
