#pragma once

#include <cstdint>

namespace irg {

// Counter-based generator: output i is a bijective mix of (key + i*gamma), so
// streams can be split by key and advanced without sequential state. One
// stream per (master seed, replication, purpose) triple keeps replications
// independent and order-insensitive.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (counter_++) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1); never returns an exact endpoint.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    return z ^ (z >> 33);
}

enum class StreamPurpose : std::uint64_t {
    weights = 1,
    edges = 2,
    quadrature = 3,
};

inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t replication,
                                   StreamPurpose purpose) {
    std::uint64_t h = mix64(master ^ 0x6A09E667F3BCC909ULL);
    h = mix64(h ^ (replication * 0xBB67AE8584CAA73BULL + 1));
    h = mix64(h ^ (static_cast<std::uint64_t>(purpose) * 0x3C6EF372FE94F82BULL + 1));
    return h;
}

}  // namespace irg
