#pragma once

#include <cmath>
#include <cstdint>

namespace hypermu {

// Counter-based generator: the k-th draw of sample i is a pure function of
// (seed, stream, i, k), so results do not depend on scheduling or worker
// count. Mixing is the splitmix64 finalizer applied to a combined counter.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    std::uint64_t bits(std::uint64_t index, std::uint64_t slot) const {
        std::uint64_t x = mix(seed_ ^ 0xA0761D6478BD642Full);
        x = mix(x ^ stream_ * 0xE7037ED1A0B428DBull);
        x = mix(x ^ index * 0x8EBC6AF09C88C6E3ull);
        x = mix(x ^ slot * 0x589965CC75374CC3ull);
        return x;
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform01(std::uint64_t index, std::uint64_t slot) const {
        return static_cast<double>(bits(index, slot) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t index, std::uint64_t slot, double a, double b) const {
        return a + (b - a) * uniform01(index, slot);
    }

    // Log-uniform magnitude in [a, b], a, b > 0.
    double log_uniform(std::uint64_t index, std::uint64_t slot, double a, double b) const {
        return std::exp(uniform(index, slot, std::log(a), std::log(b)));
    }

    double sign(std::uint64_t index, std::uint64_t slot) const {
        return (bits(index, slot) & 1ull) ? 1.0 : -1.0;
    }

    std::uint32_t below(std::uint64_t index, std::uint64_t slot, std::uint32_t n) const {
        return static_cast<std::uint32_t>((bits(index, slot) >> 16) % n);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

} // namespace hypermu
