#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace netmorph {

// Seedable RNG with platform-independent output. The engine is std::mt19937_64,
// whose stream is fully specified by the standard; the uniform mappings below
// avoid std::uniform_*_distribution, whose results vary across standard
// libraries. Same seed, same draws, everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1), 53 bits of precision. Exact IEEE ops only.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform in [0, n). Unbiased via rejection of the wrap-around remainder.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t min = (0 - n) % n; // 2^64 mod n
        std::uint64_t x = engine_();
        while (x < min)
            x = engine_();
        return x % n;
    }

    // Fisher-Yates; std::shuffle is implementation-defined, this is not.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace netmorph
