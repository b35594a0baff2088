#pragma once

#include <cstdint>

namespace padic {

// splitmix64. Self-contained so that seeded runs produce identical streams on
// every platform and standard library.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Deterministic substream: mixes the current state with a label without
    // advancing this generator.
    SeededRng fork(std::uint64_t label) const {
        SeededRng child(state_ ^ (0x632be59bd9b4e019ull * (label + 1)));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

} // namespace padic
