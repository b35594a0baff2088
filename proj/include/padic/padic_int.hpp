#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padic/numeric.hpp"
#include "padic/rng.hpp"

namespace padic {

// p-adic valuation of an integer: the largest v with p^v | y, infinite for 0.
struct Valuation {
    bool infinite = false;
    std::int64_t v = 0;

    // |y|_p = p^-v as an exact rational; 0 for the zero element.
    Rat norm(std::int64_t p) const {
        if (infinite) return Rat(0);
        if (v >= 0) return Rat(1, pow_int(p, static_cast<unsigned long>(v)));
        return Rat(pow_int(p, static_cast<unsigned long>(-v)));
    }

    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
    // Compares extended values with infinity largest.
    bool at_least(std::int64_t t) const { return infinite || v >= t; }
};

Valuation valuation(const Int& y, std::int64_t p);

// Element of Z_p stored as L base-p digits, least significant first. All
// operations that would need digits beyond L fail loudly instead of padding
// with zeros.
class PadicInt {
public:
    PadicInt(std::int64_t p, std::vector<std::int32_t> digits);

    // Digits of a/b mod p^L; requires p not dividing b.
    static PadicInt from_rational(const Int& a, const Int& b, std::int64_t p, int precision);
    static PadicInt from_integer(const Int& a, std::int64_t p, int precision);
    static PadicInt random(std::int64_t p, int precision, SeededRng& rng);
    static PadicInt random(std::int64_t p, int precision, std::uint64_t seed);

    std::int64_t prime() const { return p_; }
    int precision() const { return static_cast<int>(digits_.size()); }
    const std::vector<std::int32_t>& digits() const { return digits_; }

    // X_t = sum_{i<t} digits_i p^i, the canonical representative mod p^t.
    Int truncate(int t) const;

    bool operator==(const PadicInt& o) const {
        return p_ == o.p_ && digits_ == o.digits_;
    }

private:
    std::int64_t p_;
    std::vector<std::int32_t> digits_;
};

} // namespace padic
