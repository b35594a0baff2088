#include "padic/padic_int.hpp"

namespace padic {

Valuation valuation(const Int& y, std::int64_t p) {
    require_prime(p);
    if (y == 0) return Valuation{true, 0};
    Int a = y < 0 ? Int(-y) : y;
    std::int64_t v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return Valuation{false, v};
}

PadicInt::PadicInt(std::int64_t p, std::vector<std::int32_t> digits)
    : p_(p), digits_(std::move(digits)) {
    require_prime(p_);
    if (digits_.empty())
        throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
    for (std::int32_t d : digits_) {
        if (d < 0 || d >= p_)
            throw Error(ErrorCode::InvalidArgument, "digit out of [0, p)");
    }
}

PadicInt PadicInt::from_rational(const Int& a, const Int& b, std::int64_t p, int precision) {
    require_prime(p);
    if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
    if (b == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
    if (b % p == 0)
        throw Error(ErrorCode::PDividesDenominator, "denominator divisible by p; value not in Z_p");
    Int modulus = pow_int(p, static_cast<unsigned long>(precision));
    Int value = mod_canonical(a * mod_inverse(b, modulus), modulus);
    std::vector<std::int32_t> digits(static_cast<size_t>(precision));
    for (int i = 0; i < precision; ++i) {
        digits[static_cast<size_t>(i)] = static_cast<std::int32_t>(value % p);
        value /= p;
    }
    return PadicInt(p, std::move(digits));
}

PadicInt PadicInt::from_integer(const Int& a, std::int64_t p, int precision) {
    return from_rational(a, Int(1), p, precision);
}

PadicInt PadicInt::random(std::int64_t p, int precision, SeededRng& rng) {
    require_prime(p);
    if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
    std::vector<std::int32_t> digits(static_cast<size_t>(precision));
    for (auto& d : digits) d = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(p)));
    return PadicInt(p, std::move(digits));
}

PadicInt PadicInt::random(std::int64_t p, int precision, std::uint64_t seed) {
    SeededRng rng(seed);
    return random(p, precision, rng);
}

Int PadicInt::truncate(int t) const {
    if (t < 0) throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 0");
    if (t > precision())
        throw Error(ErrorCode::InsufficientPrecision,
                    "truncation needs " + std::to_string(t) + " digits, have " +
                        std::to_string(precision()));
    Int x = 0;
    for (int i = t - 1; i >= 0; --i) x = x * p_ + digits_[static_cast<size_t>(i)];
    return x;
}

} // namespace padic
