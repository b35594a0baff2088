#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <utility>

#include "padic/error.hpp"

namespace padic {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int pow_int(std::int64_t base, unsigned long e) { return pow_int(Int(base), e); }

// base^e for rational base, integer e of either sign. base must be nonzero for e < 0.
inline Rat pow_rat(const Rat& base, const Int& e) {
    if (e == 0) return Rat(1);
    unsigned long a = static_cast<unsigned long>(abs(e));
    Rat r(pow_int(numerator(base), a), pow_int(denominator(base), a));
    if (e < 0) {
        if (r == 0) throw Error(ErrorCode::InvalidArgument, "zero base with negative exponent");
        r = Rat(1) / r;
    }
    return r;
}

// Largest k >= 0 with k*k <= x; x must be >= 0.
inline Int floor_sqrt(const Rat& x) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "floor_sqrt of negative value");
    Int k = boost::multiprecision::sqrt(numerator(x) / denominator(x));
    while (Rat((k + 1) * (k + 1)) <= x) ++k;
    while (k > 0 && Rat(k * k) > x) --k;
    return k;
}

inline Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return boost::multiprecision::gcd(a, b);
}

// Returns x with a*x == 1 (mod m), canonical in [0, m). Throws when gcd(a, m) != 1.
inline Int mod_inverse(Int a, const Int& m) {
    Int old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw Error(ErrorCode::InvalidArgument, "modular inverse does not exist");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

// Canonical representative of a mod m in [0, m).
inline Int mod_canonical(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

// Floor division (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

namespace detail {
inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}
} // namespace detail

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline void require_prime(std::int64_t p) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p) + " is not prime");
}

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Euler phi by trial division; fine for the 64-bit sizes used here.
inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            while (n % q == 0) n /= q;
            result -= result / q;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

} // namespace padic
