#pragma once

#include <cmath>
#include <cstdint>

#include "padic/numeric.hpp"

namespace padic {

// Closed interval with rational endpoints. Used to bound irrational constants
// (powers of pi, square roots) so that inequality checks are decided with
// directed rounding instead of floating point.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat v) : lo(v), hi(v) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

    bool is_point() const { return lo == hi; }
    double mid_double() const { return rat_to_double((lo + hi) / 2); }
};

// Products below assume nonnegative endpoints, which holds for every constant
// we bound this way.
inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo * b.lo, a.hi * b.hi);
}

inline RatInterval operator*(const RatInterval& a, const Rat& c) {
    if (c < 0) return RatInterval(a.hi * c, a.lo * c);
    return RatInterval(a.lo * c, a.hi * c);
}

inline RatInterval interval_max(const RatInterval& a, const RatInterval& b) {
    if (a.lo >= b.hi) return a;
    if (b.lo >= a.hi) return b;
    return RatInterval(a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? b.hi : a.hi);
}

// sqrt(x) enclosed to ~2^-bits width; exact (a point) when x is a perfect
// square of a rational.
inline RatInterval sqrt_interval(const Rat& x, unsigned bits = 96) {
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of negative value");
    Int sn = boost::multiprecision::sqrt(numerator(x));
    Int sd = boost::multiprecision::sqrt(denominator(x));
    if (sn * sn == numerator(x) && sd * sd == denominator(x))
        return RatInterval(Rat(sn, sd));
    Int scale = pow_int(2, bits);
    Int s = floor_sqrt(Rat(x * Rat(scale * scale)));
    return RatInterval(Rat(s, scale), Rat(s + 1, scale));
}

namespace detail {
// 10^38-denominator bounds on pi.
inline RatInterval pi_interval() {
    static const Int den = pow_int(10, 38);
    static const Int num_lo("314159265358979323846264338327950288419");
    return RatInterval(Rat(num_lo, den), Rat(num_lo + 1, den));
}
} // namespace detail

// pi^k for integer k (negative k inverts).
inline RatInterval pi_power(int k) {
    RatInterval pi = detail::pi_interval();
    RatInterval r(Rat(1));
    for (int i = 0; i < std::abs(k); ++i) r = r * pi;
    if (k < 0) return RatInterval(Rat(1) / r.hi, Rat(1) / r.lo);
    return r;
}

// vol(B_k) = coeff * pi^pi_pow exactly: even k gives pi^{k/2}/(k/2)!,
// odd k gives pi^{(k-1)/2} * 4^m m!/(2m)! with m = (k+1)/2.
inline Rat ball_volume_coeff(int k, int& pi_pow) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "ball dimension must be >= 0");
    if (k % 2 == 0) {
        pi_pow = k / 2;
        return Rat(1, factorial(k / 2));
    }
    int m = (k + 1) / 2;
    pi_pow = (k - 1) / 2;
    return Rat(pow_int(4, m) * factorial(m), factorial(2 * m));
}

inline RatInterval ball_volume(int k) {
    int pp = 0;
    Rat c = ball_volume_coeff(k, pp);
    return pi_power(pp) * c;
}

inline RatInterval ball_volume_sq(int k) {
    int pp = 0;
    Rat c = ball_volume_coeff(k, pp);
    return pi_power(2 * pp) * (c * c);
}

// Constant in the lattice-point count upper bound:
//   max{ 3 (6 sqrt(n))^n , (n+2)! pi^{n/2} sqrt(n)^{n+1} / Gamma(n/2 + 1) }.
// For n = 1 this is exactly 18 and for n = 2 exactly 216.
inline RatInterval c1_constant(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
    RatInterval branch1;
    {
        Rat c = Rat(3) * Rat(pow_int(6, n));
        if (n % 2 == 0) {
            branch1 = RatInterval(c * Rat(pow_int(n, n / 2)));
        } else {
            branch1 = sqrt_interval(Rat(n)) * (c * Rat(pow_int(n, (n - 1) / 2)));
        }
    }
    RatInterval branch2;
    {
        Rat c = Rat(factorial(n + 2));
        if (n % 2 == 0) {
            // Gamma(n/2+1) = (n/2)!, sqrt(n)^{n+1} = n^{n/2} sqrt(n)
            c *= Rat(pow_int(n, n / 2), factorial(n / 2));
            branch2 = pi_power(n / 2) * sqrt_interval(Rat(n)) * c;
        } else {
            // Gamma(n/2+1) = (2m)! sqrt(pi) / (4^m m!) with m = (n+1)/2; the
            // sqrt(pi) cancels the half power in pi^{n/2}.
            int m = (n + 1) / 2;
            c *= Rat(pow_int(n, (n + 1) / 2) * pow_int(4, m) * factorial(m), factorial(2 * m));
            branch2 = pi_power((n - 1) / 2) * c;
        }
    }
    return interval_max(branch1, branch2);
}

// c1_constant when it is exactly rational (true for n = 1, 2); throws otherwise.
inline Rat c1_constant_exact(int n) {
    RatInterval c = c1_constant(n);
    if (!c.is_point()) throw Error(ErrorCode::Internal, "c1 constant is not exactly rational here");
    return c.lo;
}

// Factor K with lambda_1^{2(n+1)} <= K * (prod psi)^{-2}:
//   K = C2^{2(n+1)} = 4^{n+1} Gamma((n+3)/2)^2 p^{2n} / pi^{n+1}.
inline RatInterval lambda1_upper_factor(int n, std::int64_t p) {
    Rat c = Rat(pow_int(4, n + 1)) * Rat(pow_int(p, 2 * static_cast<unsigned long>(n)));
    if (n % 2 == 1) {
        Int g = factorial((n + 1) / 2); // Gamma((n+3)/2) = ((n+1)/2)!
        return pi_power(-(n + 1)) * (c * Rat(g * g));
    }
    // Gamma(m + 1/2)^2 = pi ((2m)!/(4^m m!))^2 with m = (n+2)/2
    int m = (n + 2) / 2;
    Rat g(factorial(2 * m), pow_int(4, m) * factorial(m));
    return pi_power(-n) * (c * g * g);
}

inline double lambda1_upper_c2_double(int n, std::int64_t p) {
    RatInterval k = lambda1_upper_factor(n, p);
    return std::pow(k.mid_double(), 1.0 / (2.0 * (n + 1)));
}

// Exact positive value of the form coeff * base^exp with rational coeff > 0,
// base > 0 and rational exp. All comparisons reduce to integer arithmetic.
class ExactPow {
public:
    ExactPow() : coeff_(1), base_(1), exp_(0) {}
    explicit ExactPow(Rat r) : coeff_(std::move(r)), base_(1), exp_(0) {
        if (coeff_ <= 0) throw Error(ErrorCode::InvalidArgument, "ExactPow requires a positive value");
    }
    ExactPow(Rat coeff, Rat base, Rat exp)
        : coeff_(std::move(coeff)), base_(std::move(base)), exp_(std::move(exp)) {
        if (coeff_ <= 0 || base_ <= 0)
            throw Error(ErrorCode::InvalidArgument, "ExactPow requires positive coeff and base");
        if (base_ == 1) exp_ = 0;
        if (exp_ == 0) base_ = 1;
    }

    static ExactPow power(Rat base, Rat exp) { return ExactPow(Rat(1), std::move(base), std::move(exp)); }

    const Rat& coeff() const { return coeff_; }
    const Rat& base() const { return base_; }
    const Rat& exp() const { return exp_; }

    bool is_rational() const { return exp_ == 0 || denominator(exp_) == 1; }

    Rat as_rational() const {
        if (exp_ == 0) return coeff_;
        if (denominator(exp_) != 1)
            throw Error(ErrorCode::Internal, "ExactPow value is irrational");
        return coeff_ * pow_rat(base_, numerator(exp_));
    }

    // sign(value - r), computed exactly.
    int cmp(const Rat& r) const {
        if (r <= 0) return 1;
        if (is_rational()) {
            Rat v = as_rational();
            return v < r ? -1 : (v > r ? 1 : 0);
        }
        // coeff * base^(u/w) vs r  <=>  base^u vs (r/coeff)^w   (w > 0)
        Rat q = r / coeff_;
        Rat lhs = pow_rat(base_, numerator(exp_));
        Rat rhs = pow_rat(q, denominator(exp_));
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }

    // sign(value^e - r) for rational e, computed exactly.
    int cmp_pow(const Rat& e, const Rat& r) const {
        if (r <= 0) return 1;
        // value^e vs r  <=>  value^s vs r^t with e = s/t, t > 0.
        Int s = numerator(e), t = denominator(e);
        ExactPow lhs(pow_rat(coeff_, s), base_, exp_ * Rat(s));
        return lhs.cmp(pow_rat(r, t));
    }

    int cmp(const ExactPow& o) const {
        if (o.is_rational()) return cmp(o.as_rational());
        if (is_rational()) return -o.cmp(as_rational());
        if (base_ != o.base_)
            throw Error(ErrorCode::Internal, "ExactPow comparison needs a common base");
        ExactPow ratio(coeff_ / o.coeff_, base_, exp_ - o.exp_);
        return ratio.cmp(Rat(1));
    }

    ExactPow operator*(const ExactPow& o) const {
        if (exp_ == 0) return ExactPow(coeff_ * o.coeff_, o.base_, o.exp_);
        if (o.exp_ == 0) return ExactPow(coeff_ * o.coeff_, base_, exp_);
        if (base_ != o.base_)
            throw Error(ErrorCode::Internal, "ExactPow product needs a common base");
        return ExactPow(coeff_ * o.coeff_, base_, exp_ + o.exp_);
    }

    // value^e exactly; requires integral e unless coeff == 1.
    ExactPow pow(const Rat& e) const {
        if (denominator(e) == 1) return ExactPow(pow_rat(coeff_, numerator(e)), base_, exp_ * e);
        if (coeff_ == 1) return ExactPow(Rat(1), base_, exp_ * e);
        throw Error(ErrorCode::Internal, "ExactPow::pow with fractional exponent needs unit coeff");
    }

    double to_double() const {
        double lc = std::log2(rat_to_double(coeff_));
        double lb = exp_ == 0 ? 0.0 : rat_to_double(exp_) * std::log2(rat_to_double(base_));
        return std::exp2(lc + lb);
    }

private:
    Rat coeff_, base_, exp_;
};

} // namespace padic
