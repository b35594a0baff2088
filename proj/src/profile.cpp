#include "padic/profile.hpp"

#include <cmath>

namespace padic {

namespace {

Rat p_power(std::int64_t p, int t) {
    if (t >= 0) return Rat(1, pow_int(p, static_cast<unsigned long>(t)));
    return Rat(pow_int(p, static_cast<unsigned long>(-t)));
}

} // namespace

int threshold_exponent(const ExactPow& psi, std::int64_t p, ThresholdMode mode) {
    require_prime(p);
    // Estimate from logs, then settle the boundary exactly. The exact
    // comparisons matter: an off-by-one here changes counts by factors of p.
    double guess = -std::log2(psi.to_double()) / std::log2(static_cast<double>(p));
    int t = static_cast<int>(std::floor(guess)) - 2;
    const int kLimit = 1 << 20;
    if (t < -kLimit) t = -kLimit;
    if (mode == ThresholdMode::NonStrict) {
        // smallest t with p^-t <= psi
        while (psi.cmp(p_power(p, t)) < 0) {
            ++t;
            if (t > kLimit) throw Error(ErrorCode::OutOfRange, "threshold search diverged");
        }
        while (t > -kLimit && psi.cmp(p_power(p, t - 1)) >= 0) --t;
        return t;
    }
    // smallest t with p^-t < psi
    while (psi.cmp(p_power(p, t)) <= 0) {
        ++t;
        if (t > kLimit) throw Error(ErrorCode::OutOfRange, "threshold search diverged");
    }
    while (t > -kLimit && psi.cmp(p_power(p, t - 1)) > 0) --t;
    return t;
}

int threshold_exponent(const Rat& psi, std::int64_t p, ThresholdMode mode) {
    if (psi <= 0) throw Error(ErrorCode::InvalidArgument, "psi must be positive");
    return threshold_exponent(ExactPow(psi), p, mode);
}

ApproxProfile::ApproxProfile(std::vector<Coordinate> coords, ThresholdMode mode)
    : coords_(std::move(coords)), mode_(mode) {
    if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "profile needs n >= 1");
    for (const auto& c : coords_) {
        if (c.is_power && c.tau <= 0)
            throw Error(ErrorCode::InvalidArgument, "power-law exponent must be positive");
        if (!c.is_power && c.table_value <= 0)
            throw Error(ErrorCode::InvalidArgument, "sampled psi value must be positive");
    }
}

ApproxProfile ApproxProfile::power(std::vector<Rat> taus, ThresholdMode mode) {
    std::vector<Coordinate> coords;
    coords.reserve(taus.size());
    for (auto& t : taus) coords.push_back(Coordinate{true, std::move(t), Rat(0)});
    return ApproxProfile(std::move(coords), mode);
}

ApproxProfile ApproxProfile::table(std::vector<Rat> values, ThresholdMode mode) {
    std::vector<Coordinate> coords;
    coords.reserve(values.size());
    for (auto& v : values) coords.push_back(Coordinate{false, Rat(0), std::move(v)});
    return ApproxProfile(std::move(coords), mode);
}

bool ApproxProfile::all_power() const {
    for (const auto& c : coords_)
        if (!c.is_power) return false;
    return true;
}

Rat ApproxProfile::tau_sum() const {
    Rat s = 0;
    for (const auto& c : coords_) {
        if (!c.is_power) throw Error(ErrorCode::InvalidArgument, "profile has non-power coordinates");
        s += c.tau;
    }
    return s;
}

Rat ApproxProfile::tau(int i) const {
    const auto& c = coords_.at(static_cast<size_t>(i));
    if (!c.is_power) throw Error(ErrorCode::InvalidArgument, "coordinate is not a power law");
    return c.tau;
}

ExactPow ApproxProfile::psi(int i, const Int& N) const {
    const auto& c = coords_.at(static_cast<size_t>(i));
    if (!c.is_power) return ExactPow(c.table_value);
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    return ExactPow::power(Rat(N), -c.tau);
}

ExactPow ApproxProfile::psi_product(const Int& N) const {
    ExactPow prod{Rat(1)};
    for (int i = 0; i < dimension(); ++i) prod = prod * psi(i, N);
    return prod;
}

std::vector<int> ApproxProfile::thresholds(const Int& N, std::int64_t p) const {
    return thresholds(N, p, mode_);
}

std::vector<int> ApproxProfile::thresholds(const Int& N, std::int64_t p, ThresholdMode mode) const {
    std::vector<int> out;
    out.reserve(coords_.size());
    for (int i = 0; i < dimension(); ++i) out.push_back(threshold_exponent(psi(i, N), p, mode));
    return out;
}

} // namespace padic
