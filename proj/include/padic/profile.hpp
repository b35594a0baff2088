#pragma once

#include <vector>

#include "padic/exact.hpp"

namespace padic {

// Discretization of "|y|_p compared against psi":
//   NonStrict: the unique t with p^-t <= psi < p^-t+1, so |y|_p <= psi <=> v(y) >= t.
//   Strict: the smallest t with p^-t < psi, so |y|_p < psi <=> v(y) >= t.
enum class ThresholdMode { NonStrict, Strict };

int threshold_exponent(const ExactPow& psi, std::int64_t p, ThresholdMode mode);
int threshold_exponent(const Rat& psi, std::int64_t p, ThresholdMode mode);

// An n-tuple of approximation functions. Each coordinate is either a power
// law q^-tau (exact at integer arguments) or a sampled value fixed at the N
// of interest.
class ApproxProfile {
public:
    struct Coordinate {
        bool is_power = true;
        Rat tau;         // power-law exponent, > 0
        Rat table_value; // sampled value, > 0
    };

    ApproxProfile(std::vector<Coordinate> coords, ThresholdMode mode);

    static ApproxProfile power(std::vector<Rat> taus, ThresholdMode mode);
    static ApproxProfile table(std::vector<Rat> values, ThresholdMode mode);

    int dimension() const { return static_cast<int>(coords_.size()); }
    ThresholdMode mode() const { return mode_; }
    const std::vector<Coordinate>& coordinates() const { return coords_; }

    bool all_power() const;
    // Sum of power-law exponents; requires all_power().
    Rat tau_sum() const;
    Rat tau(int i) const;

    // psi_i(N) as an exact value.
    ExactPow psi(int i, const Int& N) const;
    // prod_i psi_i(N).
    ExactPow psi_product(const Int& N) const;

    // Per-coordinate threshold exponents at N, in this profile's mode.
    std::vector<int> thresholds(const Int& N, std::int64_t p) const;
    std::vector<int> thresholds(const Int& N, std::int64_t p, ThresholdMode mode) const;

private:
    std::vector<Coordinate> coords_;
    ThresholdMode mode_;
};

} // namespace padic
