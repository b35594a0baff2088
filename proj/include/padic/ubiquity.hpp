#pragma once

#include <optional>
#include <set>
#include <vector>

#include "padic/dimension.hpp"

namespace padic {

// Single ball in Z_p^d: per-coordinate residues b_i mod p^{l_i}. Level 0 in
// every coordinate is the full space.
struct Ball {
    std::vector<int> levels;
    std::vector<Int> residues;

    static Ball full_space(int d) {
        return Ball{std::vector<int>(static_cast<size_t>(d), 0),
                    std::vector<Int>(static_cast<size_t>(d), Int(0))};
    }
    Rat measure(std::int64_t p) const;
};

// Finite union of balls of common per-coordinate radius p^{-t_i}, stored as
// canonical residue tuples. Distinct canonical centers give disjoint balls in
// an ultrametric, so the measure is exactly |centers| * prod p^{-t_i}.
struct BallUnion {
    std::int64_t p = 2;
    std::vector<int> levels;
    std::set<std::vector<Int>> centers;

    int dimension() const { return static_cast<int>(levels.size()); }
    Rat measure() const;
    // Splits every ball into p sub-balls along one coordinate; measure is
    // unchanged.
    BallUnion refine(int coordinate) const;
};

struct ResonantMember {
    Int q0;
    std::vector<Int> numerators; // one witness per frozen coordinate
    bool coprime_to_p = true;
};

// Denominators q0 in a window (lo, hi] admitting coprime numerators with
// |alpha_i - q_i/q0|_p < q0^{-tau_i} for every frozen coordinate.
struct ResonantFamily {
    std::int64_t p = 2;
    std::vector<Rat> tau;
    Int lo = 0, hi = 0;
    std::vector<ResonantMember> members; // ascending q0
};

ResonantFamily resonant_denominators(const std::vector<PadicInt>& alpha, const std::vector<Rat>& tau_m,
                                     const Int& lo, const Int& hi, bool require_coprime_p = false);

// Union of the rectangles around the family's rational points: centers
// q * q0^{-1} mod p^{t_i} over admissible numerators q, with t_i the
// non-strict threshold of radius_i. Members with p | q0 are excluded and
// counted (the density argument reduces to gcd(q0, p) = 1). An optional
// restriction ball is intersected exactly.
BallUnion resonant_ball_union(const ResonantFamily& family, int d, const std::vector<ExactPow>& radii,
                              const std::optional<Ball>& restrict_to = std::nullopt,
                              const Budget& budget = {}, Int* excluded_members = nullptr);

struct DensityReport {
    Rat density = 0;       // measure(U ∩ B) / measure(B), exact
    double c_value = 0.0;  // 1 - 3^d C1(m) M^{-(n+1-sum tau_m)}
    bool pass = false;     // density >= c, decided exactly
    Int members = 0;
    Int balls = 0;
    Int excluded_members = 0;
    std::vector<Rat> v;    // exponent allocation used for the radii
};

// Finite-stage local ubiquity check: resonant denominators in (M^k, M^{k+1}],
// rectangles of radii (M^{k+1})^{-v_i}, density within B compared against the
// constant c from the covering argument. Requires M^(n+1-sum tau_m) > 3^d C1(m).
DensityReport ubiquity_density(const std::vector<PadicInt>& alpha, const WeightSplit& split,
                               std::int64_t M, int k, const std::optional<Ball>& B = std::nullopt,
                               const Budget& budget = {});

} // namespace padic
