#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "padic/counting.hpp"
#include "padic/exact.hpp"
#include "padic/padic_int.hpp"

namespace padic {

// Weight vector split across a coordinate hyperplane: d free coordinates with
// weights tau_d, m frozen coordinates with weights tau_m. Flags are recomputed
// from the fields on construction.
struct WeightSplit {
    int d = 0, m = 0;
    std::vector<Rat> tau_d;        // original order
    std::vector<Rat> tau_m;
    std::vector<Rat> tau_d_sorted; // descending copy
    std::vector<int> perm;         // tau_d_sorted[i] == tau_d[perm[i]]

    bool tau_m_sum_ok = false; // sum tau_m < m+1
    bool total_sum_ok = false; // sum of all tau > n+1
    bool all_above_one = false;

    int n() const { return d + m; }
    Rat tau_m_sum() const { return std::accumulate(tau_m.begin(), tau_m.end(), Rat(0)); }
    Rat budget() const { return Rat(n() + 1) - tau_m_sum(); }
    bool valid() const { return tau_m_sum_ok && total_sum_ok && all_above_one; }
};

WeightSplit make_weight_split(std::vector<Rat> tau_d, std::vector<Rat> tau_m);

// Splits `budget` across descending weights: filling from the last index,
//   v_{d-i} = min( tau_{d-i}, (budget - sum_{j > d-i} v_j) / (d-i) ).
// Shifts t_i = tau_i - v_i. Throws OUT_OF_RANGE when some v_i <= 1.
template <typename S>
struct ExponentAllocation {
    std::vector<S> v;
    std::vector<S> t;
};

template <typename S>
ExponentAllocation<S> allocate_exponent_budget(const std::vector<S>& tau_desc, const S& budget) {
    const int d = static_cast<int>(tau_desc.size());
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "empty weight vector");
    for (int i = 0; i + 1 < d; ++i)
        if (tau_desc[static_cast<size_t>(i)] < tau_desc[static_cast<size_t>(i) + 1])
            throw Error(ErrorCode::InvalidArgument, "weights must be sorted descending");
    ExponentAllocation<S> out;
    out.v.assign(static_cast<size_t>(d), S(0));
    S used(0);
    for (int i = 0; i < d; ++i) {
        int idx = d - 1 - i; // last index first
        S share = (budget - used) / S(idx + 1);
        const S& tau = tau_desc[static_cast<size_t>(idx)];
        out.v[static_cast<size_t>(idx)] = tau < share ? tau : share;
        used += out.v[static_cast<size_t>(idx)];
    }
    for (const S& vi : out.v)
        if (!(vi > S(1)))
            throw Error(ErrorCode::OutOfRange, "allocation produced a component <= 1");
    out.t.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i)
        out.t.push_back(tau_desc[static_cast<size_t>(i)] - out.v[static_cast<size_t>(i)]);
    return out;
}

// One candidate of the rectangle mass-transference bound: the partition at a
// value A drawn from {a_i} ∪ {a_i + t_i}.
template <typename S>
struct TransferCandidate {
    S value;
    std::vector<int> K1, K2, K3;
    S term;
};

template <typename S>
struct TransferResult {
    S s;
    std::vector<TransferCandidate<S>> breakdown;
};

// Lower bound for the dimension of the shrunken limsup rectangles:
//   min over A of sum_{K1} d_j + sum_{K2} d_j + k sum_{K3} d_j
//                 + (1-k)(sum_{K3} a_j d_j - sum_{K2} t_j d_j)/A
// with K1 = {j : a_j >= A}, K2 = {j : a_j + t_j <= A} \ K1, K3 the rest.
template <typename S>
TransferResult<S> mass_transference_lower_bound(const std::vector<S>& a, const std::vector<S>& t,
                                                const std::vector<S>& delta, const S& k) {
    const int n = static_cast<int>(a.size());
    if (n == 0 || t.size() != a.size() || delta.size() != a.size())
        throw Error(ErrorCode::InvalidArgument, "length mismatch");
    if (k < S(0) || !(k < S(1))) throw Error(ErrorCode::InvalidArgument, "k must lie in [0, 1)");
    std::vector<S> candidates;
    for (int i = 0; i < n; ++i) {
        candidates.push_back(a[static_cast<size_t>(i)]);
        candidates.push_back(a[static_cast<size_t>(i)] + t[static_cast<size_t>(i)]);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    TransferResult<S> res;
    bool first = true;
    for (const S& A : candidates) {
        TransferCandidate<S> cand;
        cand.value = A;
        S sum12(0), k3_delta(0), k3_weighted(0), k2_shift(0);
        for (int j = 0; j < n; ++j) {
            if (a[static_cast<size_t>(j)] >= A) {
                cand.K1.push_back(j);
                sum12 += delta[static_cast<size_t>(j)];
            } else if (a[static_cast<size_t>(j)] + t[static_cast<size_t>(j)] <= A) {
                cand.K2.push_back(j);
                sum12 += delta[static_cast<size_t>(j)];
                k2_shift += t[static_cast<size_t>(j)] * delta[static_cast<size_t>(j)];
            } else {
                cand.K3.push_back(j);
                k3_delta += delta[static_cast<size_t>(j)];
                k3_weighted += a[static_cast<size_t>(j)] * delta[static_cast<size_t>(j)];
            }
        }
        cand.term = sum12 + k * k3_delta + (S(1) - k) * (k3_weighted - k2_shift) / A;
        if (first || cand.term < res.s) res.s = cand.term;
        first = false;
        res.breakdown.push_back(std::move(cand));
    }
    return res;
}

// Closed-form dimension on the descending weights:
//   min_{1<=i<=d} (n+1 - sum tau_m + sum_{j=i}^{d} (tau_i - tau_j)) / tau_i.
// The suffix sum includes ties exactly once (any j < i with tau_j = tau_i
// contributes zero, so the two readings of the tie set agree).
template <typename S>
S hyperplane_dimension_core(const std::vector<S>& tau_d_desc, const S& tau_m_sum, int n) {
    const int d = static_cast<int>(tau_d_desc.size());
    S best(0);
    bool first = true;
    for (int i = 0; i < d; ++i) {
        S num = S(n + 1) - tau_m_sum;
        for (int j = i; j < d; ++j)
            num += tau_d_desc[static_cast<size_t>(i)] - tau_d_desc[static_cast<size_t>(j)];
        S cand = num / tau_d_desc[static_cast<size_t>(i)];
        if (first || cand < best) best = cand;
        first = false;
    }
    return best;
}

// Closed form with the validity flags enforced; throws CONSTRAINT_VIOLATION
// naming the failed flag.
Rat hyperplane_dimension(const WeightSplit& split);
double hyperplane_dimension_double(std::vector<double> tau_d, const std::vector<double>& tau_m);

// Upper bound when only the exponent tau_alpha of the frozen coordinate is
// known (one frozen coordinate, weight tau_n last):
//   min_{1<=i<=n-1} (n + tau_alpha - 1 - tau_n + sum_{tau_j <= tau_i, j != n} (tau_i - tau_j)) / tau_i.
Rat hyperplane_upper_bound(const std::vector<Rat>& tau, const Rat& tau_alpha);

struct DecaySample {
    double q = 0.0;
    double psi = 0.0;
};

struct DecayEstimate {
    double estimate = 0.0;        // -log psi(q) / log q at the largest grid point
    std::vector<double> trace;    // estimates at the last (up to) 8 grid points
    bool converged = false;       // max pairwise spread of the trace < tolerance
    bool valid_profile = true;    // psi must tend to 0
};

DecayEstimate estimate_decay_exponent(const std::vector<DecaySample>& samples, double tolerance);

struct CoverStage {
    int k = 0;
    Int members = 0;
    double cost = 0.0; // stage cost evaluated at the reported critical s
};

struct CoverReport {
    double critical_s = 0.0;
    bool no_resonant_denominators = false;
    std::vector<CoverStage> stages;
};

// Finite-stage cover-cost estimator: at stage k the resonant denominators in
// (2^k, 2^{k+1}] contribute (#numerators)^d rectangles, each covered by the
// exact p-adic ball count at scale tau_i, with per-ball cost (2^k)^{-tau_i s}.
// Bisection locates the s where the tail of the stage costs flips from growth
// to decay.
CoverReport cover_critical_exponent(const std::vector<PadicInt>& alpha, const WeightSplit& split,
                                    int K_max, double s_tol = 0.01, const Budget& budget = {});

} // namespace padic
