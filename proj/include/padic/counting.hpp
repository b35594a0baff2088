#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic/exact.hpp"
#include "padic/padic_int.hpp"
#include "padic/profile.hpp"

namespace padic {

struct Budget {
    std::int64_t max_ops = 100'000'000;
};

enum class CountMethod { Brute, Fast };

// Solutions (q_0, ..., q_n) of the simultaneous approximation system
//   0 < q_0 <= N,  |q_i| <= N,  |q_0 x_i - q_i|_p below psi_i(N)
// with the comparison discretized by the profile's threshold mode.
struct CountResult {
    Int count = 0;
    Int N = 0;
    std::vector<int> thresholds;
    std::optional<std::vector<std::vector<Int>>> solutions;
    CountMethod method = CountMethod::Fast;
};

// Exhaustive scan; materializes every solution. Feasible for N^{n+1} within
// the operation budget.
CountResult count_brute(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                        const Budget& budget = {});

// Closed-form congruence counting per q_0; no scan. Agrees with count_brute
// on every input.
CountResult count_fast(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                       const Budget& budget = {});

// Exact membership test for one candidate tuple (q_0, ..., q_n).
bool is_solution(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                 const std::vector<Int>& q);

struct BoundValue {
    bool applicable = false;
    bool satisfied = false;
    double value = 0.0;
    std::string note;
};

struct BoundReport {
    CountResult result;
    BoundValue lower_stmt;   // (1/p)   N^{n+1-sum tau} - 1
    BoundValue lower_proof;  // p^{-n}  N^{n+1-sum tau} - 1
    BoundValue upper_c1;     // C1 N^{n+1} prod psi_i(N)
    BoundValue upper_exponent_gap; // N^{tau_hat - tau + eps}, n = 1 only
};

// Evaluates the counting bounds for a power-law profile at one N. Bounds whose
// preconditions fail are reported as not applicable rather than errors.
BoundReport evaluate_bounds(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                            const Rat& eps, std::optional<double> tau_hat = std::nullopt,
                            const Budget& budget = {});

// Constructive pigeonhole: buckets the (N+1)^{n+1} points (q_0 x - q) by
// residue vector and returns the difference of two points sharing a bucket.
// The returned tuple is a genuine solution with q_0 > 0.
std::vector<Int> pigeonhole_witness(const std::vector<PadicInt>& x, const std::vector<Rat>& tau,
                                    const Int& N, const Budget& budget = {});

// Nonzero integer vector with max |x_i| <= H and |x_0 alpha_i - x_i|_p < p H^{-tau_i}
// for all i; requires sum tau_i = n+1. Existence is a theorem, so failure to
// find one is reported as an internal defect.
std::vector<Int> minkowski_solve(const std::vector<PadicInt>& alpha, const std::vector<Rat>& tau,
                                 const Int& H, const Budget& budget = {});

struct ExponentTracePoint {
    Int Q;
    double sigma = 0.0;
    bool capped = false;
};

struct ExponentEstimate {
    double tau_hat = 0.0;
    bool truncated = false; // precision cap bound the tail estimate
    std::vector<ExponentTracePoint> trace;
};

// Estimates the Diophantine exponent by the running max of sigma(Q) over a
// geometric schedule. Any finite estimate is a lower bound by construction;
// tau_hat takes the max over the last tail_count schedule points.
ExponentEstimate estimate_diophantine_exponent(const std::vector<PadicInt>& x, const Int& N_max,
                                               int schedule_ratio = 2, int tail_count = 3);

} // namespace padic
