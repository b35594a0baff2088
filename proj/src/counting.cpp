#include "padic/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace padic {

namespace {

struct Instance {
    std::int64_t p = 0;
    int n = 0;
    std::vector<int> t;       // clamped to >= 0
    std::vector<Int> modulus; // p^t
    std::vector<Int> trunc;   // x_i mod p^t
};

Instance prepare(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N) {
    if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty point");
    if (static_cast<int>(x.size()) != psi.dimension())
        throw Error(ErrorCode::InvalidArgument, "profile dimension does not match point");
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    Instance inst;
    inst.p = x[0].prime();
    inst.n = psi.dimension();
    for (const auto& xi : x) {
        if (xi.prime() != inst.p)
            throw Error(ErrorCode::InvalidArgument, "mixed primes in one point");
    }
    inst.t = psi.thresholds(N, inst.p);
    for (int i = 0; i < inst.n; ++i) {
        if (inst.t[static_cast<size_t>(i)] < 0)
            throw Error(ErrorCode::ThresholdNegative,
                        "psi_" + std::to_string(i) + "(N) >= p makes the constraint vacuous");
        if (inst.t[static_cast<size_t>(i)] > x[static_cast<size_t>(i)].precision())
            throw Error(ErrorCode::InsufficientPrecision,
                        "coordinate " + std::to_string(i) + " needs " +
                            std::to_string(inst.t[static_cast<size_t>(i)]) + " digits");
        inst.modulus.push_back(pow_int(inst.p, static_cast<unsigned long>(inst.t[static_cast<size_t>(i)])));
        inst.trunc.push_back(x[static_cast<size_t>(i)].truncate(inst.t[static_cast<size_t>(i)]));
    }
    return inst;
}

// Number of q in [-N, N] with q congruent to r mod m, r canonical in [0, m).
Int residues_in_range(const Int& r, const Int& m, const Int& N) {
    Int c = floor_div(N - r, m) + floor_div(N + r, m) + 1;
    return c < 0 ? Int(0) : c;
}

void check_scan_budget(const Instance& inst, const Int& N, const Budget& budget) {
    double est = static_cast<double>(N);
    for (int i = 0; i < inst.n; ++i) est *= 2.0 * static_cast<double>(N) + 1.0;
    if (est > static_cast<double>(budget.max_ops))
        throw Error(ErrorCode::InfeasibleSize, "scan of ~" + std::to_string(est) + " tuples over budget");
}

} // namespace

CountResult count_brute(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                        const Budget& budget) {
    Instance inst = prepare(x, psi, N);
    check_scan_budget(inst, N, budget);

    CountResult res;
    res.N = N;
    res.thresholds = inst.t;
    res.method = CountMethod::Brute;
    res.solutions.emplace();

    std::vector<Int> residue(static_cast<size_t>(inst.n), Int(0));
    std::vector<std::vector<Int>> matches(static_cast<size_t>(inst.n));
    for (Int q0 = 1; q0 <= N; ++q0) {
        for (int i = 0; i < inst.n; ++i) {
            auto& r = residue[static_cast<size_t>(i)];
            r += inst.trunc[static_cast<size_t>(i)];
            if (r >= inst.modulus[static_cast<size_t>(i)]) r -= inst.modulus[static_cast<size_t>(i)];
        }
        bool feasible = true;
        for (int i = 0; i < inst.n && feasible; ++i) {
            auto& list = matches[static_cast<size_t>(i)];
            list.clear();
            for (Int q = -N; q <= N; ++q) {
                if (mod_canonical(q, inst.modulus[static_cast<size_t>(i)]) == residue[static_cast<size_t>(i)])
                    list.push_back(q);
            }
            if (list.empty()) feasible = false;
        }
        if (!feasible) continue;
        // emit the cartesian product of per-coordinate matches
        std::vector<size_t> idx(static_cast<size_t>(inst.n), 0);
        while (true) {
            std::vector<Int> sol;
            sol.reserve(static_cast<size_t>(inst.n) + 1);
            sol.push_back(q0);
            for (int i = 0; i < inst.n; ++i) sol.push_back(matches[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]);
            res.solutions->push_back(std::move(sol));
            res.count += 1;
            if (res.solutions->size() > 4'000'000u)
                throw Error(ErrorCode::InfeasibleSize, "too many solutions to materialize");
            int k = inst.n - 1;
            while (k >= 0 && ++idx[static_cast<size_t>(k)] == matches[static_cast<size_t>(k)].size()) {
                idx[static_cast<size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    return res;
}

CountResult count_fast(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                       const Budget& budget) {
    Instance inst = prepare(x, psi, N);
    if (static_cast<double>(N) * inst.n > static_cast<double>(budget.max_ops))
        throw Error(ErrorCode::InfeasibleSize, "q0 range over budget");

    CountResult res;
    res.N = N;
    res.thresholds = inst.t;
    res.method = CountMethod::Fast;

    std::vector<Int> residue(static_cast<size_t>(inst.n), Int(0));
    for (Int q0 = 1; q0 <= N; ++q0) {
        Int per = 1;
        for (int i = 0; i < inst.n; ++i) {
            auto& r = residue[static_cast<size_t>(i)];
            r += inst.trunc[static_cast<size_t>(i)];
            if (r >= inst.modulus[static_cast<size_t>(i)]) r -= inst.modulus[static_cast<size_t>(i)];
            if (per != 0) per *= residues_in_range(r, inst.modulus[static_cast<size_t>(i)], N);
        }
        res.count += per;
    }
    return res;
}

bool is_solution(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                 const std::vector<Int>& q) {
    Instance inst = prepare(x, psi, N);
    if (static_cast<int>(q.size()) != inst.n + 1)
        throw Error(ErrorCode::InvalidArgument, "tuple has wrong length");
    if (q[0] <= 0 || q[0] > N) return false;
    for (int i = 1; i <= inst.n; ++i) {
        if (q[static_cast<size_t>(i)] > N || q[static_cast<size_t>(i)] < -N) return false;
        const Int& m = inst.modulus[static_cast<size_t>(i - 1)];
        if (mod_canonical(q[0] * inst.trunc[static_cast<size_t>(i - 1)] - q[static_cast<size_t>(i)], m) != 0)
            return false;
    }
    return true;
}

BoundReport evaluate_bounds(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N,
                            const Rat& eps, std::optional<double> tau_hat, const Budget& budget) {
    if (!psi.all_power())
        throw Error(ErrorCode::InvalidArgument, "bound evaluation needs a power-law profile");
    if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "eps must be positive");

    BoundReport report;
    report.result = count_fast(x, psi, N, budget);
    const int n = psi.dimension();
    const std::int64_t p = x[0].prime();
    const Rat tau_sum = psi.tau_sum();
    const Rat growth = Rat(n + 1) - tau_sum; // exponent n+1 - sum tau

    bool taus_above_one = true;
    for (int i = 0; i < n; ++i)
        if (psi.tau(i) <= 1) taus_above_one = false;
    const bool power_box = taus_above_one && tau_sum < Rat(n + 1);

    const Int& count = report.result.count;

    auto lower_bound_value = [&](const Rat& coeff) {
        ExactPow bound(coeff, Rat(N), growth);
        BoundValue bv;
        bv.applicable = power_box;
        bv.value = bound.to_double() - 1.0;
        // count >= coeff N^growth - 1  <=>  count + 1 >= coeff N^growth
        bv.satisfied = bv.applicable && bound.cmp(Rat(count + 1)) <= 0;
        if (!bv.applicable) bv.note = "needs sum tau < n+1 and every tau > 1";
        return bv;
    };
    report.lower_stmt = lower_bound_value(Rat(1, p));
    report.lower_proof = lower_bound_value(Rat(1, pow_int(p, static_cast<unsigned long>(n))));

    {
        RatInterval c1 = c1_constant(n);
        BoundValue bv;
        bv.applicable = power_box;
        bv.value = c1.mid_double() * ExactPow::power(Rat(N), growth).to_double();
        if (bv.applicable) {
            ExactPow outer(c1.hi, Rat(N), growth);
            bv.satisfied = outer.cmp(Rat(count)) >= 0;
            if (!c1.is_point()) {
                ExactPow inner(c1.lo, Rat(N), growth);
                if (inner.cmp(Rat(count)) < 0) bv.note = "decided with the outer C1 bound";
            }
        } else {
            bv.note = "needs sum tau < n+1 and every tau > 1";
        }
        report.upper_c1 = bv;
    }

    {
        BoundValue bv;
        if (n == 1 && tau_hat.has_value()) {
            double th = *tau_hat;
            double tau = rat_to_double(psi.tau(0));
            bv.applicable = std::max(1.0, th - 1.0) < tau && tau < th;
            if (bv.applicable) {
                double e = th - tau + rat_to_double(eps);
                bv.value = std::pow(static_cast<double>(N), e);
                // proof form: refutes count > 2 N^{tau_hat - tau + eps}
                bv.satisfied = static_cast<double>(count) <= 2.0 * bv.value;
                bv.note = "estimate-based; factor-2 proof form";
            } else {
                bv.note = "needs max(1, tau_hat - 1) < tau < tau_hat";
            }
        } else {
            bv.note = "needs n = 1 and a tau_hat estimate";
        }
        report.upper_exponent_gap = bv;
    }
    return report;
}

namespace {

// Shared collision scan over tuples q in [lo_0, hi_0] x ... with residues
// key_i(q) = (q_0 a_i - q_i) mod m_i. Returns the difference of the first two
// tuples sharing a key (subject to `need_distinct_q0`).
std::optional<std::vector<Int>> collision_difference(const std::vector<Int>& a,
                                                     const std::vector<Int>& modulus, const Int& hi,
                                                     bool need_distinct_q0, const Budget& budget) {
    const int n = static_cast<int>(a.size());
    double points = 1.0;
    for (int i = 0; i <= n; ++i) points *= static_cast<double>(hi) + 1.0;
    if (points > static_cast<double>(budget.max_ops))
        throw Error(ErrorCode::InfeasibleSize, "pigeonhole scan over budget");

    bool packable = true;
    Int packed_span = 1;
    for (const auto& m : modulus) {
        packed_span *= m;
        if (packed_span > Int("4611686018427387904")) { // 2^62
            packable = false;
            break;
        }
    }

    std::vector<Int> q(static_cast<size_t>(n) + 1, Int(0)); // lexicographic odometer, q[0] most significant
    std::unordered_map<std::uint64_t, std::vector<Int>> flat;
    std::map<std::vector<Int>, std::vector<Int>> deep;

    while (true) {
        std::vector<Int> key(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            key[static_cast<size_t>(i)] =
                mod_canonical(q[0] * a[static_cast<size_t>(i)] - q[static_cast<size_t>(i) + 1],
                              modulus[static_cast<size_t>(i)]);
        const std::vector<Int>* prev = nullptr;
        if (packable) {
            std::uint64_t k = 0;
            for (int i = 0; i < n; ++i)
                k = k * static_cast<std::uint64_t>(modulus[static_cast<size_t>(i)]) +
                    static_cast<std::uint64_t>(key[static_cast<size_t>(i)]);
            auto [it, inserted] = flat.try_emplace(k, q);
            if (!inserted) prev = &it->second;
        } else {
            auto [it, inserted] = deep.try_emplace(key, q);
            if (!inserted) prev = &it->second;
        }
        if (prev != nullptr && (!need_distinct_q0 || (*prev)[0] != q[0])) {
            std::vector<Int> diff(static_cast<size_t>(n) + 1);
            for (int i = 0; i <= n; ++i)
                diff[static_cast<size_t>(i)] = q[static_cast<size_t>(i)] - (*prev)[static_cast<size_t>(i)];
            return diff;
        }
        int k = n;
        while (k >= 0 && q[static_cast<size_t>(k)] == hi) {
            q[static_cast<size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
        ++q[static_cast<size_t>(k)];
    }
    return std::nullopt;
}

} // namespace

std::vector<Int> pigeonhole_witness(const std::vector<PadicInt>& x, const std::vector<Rat>& tau,
                                    const Int& N, const Budget& budget) {
    auto psi = ApproxProfile::power(tau, ThresholdMode::Strict);
    Instance inst = prepare(x, psi, N);

    auto diff = collision_difference(inst.trunc, inst.modulus, N, /*need_distinct_q0=*/true, budget);
    if (!diff)
        throw Error(ErrorCode::NoOverfullBucket,
                    "no residue bucket held two points with distinct q0; N below the pigeonhole threshold");
    if (!is_solution(x, psi, N, *diff))
        throw Error(ErrorCode::Internal, "pigeonhole produced an invalid witness");
    return *diff;
}

std::vector<Int> minkowski_solve(const std::vector<PadicInt>& alpha, const std::vector<Rat>& tau,
                                 const Int& H, const Budget& budget) {
    if (alpha.empty() || alpha.size() != tau.size())
        throw Error(ErrorCode::InvalidArgument, "coefficient/weight size mismatch");
    if (H < 1) throw Error(ErrorCode::InvalidArgument, "H must be >= 1");
    const int n = static_cast<int>(alpha.size());
    Rat tau_sum = 0;
    for (const auto& t : tau) tau_sum += t;
    if (tau_sum != Rat(n + 1))
        throw Error(ErrorCode::ConstraintViolation, "weights must sum to exactly n+1");
    const std::int64_t p = alpha[0].prime();

    std::vector<int> t(static_cast<size_t>(n));
    std::vector<Int> modulus(static_cast<size_t>(n)), trunc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // |L_i|_p < p H^{-tau_i}  <=>  v(L_i) >= strict threshold of p H^{-tau_i}
        ExactPow bound(Rat(p), Rat(H), -tau[static_cast<size_t>(i)]);
        int ti = threshold_exponent(bound, p, ThresholdMode::Strict);
        if (ti < 0) ti = 0;
        if (ti > alpha[static_cast<size_t>(i)].precision())
            throw Error(ErrorCode::InsufficientPrecision,
                        "coefficient " + std::to_string(i) + " needs " + std::to_string(ti) + " digits");
        t[static_cast<size_t>(i)] = ti;
        modulus[static_cast<size_t>(i)] = pow_int(p, static_cast<unsigned long>(ti));
        trunc[static_cast<size_t>(i)] = alpha[static_cast<size_t>(i)].truncate(ti);
    }

    auto diff = collision_difference(trunc, modulus, H, /*need_distinct_q0=*/false, budget);
    if (!diff)
        throw Error(ErrorCode::Internal,
                    "linear forms search found no solution; existence is guaranteed");
    // Exact validation of the returned vector.
    bool nonzero = false;
    for (const auto& c : *diff)
        if (c != 0) nonzero = true;
    if (!nonzero) throw Error(ErrorCode::Internal, "zero vector from collision search");
    for (int i = 0; i <= n; ++i)
        if ((*diff)[static_cast<size_t>(i)] > H || (*diff)[static_cast<size_t>(i)] < -H)
            throw Error(ErrorCode::Internal, "solution exceeds the height bound");
    for (int i = 0; i < n; ++i) {
        Int v = (*diff)[0] * trunc[static_cast<size_t>(i)] - (*diff)[static_cast<size_t>(i) + 1];
        if (mod_canonical(v, modulus[static_cast<size_t>(i)]) != 0)
            throw Error(ErrorCode::Internal, "solution fails a form inequality");
    }
    return *diff;
}

ExponentEstimate estimate_diophantine_exponent(const std::vector<PadicInt>& x, const Int& N_max,
                                               int schedule_ratio, int tail_count) {
    if (x.empty()) throw Error(ErrorCode::InvalidArgument, "empty point");
    if (N_max < 2) throw Error(ErrorCode::InvalidArgument, "N_max must be >= 2");
    if (schedule_ratio < 2) throw Error(ErrorCode::InvalidArgument, "schedule ratio must be >= 2");
    const std::int64_t p = x[0].prime();
    const int n = static_cast<int>(x.size());
    const double logp = std::log(static_cast<double>(p));

    ExponentEstimate est;
    for (Int Q = schedule_ratio; Q <= N_max; Q *= schedule_ratio) {
        ExponentTracePoint pt;
        pt.Q = Q;
        const double logQ = std::log(static_cast<double>(Q));
        double best = 0.0;
        bool capped_at_best = false;
        for (Int q0 = 1; q0 <= Q; ++q0) {
            double total = 0.0;
            bool capped = false;
            for (int i = 0; i < n; ++i) {
                const auto& xi = x[static_cast<size_t>(i)];
                const int L = xi.precision();
                int reach = 0;
                Int m = 1;
                for (int tlev = 1; tlev <= L; ++tlev) {
                    m *= p;
                    Int r = mod_canonical(q0 * xi.truncate(tlev), m);
                    if (r <= Q || m - r <= Q)
                        reach = tlev;
                    else
                        break;
                }
                if (reach == L) capped = true;
                total += static_cast<double>(reach) * logp / logQ;
            }
            if (total > best) {
                best = total;
                capped_at_best = capped;
            }
        }
        pt.sigma = best;
        pt.capped = capped_at_best;
        est.trace.push_back(pt);
    }

    if (est.trace.empty()) throw Error(ErrorCode::InvalidArgument, "empty schedule");
    size_t first_tail = est.trace.size() > static_cast<size_t>(tail_count)
                            ? est.trace.size() - static_cast<size_t>(tail_count)
                            : 0;
    for (size_t i = first_tail; i < est.trace.size(); ++i) {
        if (est.trace[i].sigma > est.tau_hat) est.tau_hat = est.trace[i].sigma;
        if (est.trace[i].capped) est.truncated = true;
    }
    return est;
}

} // namespace padic
