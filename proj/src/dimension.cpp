#include "padic/dimension.hpp"

#include <cmath>

#include "padic/ubiquity.hpp"

namespace padic {

WeightSplit make_weight_split(std::vector<Rat> tau_d, std::vector<Rat> tau_m) {
    if (tau_d.empty() || tau_m.empty())
        throw Error(ErrorCode::InvalidArgument, "both weight blocks must be nonempty");
    WeightSplit s;
    s.d = static_cast<int>(tau_d.size());
    s.m = static_cast<int>(tau_m.size());
    s.tau_d = std::move(tau_d);
    s.tau_m = std::move(tau_m);

    s.perm.resize(static_cast<size_t>(s.d));
    for (int i = 0; i < s.d; ++i) s.perm[static_cast<size_t>(i)] = i;
    std::stable_sort(s.perm.begin(), s.perm.end(), [&](int a, int b) {
        return s.tau_d[static_cast<size_t>(a)] > s.tau_d[static_cast<size_t>(b)];
    });
    for (int i : s.perm) s.tau_d_sorted.push_back(s.tau_d[static_cast<size_t>(i)]);

    Rat total = s.tau_m_sum();
    s.tau_m_sum_ok = total < Rat(s.m + 1);
    for (const auto& t : s.tau_d) total += t;
    s.total_sum_ok = total > Rat(s.n() + 1);
    s.all_above_one = true;
    for (const auto& t : s.tau_d)
        if (t <= 1) s.all_above_one = false;
    for (const auto& t : s.tau_m)
        if (t <= 1) s.all_above_one = false;
    return s;
}

Rat hyperplane_dimension(const WeightSplit& split) {
    if (!split.tau_m_sum_ok)
        throw Error(ErrorCode::ConstraintViolation, "sum of frozen weights must be < m+1");
    if (!split.total_sum_ok)
        throw Error(ErrorCode::ConstraintViolation, "total weight must exceed n+1");
    if (!split.all_above_one)
        throw Error(ErrorCode::ConstraintViolation, "every weight must exceed 1");
    Rat s = hyperplane_dimension_core<Rat>(split.tau_d_sorted, split.tau_m_sum(), split.n());
    if (!(s > 0 && s <= Rat(split.d)))
        throw Error(ErrorCode::Internal, "dimension left (0, d]");
    return s;
}

double hyperplane_dimension_double(std::vector<double> tau_d, const std::vector<double>& tau_m) {
    std::sort(tau_d.begin(), tau_d.end(), std::greater<double>());
    double tm = 0;
    for (double t : tau_m) tm += t;
    return hyperplane_dimension_core<double>(tau_d, tm, static_cast<int>(tau_d.size() + tau_m.size()));
}

Rat hyperplane_upper_bound(const std::vector<Rat>& tau, const Rat& tau_alpha) {
    const int n = static_cast<int>(tau.size());
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least one free coordinate");
    const Rat& tau_n = tau.back();
    Rat lower = tau_alpha - 1 > Rat(1) ? tau_alpha - 1 : Rat(1);
    if (!(lower < tau_n && tau_n < tau_alpha))
        throw Error(ErrorCode::ConstraintViolation,
                    "needs max(1, tau_alpha - 1) < tau_n < tau_alpha");
    std::vector<Rat> free_desc(tau.begin(), tau.end() - 1);
    std::sort(free_desc.begin(), free_desc.end(), std::greater<Rat>());
    const int d = n - 1;
    Rat best(0);
    bool first = true;
    for (int i = 0; i < d; ++i) {
        Rat num = Rat(n) + tau_alpha - 1 - tau_n;
        for (int j = i; j < d; ++j)
            num += free_desc[static_cast<size_t>(i)] - free_desc[static_cast<size_t>(j)];
        Rat cand = num / free_desc[static_cast<size_t>(i)];
        if (first || cand < best) best = cand;
        first = false;
    }
    return best;
}

DecayEstimate estimate_decay_exponent(const std::vector<DecaySample>& samples, double tolerance) {
    if (samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    for (size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].q <= 1 || samples[i].psi <= 0)
            throw Error(ErrorCode::InvalidArgument, "samples need q > 1 and psi > 0");
        if (i > 0 && samples[i].q <= samples[i - 1].q)
            throw Error(ErrorCode::InvalidArgument, "grid must be increasing");
    }
    DecayEstimate est;
    size_t first = samples.size() > 8 ? samples.size() - 8 : 0;
    for (size_t i = first; i < samples.size(); ++i)
        est.trace.push_back(-std::log(samples[i].psi) / std::log(samples[i].q));
    est.estimate = est.trace.back();
    double lo = est.trace[0], hi = est.trace[0];
    for (double v : est.trace) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    est.converged = (hi - lo) < tolerance;
    est.valid_profile = samples.back().psi < samples.front().psi && est.estimate > 0;
    return est;
}

namespace {

struct StageAggregate {
    int k = 0;
    Int members = 0;
    std::vector<double> weight_per_scale; // sum over q0 of nu^d * ball count, per i
};

// Stage cost at candidate s: the cheapest per-scale cover,
//   min_i  weight_i * (2^k)^{-tau_i s}.
double stage_cost(const StageAggregate& st, const std::vector<double>& tau_desc, double s) {
    double best = -1.0;
    for (size_t i = 0; i < tau_desc.size(); ++i) {
        double c = st.weight_per_scale[i] * std::exp2(-static_cast<double>(st.k) * tau_desc[i] * s);
        if (best < 0 || c < best) best = c;
    }
    return best < 0 ? 0.0 : best;
}

// Least-squares slope of log2 cost over the stage tail; positive means the
// cover cost still grows.
double tail_slope(const std::vector<StageAggregate>& stages, const std::vector<double>& tau_desc,
                  double s) {
    size_t first = stages.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = first; i < stages.size(); ++i) {
        double c = stage_cost(stages[i], tau_desc, s);
        if (c <= 0) continue;
        double xk = static_cast<double>(stages[i].k);
        double yk = std::log2(c);
        sx += xk;
        sy += yk;
        sxx += xk * xk;
        sxy += xk * yk;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

} // namespace

CoverReport cover_critical_exponent(const std::vector<PadicInt>& alpha, const WeightSplit& split,
                                    int K_max, double s_tol, const Budget& budget) {
    if (static_cast<int>(alpha.size()) != split.m)
        throw Error(ErrorCode::InvalidArgument, "alpha does not match the split");
    if (!split.valid())
        throw Error(ErrorCode::ConstraintViolation, "weight split violates the dimension constraints");
    if (K_max < 2) throw Error(ErrorCode::InvalidArgument, "K_max must be >= 2");
    if (std::pow(2.0, K_max + 1) > static_cast<double>(budget.max_ops))
        throw Error(ErrorCode::InfeasibleSize, "stage bound too large for the budget");

    const std::int64_t p = alpha[0].prime();
    const int d = split.d;

    std::vector<double> tau_desc;
    for (const auto& t : split.tau_d_sorted) tau_desc.push_back(rat_to_double(t));

    std::vector<StageAggregate> stages;
    bool any_member = false;
    for (int k = 1; k <= K_max; ++k) {
        StageAggregate st;
        st.k = k;
        st.weight_per_scale.assign(static_cast<size_t>(d), 0.0);
        Int lo = pow_int(2, static_cast<unsigned long>(k));
        Int hi = lo * 2;
        auto family = resonant_denominators(alpha, split.tau_m, lo, hi);
        st.members = Int(family.members.size());
        if (st.members > 0) any_member = true;
        for (const auto& member : family.members) {
            std::int64_t q0 = static_cast<std::int64_t>(member.q0);
            double nu = q0 == 1 ? 3.0 : 2.0 * static_cast<double>(euler_phi(q0));
            double rectangles = std::pow(nu, d);
            // per-coordinate radii q0^{-tau_j}: exact thresholds, then the
            // exact ball count prod_{j: t_j < t_i} p^{t_i - t_j}
            std::vector<int> t(static_cast<size_t>(d));
            for (int j = 0; j < d; ++j)
                t[static_cast<size_t>(j)] = threshold_exponent(
                    ExactPow::power(Rat(member.q0), -split.tau_d_sorted[static_cast<size_t>(j)]), p,
                    ThresholdMode::NonStrict);
            for (int i = 0; i < d; ++i) {
                double balls = 1.0;
                for (int j = 0; j < d; ++j) {
                    if (t[static_cast<size_t>(j)] < t[static_cast<size_t>(i)])
                        balls *= std::pow(static_cast<double>(p),
                                          t[static_cast<size_t>(i)] - t[static_cast<size_t>(j)]);
                }
                st.weight_per_scale[static_cast<size_t>(i)] += rectangles * balls;
            }
        }
        stages.push_back(std::move(st));
    }

    CoverReport rep;
    if (!any_member) {
        rep.no_resonant_denominators = true;
        for (const auto& st : stages) rep.stages.push_back(CoverStage{st.k, st.members, 0.0});
        return rep;
    }

    double lo = 0.0, hi = static_cast<double>(d) + 1.0;
    while (hi - lo > s_tol) {
        double mid = (lo + hi) / 2;
        if (tail_slope(stages, tau_desc, mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    rep.critical_s = (lo + hi) / 2;
    for (const auto& st : stages)
        rep.stages.push_back(CoverStage{st.k, st.members, stage_cost(st, tau_desc, rep.critical_s)});
    return rep;
}

} // namespace padic
