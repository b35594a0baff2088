#include "padic/ubiquity.hpp"

#include <algorithm>
#include <map>

namespace padic {

namespace {

// Representatives of r mod m inside [-bound, bound], ascending.
std::vector<Int> reps_in_range(const Int& r, const Int& m, const Int& bound) {
    std::vector<Int> out;
    for (Int q = r - m * floor_div(r + bound, m); q <= bound; q += m)
        if (q >= -bound) out.push_back(q);
    return out;
}

} // namespace

Rat Ball::measure(std::int64_t p) const {
    Rat m(1);
    for (int l : levels) m /= Rat(pow_int(p, static_cast<unsigned long>(l)));
    return m;
}

Rat BallUnion::measure() const {
    Rat per(1);
    for (int l : levels) per /= Rat(pow_int(p, static_cast<unsigned long>(l)));
    return Rat(Int(centers.size())) * per;
}

BallUnion BallUnion::refine(int coordinate) const {
    if (coordinate < 0 || coordinate >= dimension())
        throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
    BallUnion out;
    out.p = p;
    out.levels = levels;
    out.levels[static_cast<size_t>(coordinate)] += 1;
    Int step = pow_int(p, static_cast<unsigned long>(levels[static_cast<size_t>(coordinate)]));
    for (const auto& c : centers) {
        for (std::int64_t j = 0; j < p; ++j) {
            auto cc = c;
            cc[static_cast<size_t>(coordinate)] += Int(j) * step;
            out.centers.insert(std::move(cc));
        }
    }
    return out;
}

ResonantFamily resonant_denominators(const std::vector<PadicInt>& alpha, const std::vector<Rat>& tau_m,
                                     const Int& lo, const Int& hi, bool require_coprime_p) {
    if (alpha.empty() || alpha.size() != tau_m.size())
        throw Error(ErrorCode::InvalidArgument, "alpha/tau size mismatch");
    if (lo < 0 || hi < lo) throw Error(ErrorCode::InvalidArgument, "window must satisfy 0 <= lo <= hi");
    for (const auto& t : tau_m)
        if (t <= 0) throw Error(ErrorCode::InvalidArgument, "tau must be positive");
    const std::int64_t p = alpha[0].prime();

    ResonantFamily fam;
    fam.p = p;
    fam.tau = tau_m;
    fam.lo = lo;
    fam.hi = hi;

    const int m = static_cast<int>(alpha.size());
    for (Int q0 = lo + 1; q0 <= hi; ++q0) {
        bool coprime_p = (q0 % p != 0);
        if (!coprime_p) {
            // A coprime numerator q has p ∤ q, so |q/q0|_p >= p > 1 >= q0^{-tau}
            // and the strong triangle inequality rules membership out.
            continue;
        }
        (void)require_coprime_p;
        ResonantMember member;
        member.q0 = q0;
        member.coprime_to_p = true;
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            int t = threshold_exponent(ExactPow::power(Rat(q0), -tau_m[static_cast<size_t>(i)]), p,
                                       ThresholdMode::Strict);
            if (t <= 0) {
                member.numerators.push_back(1); // any numerator works; 1 is coprime to q0
                continue;
            }
            if (t > alpha[static_cast<size_t>(i)].precision())
                throw Error(ErrorCode::InsufficientPrecision,
                            "alpha needs " + std::to_string(t) + " digits at q0 = " + q0.str());
            Int modulus = pow_int(p, static_cast<unsigned long>(t));
            Int r = mod_canonical(q0 * alpha[static_cast<size_t>(i)].truncate(t), modulus);
            bool found = false;
            for (const Int& q : reps_in_range(r, modulus, q0)) {
                if (gcd_int(q, q0) == 1) {
                    member.numerators.push_back(q);
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        if (ok) fam.members.push_back(std::move(member));
    }
    return fam;
}

BallUnion resonant_ball_union(const ResonantFamily& family, int d, const std::vector<ExactPow>& radii,
                              const std::optional<Ball>& restrict_to, const Budget& budget,
                              Int* excluded_members) {
    if (d < 1 || static_cast<int>(radii.size()) != d)
        throw Error(ErrorCode::InvalidArgument, "radius count must match the dimension");
    const std::int64_t p = family.p;
    if (restrict_to && static_cast<int>(restrict_to->levels.size()) != d)
        throw Error(ErrorCode::InvalidArgument, "restriction ball has the wrong dimension");

    std::vector<int> t(static_cast<size_t>(d));
    std::vector<Int> modulus(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        if (radii[static_cast<size_t>(i)].cmp(Rat(1)) >= 0)
            throw Error(ErrorCode::InvalidArgument, "radii must be < 1");
        t[static_cast<size_t>(i)] =
            threshold_exponent(radii[static_cast<size_t>(i)], p, ThresholdMode::NonStrict);
        modulus[static_cast<size_t>(i)] = pow_int(p, static_cast<unsigned long>(t[static_cast<size_t>(i)]));
    }

    BallUnion out;
    out.p = p;
    out.levels = t;
    if (restrict_to) {
        for (int i = 0; i < d; ++i)
            out.levels[static_cast<size_t>(i)] =
                std::max(t[static_cast<size_t>(i)], restrict_to->levels[static_cast<size_t>(i)]);
    }

    Int excluded = 0;
    double inserted_est = 0.0;
    for (const auto& member : family.members) {
        if (!member.coprime_to_p || member.q0 % p == 0) {
            ++excluded;
            continue;
        }
        const Int& q0 = member.q0;
        // Per distinct level, the admissible centers q * q0^{-1} mod p^t.
        std::map<int, std::vector<Int>> centers_by_level;
        for (int i = 0; i < d; ++i) {
            int ti = t[static_cast<size_t>(i)];
            if (centers_by_level.count(ti)) continue;
            const Int& m = modulus[static_cast<size_t>(i)];
            Int inv = mod_inverse(q0, m);
            std::vector<Int> cs;
            for (Int q = -q0; q <= q0; ++q) {
                if (gcd_int(q, q0) != 1) continue;
                cs.push_back(mod_canonical(q * inv, m));
            }
            std::sort(cs.begin(), cs.end());
            cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
            centers_by_level[ti] = std::move(cs);
        }
        // Apply the restriction per coordinate and lift to the output level.
        std::vector<std::vector<Int>> lists(static_cast<size_t>(d));
        bool empty = false;
        double prod = 1.0;
        for (int i = 0; i < d && !empty; ++i) {
            const auto& base = centers_by_level[t[static_cast<size_t>(i)]];
            auto& list = lists[static_cast<size_t>(i)];
            if (!restrict_to) {
                list = base;
            } else {
                int lb = restrict_to->levels[static_cast<size_t>(i)];
                const Int& b = restrict_to->residues[static_cast<size_t>(i)];
                int ti = t[static_cast<size_t>(i)];
                if (lb <= ti) {
                    Int mb = pow_int(p, static_cast<unsigned long>(lb));
                    for (const auto& c : base)
                        if (mod_canonical(c - b, mb) == 0) list.push_back(c);
                } else {
                    // the restriction ball is smaller: it survives iff its
                    // prefix matches a center, and the intersection is B's cell
                    Int mt = modulus[static_cast<size_t>(i)];
                    if (std::binary_search(base.begin(), base.end(), mod_canonical(b, mt)))
                        list.push_back(mod_canonical(b, pow_int(p, static_cast<unsigned long>(lb))));
                }
            }
            empty = list.empty();
            prod *= static_cast<double>(list.size());
        }
        if (empty) continue;
        inserted_est += prod;
        if (inserted_est > static_cast<double>(budget.max_ops))
            throw Error(ErrorCode::InfeasibleSize, "ball union exceeds the operation budget");

        std::vector<size_t> idx(static_cast<size_t>(d), 0);
        while (true) {
            std::vector<Int> center(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i)
                center[static_cast<size_t>(i)] = lists[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
            out.centers.insert(std::move(center));
            int kk = d - 1;
            while (kk >= 0 && ++idx[static_cast<size_t>(kk)] == lists[static_cast<size_t>(kk)].size()) {
                idx[static_cast<size_t>(kk)] = 0;
                --kk;
            }
            if (kk < 0) break;
        }
    }
    if (excluded_members) *excluded_members = excluded;
    return out;
}

DensityReport ubiquity_density(const std::vector<PadicInt>& alpha, const WeightSplit& split,
                               std::int64_t M, int k, const std::optional<Ball>& B,
                               const Budget& budget) {
    if (static_cast<int>(alpha.size()) != split.m)
        throw Error(ErrorCode::InvalidArgument, "alpha does not match the split");
    if (M < 2 || k < 0) throw Error(ErrorCode::InvalidArgument, "need M >= 2 and k >= 0");
    if (!split.tau_m_sum_ok)
        throw Error(ErrorCode::ConstraintViolation, "sum of frozen weights must be < m+1");
    for (const auto& tm : split.tau_m)
        if (tm <= 1) throw Error(ErrorCode::ConstraintViolation, "frozen weights must exceed 1");

    const std::int64_t p = alpha[0].prime();
    const int d = split.d;
    const Rat budget_exponent = split.budget(); // n+1 - sum tau_m

    RatInterval c1 = c1_constant(split.m);
    const Rat threshold_factor = Rat(pow_int(3, static_cast<unsigned long>(d)));

    // admissibility: M^{n+1 - sum tau_m} > 3^d C1(m), checked against the
    // outer bound of C1
    {
        ExactPow Mpow = ExactPow::power(Rat(M), budget_exponent);
        if (Mpow.cmp(threshold_factor * c1.hi) <= 0)
            throw Error(ErrorCode::ConstraintViolation,
                        "M too small for a positive density constant");
    }

    auto alloc = allocate_exponent_budget(split.tau_d_sorted, budget_exponent);
    {
        Rat sum = 0;
        for (const auto& vi : alloc.v) sum += vi;
        if (sum != budget_exponent)
            throw Error(ErrorCode::ConstraintViolation,
                        "free weights cannot absorb the exponent budget");
    }

    Int window_lo = pow_int(M, static_cast<unsigned long>(k));
    Int window_hi = pow_int(M, static_cast<unsigned long>(k) + 1);
    auto family = resonant_denominators(alpha, split.tau_m, window_lo, window_hi);

    std::vector<ExactPow> radii;
    for (const auto& vi : alloc.v) radii.push_back(ExactPow::power(Rat(window_hi), -vi));

    DensityReport rep;
    rep.v = alloc.v;
    rep.members = Int(family.members.size());
    auto U = resonant_ball_union(family, d, radii, B, budget, &rep.excluded_members);
    rep.balls = Int(U.centers.size());

    Rat measure_B = B ? B->measure(p) : Rat(1);
    rep.density = U.measure() / measure_B;

    // pass  <=>  density >= 1 - 3^d C1 M^{-(n+1-sum tau_m)}, decided with the
    // inner bound of C1 so a pass is never a rounding artifact
    Rat shortfall = Rat(1) - rep.density;
    if (shortfall <= 0) {
        rep.pass = true;
    } else {
        Rat g = shortfall / (threshold_factor * c1.lo);
        // M^{-B} >= g  <=>  g^w M^u <= 1 with B = u/w
        ExactPow gM(g, Rat(M), budget_exponent);
        rep.pass = gM.cmp(Rat(1)) <= 0;
    }
    rep.c_value = 1.0 - rat_to_double(threshold_factor) * c1.mid_double() *
                            std::pow(static_cast<double>(M), -rat_to_double(budget_exponent));
    return rep;
}

} // namespace padic
