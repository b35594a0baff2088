#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padic/counting.hpp"
#include "padic/rng.hpp"

using namespace padic;

namespace {

// Independent micro-oracle: literal scan over every tuple, membership decided
// by repeated-division valuation. Only for tiny N.
Int oracle_tuple_scan(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N) {
    const int n = psi.dimension();
    const std::int64_t p = x[0].prime();
    auto t = psi.thresholds(N, p);
    Int count = 0;
    std::vector<Int> q(static_cast<size_t>(n), Int(-N));
    for (Int q0 = 1; q0 <= N; ++q0) {
        for (auto& qi : q) qi = -N;
        while (true) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                Int y = q0 * x[static_cast<size_t>(i)].truncate(x[static_cast<size_t>(i)].precision()) -
                        q[static_cast<size_t>(i)];
                ok = valuation(y, p).at_least(t[static_cast<size_t>(i)]);
            }
            if (ok) ++count;
            int k = n - 1;
            while (k >= 0 && q[static_cast<size_t>(k)] == N) {
                q[static_cast<size_t>(k)] = -N;
                --k;
            }
            if (k < 0) break;
            ++q[static_cast<size_t>(k)];
        }
    }
    return count;
}

std::vector<PadicInt> random_point(std::int64_t p, int n, int L, SeededRng& rng) {
    std::vector<PadicInt> x;
    for (int i = 0; i < n; ++i) x.push_back(PadicInt::random(p, L, rng));
    return x;
}

} // namespace

TEST_CASE("fixed instance: x = 5, psi = 1/4 strict, N = 16 gives 66") {
    std::vector<PadicInt> x{PadicInt::from_integer(5, 2, 16)};
    auto psi = ApproxProfile::table({Rat(1, 4)}, ThresholdMode::Strict);
    auto brute = count_brute(x, psi, 16);
    auto fast = count_fast(x, psi, 16);
    CHECK(brute.count == 66); // residue classes mod 8: 2 q0 hit the 5-element class, 14 hit 4-element ones
    CHECK(fast.count == 66);
    CHECK(brute.thresholds == std::vector<int>{3});
    CHECK(oracle_tuple_scan(x, psi, 16) == 66);
    for (const auto& sol : *brute.solutions) CHECK(is_solution(x, psi, 16, sol));
}

TEST_CASE("per-coordinate closed form matches direct residue enumeration") {
    // residues in [-16,16] congruent to 5 mod 8: {-11,-3,5,13}
    std::vector<PadicInt> x{PadicInt::from_integer(5, 2, 8)}; // 5*1 mod 8 = 5 at q0 = 1
    auto psi = ApproxProfile::table({Rat(1, 8)}, ThresholdMode::NonStrict);
    auto brute = count_brute(x, psi, 16);
    Int at_q0_1 = 0;
    for (const auto& sol : *brute.solutions)
        if (sol[0] == 1) ++at_q0_1;
    CHECK(at_q0_1 == 4);
}

TEST_CASE("empty case") {
    std::vector<PadicInt> x{PadicInt::from_integer(5, 2, 16)};
    auto psi = ApproxProfile::power({Rat(39, 10)}, ThresholdMode::Strict);
    auto res = count_fast(x, psi, 2);
    CHECK(res.count == 0);
    CHECK(count_brute(x, psi, 2).count == 0);
}

TEST_CASE("vacuous thresholds count everything") {
    std::vector<PadicInt> x{PadicInt::from_integer(7, 3, 8)};
    auto psi = ApproxProfile::table({Rat(3, 2)}, ThresholdMode::Strict); // t = 0
    auto res = count_fast(x, psi, 10);
    CHECK(res.count == Int(10) * 21);
    CHECK(res.thresholds == std::vector<int>{0});
}

TEST_CASE("negative thresholds are rejected in counting") {
    std::vector<PadicInt> x{PadicInt::from_integer(7, 2, 8)};
    auto psi = ApproxProfile::table({Rat(3)}, ThresholdMode::NonStrict); // t = -1
    try {
        count_fast(x, psi, 10);
        FAIL("expected THRESHOLD_NEGATIVE");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ThresholdNegative);
    }
}

TEST_CASE("oracle equivalence on random instances") {
    SeededRng rng(2024);
    int done = 0;
    while (done < 60) {
        std::int64_t p = std::array<std::int64_t, 3>{2, 3, 5}[rng.below(3)];
        int n = 1 + static_cast<int>(rng.below(2));
        Int N = rng.range(5, n == 1 ? 120 : 40);
        std::vector<Rat> taus;
        for (int i = 0; i < n; ++i) taus.emplace_back(11 + static_cast<int>(rng.below(9)), 10);
        auto psi = ApproxProfile::power(taus, ThresholdMode::Strict);
        auto x = random_point(p, n, 40, rng);
        auto fast = count_fast(x, psi, N);
        auto brute = count_brute(x, psi, N);
        CHECK(fast.count == brute.count);
        for (const auto& sol : *brute.solutions) CHECK(is_solution(x, psi, N, sol));
        if (N <= 25) CHECK(oracle_tuple_scan(x, psi, N) == brute.count);
        ++done;
    }
}

TEST_CASE("count is nonincreasing as tau grows") {
    SeededRng rng(5150);
    for (int rep = 0; rep < 20; ++rep) {
        std::int64_t p = rep % 2 ? 2 : 3;
        auto x = random_point(p, 2, 40, rng);
        Int N = 64;
        Int prev = -1;
        for (int k = 11; k <= 19; k += 2) {
            auto psi = ApproxProfile::power({Rat(k, 10), Rat(3, 2)}, ThresholdMode::Strict);
            Int c = count_fast(x, psi, N).count;
            if (prev >= 0) CHECK(c <= prev);
            prev = c;
        }
    }
}

TEST_CASE("rational point: quadratic-type growth ratio") {
    // x = 1/3 with a slowly decaying profile; count(2N) > 3 count(N)
    std::vector<PadicInt> x{PadicInt::from_rational(1, 3, 2, 24)};
    auto psi = ApproxProfile::power({Rat(1, 5)}, ThresholdMode::Strict);
    Int cN = count_fast(x, psi, 500).count;
    Int c2N = count_fast(x, psi, 1000).count;
    CHECK(c2N > 3 * cN);
}

TEST_CASE("bound report on the worked instance") {
    std::vector<PadicInt> x{PadicInt::from_integer(5, 2, 24)};
    auto psi = ApproxProfile::power({Rat(3, 2)}, ThresholdMode::Strict);
    auto report = evaluate_bounds(x, psi, 16, Rat(1, 10));
    CHECK(report.lower_stmt.applicable);
    // (1/2) 16^{0.5} - 1 = 1
    CHECK(report.lower_stmt.value == doctest::Approx(1.0));
    CHECK(report.lower_proof.value == doctest::Approx(1.0)); // n = 1: same constant
    CHECK(report.upper_c1.applicable);
    CHECK(report.upper_c1.value == doctest::Approx(18.0 * 4.0));
    CHECK(report.upper_c1.satisfied);
    CHECK(report.lower_proof.satisfied);
}

TEST_CASE("bounds marked not applicable outside their preconditions") {
    std::vector<PadicInt> x{PadicInt::from_integer(5, 2, 24)};
    auto psi = ApproxProfile::power({Rat(5, 2)}, ThresholdMode::Strict); // sum tau > n+1
    auto report = evaluate_bounds(x, psi, 16, Rat(1, 10));
    CHECK(!report.lower_stmt.applicable);
    CHECK(!report.upper_c1.applicable);
    // with a tau_hat estimate, the exponent-gap bound applies for 2 < 2.5? no: needs tau < tau_hat
    auto r2 = evaluate_bounds(x, psi, 16, Rat(1, 10), 2.0);
    CHECK(!r2.upper_exponent_gap.applicable);
    auto psi3 = ApproxProfile::power({Rat(3, 2)}, ThresholdMode::Strict);
    auto r3 = evaluate_bounds(x, psi3, 16, Rat(1, 10), 2.0);
    CHECK(r3.upper_exponent_gap.applicable);
}

TEST_CASE("lemma lower bound holds across a random sweep") {
    SeededRng rng(31337);
    for (int rep = 0; rep < 40; ++rep) {
        std::int64_t p = rep % 2 ? 2 : 3;
        int n = 1 + static_cast<int>(rng.below(2));
        int e = 4 + static_cast<int>(rng.below(4));
        Int N = pow_int(p, static_cast<unsigned long>(e));
        std::vector<Rat> taus;
        Rat sum = 0;
        for (int i = 0; i < n; ++i) {
            Rat t(11 + static_cast<int>(rng.below(7)), 10);
            if (sum + t >= Rat(n + 1)) t = Rat(11, 10);
            taus.push_back(t);
            sum += t;
        }
        if (sum >= Rat(n + 1)) continue;
        auto x = random_point(p, n, 48, rng);
        auto psi = ApproxProfile::power(taus, ThresholdMode::Strict);
        auto report = evaluate_bounds(x, psi, N, Rat(1, 10));
        CHECK(report.lower_proof.applicable);
        CHECK(report.lower_proof.satisfied);
    }
}

TEST_CASE("pigeonhole witness validity") {
    SeededRng rng(777);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<PadicInt> x{PadicInt::random(2, 32, rng)};
        auto w = pigeonhole_witness(x, {Rat(3, 2)}, 16);
        CHECK(is_solution(x, ApproxProfile::power({Rat(3, 2)}, ThresholdMode::Strict), 16, w));
        CHECK(w[0] > 0);
    }
    // two-dimensional instance
    for (int rep = 0; rep < 5; ++rep) {
        auto x = random_point(3, 2, 32, rng);
        auto w = pigeonhole_witness(x, {Rat(5, 4), Rat(5, 4)}, 20);
        CHECK(is_solution(x, ApproxProfile::power({Rat(5, 4), Rat(5, 4)}, ThresholdMode::Strict), 20, w));
    }
}

TEST_CASE("pigeonhole on the zero point") {
    std::vector<PadicInt> x{PadicInt::from_integer(0, 2, 32), PadicInt::from_integer(0, 2, 32)};
    auto w = pigeonhole_witness(x, {Rat(5, 4), Rat(5, 4)}, 8);
    CHECK(w[0] > 0);
    CHECK(is_solution(x, ApproxProfile::power({Rat(5, 4), Rat(5, 4)}, ThresholdMode::Strict), 8, w));
}

TEST_CASE("pigeonhole threshold unmet") {
    // injective bucket map: x = 3 in Z_3, tau near n+1, N = 2
    std::vector<PadicInt> x{PadicInt::from_integer(3, 3, 8)};
    try {
        pigeonhole_witness(x, {Rat(199, 100)}, 2);
        FAIL("expected NO_OVERFULL_BUCKET");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoOverfullBucket);
    }
}

TEST_CASE("linear forms solver") {
    // alpha = 5, tau = 2, H = 4: |q0 5 - q1|_2 < 2 * 4^-2 = 1/8
    std::vector<PadicInt> alpha{PadicInt::from_integer(5, 2, 24)};
    auto v = minkowski_solve(alpha, {Rat(2)}, 4);
    REQUIRE(v.size() == 2);
    bool nonzero = v[0] != 0 || v[1] != 0;
    CHECK(nonzero);
    CHECK(abs(v[0]) <= 4);
    CHECK(abs(v[1]) <= 4);
    Int y = v[0] * 5 - v[1];
    CHECK(valuation(y, 2).at_least(4)); // |y|_2 < 1/8 means v >= 4

    // alpha = 0 accepts the first unit vector
    std::vector<PadicInt> zero{PadicInt::from_integer(0, 2, 24)};
    auto w = minkowski_solve(zero, {Rat(2)}, 4);
    CHECK((w[0] != 0 || w[1] != 0));
    CHECK(valuation(w[0] * 0 - w[1], 2).at_least(4));

    // H = 1 stays within {-1,0,1}^{n+1}
    auto u = minkowski_solve(alpha, {Rat(2)}, 1);
    CHECK(abs(u[0]) <= 1);
    CHECK(abs(u[1]) <= 1);
}

TEST_CASE("linear forms solver: random suite") {
    SeededRng rng(4242);
    for (int rep = 0; rep < 30; ++rep) {
        std::int64_t p = std::array<std::int64_t, 3>{2, 3, 5}[rng.below(3)];
        int n = 1 + static_cast<int>(rng.below(2));
        std::vector<PadicInt> alpha;
        for (int i = 0; i < n; ++i) alpha.push_back(PadicInt::random(p, 32, rng));
        // weights sum to exactly n+1
        std::vector<Rat> tau;
        if (n == 1) {
            tau = {Rat(2)};
        } else {
            Rat t1(3 + static_cast<int>(rng.below(3)), 2); // 1.5, 2, 2.5
            tau = {t1, Rat(3) - t1};
        }
        Int H = rng.range(2, n == 1 ? 24 : 10);
        auto v = minkowski_solve(alpha, tau, H);
        bool nonzero = false;
        for (const auto& c : v)
            if (c != 0) nonzero = true;
        CHECK(nonzero);
        for (int i = 0; i < n; ++i) {
            // check |v0 alpha_i - v_i|_p < p H^{-tau_i} exactly
            ExactPow bound(Rat(p), Rat(H), -tau[static_cast<size_t>(i)]);
            int t = threshold_exponent(bound, p, ThresholdMode::Strict);
            if (t < 0) t = 0;
            Int y = v[0] * alpha[static_cast<size_t>(i)].truncate(32) - v[static_cast<size_t>(i) + 1];
            CHECK(valuation(y, p).at_least(t));
        }
    }
}

TEST_CASE("exponent estimate basics") {
    // x = 0: the cap binds at every Q
    std::vector<PadicInt> zero{PadicInt::from_integer(0, 2, 16)};
    auto est = estimate_diophantine_exponent(zero, 64);
    CHECK(est.truncated);

    // running max: estimate never decreases as N_max doubles
    SeededRng rng(11);
    std::vector<PadicInt> x{PadicInt::random(2, 48, rng)};
    double prev = 0;
    for (Int nm : {Int(256), Int(512), Int(1024)}) {
        auto e = estimate_diophantine_exponent(x, nm, 2, 1000); // tail covers everything
        CHECK(e.tau_hat >= prev - 1e-12);
        prev = e.tau_hat;
    }
}

TEST_CASE("exponent estimate concentrates near n+1") {
    int in_band = 0;
    const int trials = 30;
    for (int s = 1; s <= trials; ++s) {
        std::vector<PadicInt> x{PadicInt::random(2, 64, static_cast<std::uint64_t>(s))};
        auto est = estimate_diophantine_exponent(x, 4096);
        CHECK(est.tau_hat >= 2.0 - 1e-9); // guaranteed by the linear forms theorem
        if (est.tau_hat <= 2.6) ++in_band;
    }
    CHECK(in_band >= trials * 9 / 10);
}
