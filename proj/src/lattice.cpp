#include "padic/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace padic {

namespace {

Int norm_sq(const std::vector<Int>& v) {
    Int s = 0;
    for (const auto& c : v) s += c * c;
    return s;
}

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

Int nth_root_floor(const Int& x, int k) {
    if (x <= 0) throw Error(ErrorCode::InvalidArgument, "nth_root_floor needs x > 0");
    if (k == 1) return x;
    double guess = std::pow(static_cast<double>(x), 1.0 / k);
    Int r = Int(static_cast<long long>(guess));
    if (r < 1) r = 1;
    while (pow_int(r + 1, static_cast<unsigned long>(k)) <= x) ++r;
    while (r > 1 && pow_int(r, static_cast<unsigned long>(k)) > x) --r;
    return r;
}

} // namespace

int integer_rank(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Int a = rows[rank][col], b = rows[r][col];
            for (size_t c = col; c < cols; ++c)
                rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

Int ApproxLattice::det() const {
    Int d = 1;
    for (const auto& m : modulus) d *= m;
    return d;
}

std::vector<std::vector<Int>> ApproxLattice::basis() const {
    std::vector<std::vector<Int>> cols;
    std::vector<Int> first(static_cast<size_t>(n) + 1, Int(0));
    first[0] = 1;
    for (int i = 0; i < n; ++i) first[static_cast<size_t>(i) + 1] = X[static_cast<size_t>(i)];
    cols.push_back(first);
    for (int i = 0; i < n; ++i) {
        std::vector<Int> col(static_cast<size_t>(n) + 1, Int(0));
        col[static_cast<size_t>(i) + 1] = modulus[static_cast<size_t>(i)];
        cols.push_back(col);
    }
    return cols;
}

bool ApproxLattice::member_congruence(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != n + 1)
        throw Error(ErrorCode::InvalidArgument, "vector has wrong length");
    for (int i = 0; i < n; ++i) {
        if (mod_canonical(v[static_cast<size_t>(i) + 1] - v[0] * X[static_cast<size_t>(i)],
                          modulus[static_cast<size_t>(i)]) != 0)
            return false;
    }
    return true;
}

bool ApproxLattice::member_basis(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != n + 1)
        throw Error(ErrorCode::InvalidArgument, "vector has wrong length");
    // coefficients against the triangular basis: c_0 = v_0, then
    // c_i = (v_i - v_0 X_i)/p^{t_i} must be integral
    for (int i = 0; i < n; ++i) {
        Int num = v[static_cast<size_t>(i) + 1] - v[0] * X[static_cast<size_t>(i)];
        if (num % modulus[static_cast<size_t>(i)] != 0) return false;
    }
    return true;
}

ApproxLattice make_lattice(std::int64_t p, std::vector<int> t, std::vector<Int> X) {
    require_prime(p);
    if (t.empty() || t.size() != X.size())
        throw Error(ErrorCode::InvalidArgument, "threshold/truncation size mismatch");
    ApproxLattice lat;
    lat.p = p;
    lat.n = static_cast<int>(t.size());
    lat.t = std::move(t);
    lat.X = std::move(X);
    for (int i = 0; i < lat.n; ++i) {
        if (lat.t[static_cast<size_t>(i)] < 1)
            throw Error(ErrorCode::ThresholdNonpositive, "lattice thresholds must be >= 1");
        lat.modulus.push_back(pow_int(p, static_cast<unsigned long>(lat.t[static_cast<size_t>(i)])));
        if (lat.X[static_cast<size_t>(i)] < 0 ||
            lat.X[static_cast<size_t>(i)] >= lat.modulus[static_cast<size_t>(i)])
            throw Error(ErrorCode::InvalidArgument, "truncation out of range");
    }
    return lat;
}

ApproxLattice build_lattice(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N) {
    if (x.empty() || static_cast<int>(x.size()) != psi.dimension())
        throw Error(ErrorCode::InvalidArgument, "profile dimension does not match point");
    const std::int64_t p = x[0].prime();
    auto t = psi.thresholds(N, p, ThresholdMode::NonStrict);
    std::vector<Int> X;
    for (int i = 0; i < psi.dimension(); ++i) {
        if (t[static_cast<size_t>(i)] < 1)
            throw Error(ErrorCode::ThresholdNonpositive,
                        "psi_" + std::to_string(i) + "(N) >= 1; lattice undefined");
        if (t[static_cast<size_t>(i)] > x[static_cast<size_t>(i)].precision())
            throw Error(ErrorCode::InsufficientPrecision,
                        "coordinate " + std::to_string(i) + " needs " +
                            std::to_string(t[static_cast<size_t>(i)]) + " digits");
        X.push_back(x[static_cast<size_t>(i)].truncate(t[static_cast<size_t>(i)]));
    }
    return make_lattice(p, std::move(t), std::move(X));
}

std::vector<std::vector<Int>> enumerate_points(const ApproxLattice& lat, const Rat& R2,
                                               const Budget& budget) {
    std::vector<std::vector<Int>> pts;
    if (R2 < 0) return pts;
    Int R = floor_sqrt(R2);

    double est = 2.0 * static_cast<double>(R) + 1.0;
    for (int i = 0; i < lat.n; ++i)
        est *= 2.0 * static_cast<double>(R) / static_cast<double>(lat.modulus[static_cast<size_t>(i)]) + 2.0;
    if (est > static_cast<double>(budget.max_ops))
        throw Error(ErrorCode::InfeasibleSize,
                    "enumeration of ~" + std::to_string(est) + " candidates over budget");

    std::vector<std::vector<Int>> lists(static_cast<size_t>(lat.n));
    for (Int q0 = -R; q0 <= R; ++q0) {
        Rat rem = R2 - Rat(q0 * q0);
        Int B = floor_sqrt(rem);
        bool empty = false;
        for (int i = 0; i < lat.n && !empty; ++i) {
            const Int& m = lat.modulus[static_cast<size_t>(i)];
            Int r = mod_canonical(q0 * lat.X[static_cast<size_t>(i)], m);
            auto& list = lists[static_cast<size_t>(i)];
            list.clear();
            for (Int q = r - m * floor_div(r + B, m); q <= B; q += m)
                if (q >= -B) list.push_back(q);
            empty = list.empty();
        }
        if (empty) continue;
        std::vector<size_t> idx(static_cast<size_t>(lat.n), 0);
        while (true) {
            std::vector<Int> v;
            v.reserve(static_cast<size_t>(lat.n) + 1);
            v.push_back(q0);
            Int s = q0 * q0;
            for (int i = 0; i < lat.n; ++i) {
                const Int& qi = lists[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
                v.push_back(qi);
                s += qi * qi;
            }
            if (Rat(s) <= R2) pts.push_back(std::move(v));
            int k = lat.n - 1;
            while (k >= 0 && ++idx[static_cast<size_t>(k)] == lists[static_cast<size_t>(k)].size()) {
                idx[static_cast<size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    std::sort(pts.begin(), pts.end(), [](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int na = norm_sq(a), nb = norm_sq(b);
        if (na != nb) return na < nb;
        return lex_less(a, b);
    });
    return pts;
}

MinimaProfile successive_minima(const ApproxLattice& lat, const Budget& budget) {
    const int dim = lat.n + 1;
    Int det2 = lat.det();
    det2 *= det2;
    Rat R2(nth_root_floor(det2, dim) + 1);

    // The basis columns bound lambda_{dim} from above.
    Rat cap(0);
    for (const auto& col : lat.basis()) {
        Rat ns(norm_sq(col));
        if (ns > cap) cap = ns;
    }

    while (true) {
        if (R2 > cap) R2 = cap;
        auto pts = enumerate_points(lat, R2, budget);
        MinimaProfile prof;
        prof.radius_sq_used = R2;
        for (const auto& v : pts) {
            Int ns = norm_sq(v);
            if (ns == 0) continue;
            std::vector<std::vector<Int>> trial = prof.witnesses;
            trial.push_back(v);
            if (integer_rank(trial) > static_cast<int>(prof.witnesses.size())) {
                prof.witnesses.push_back(v);
                prof.lambda_sq.push_back(ns);
                if (static_cast<int>(prof.witnesses.size()) == dim) return prof;
            }
        }
        if (R2 >= cap)
            throw Error(ErrorCode::Internal, "full rank not reached at the basis radius");
        R2 *= 4;
    }
}

double MinimaProfile::lambda(int i) const {
    return std::sqrt(static_cast<double>(lambda_sq.at(static_cast<size_t>(i))));
}

GeometryReport verify_geometry(const ApproxLattice& lat, const Rat& R2, const Budget& budget) {
    const int dim = lat.n + 1;
    GeometryReport rep;
    auto pts = enumerate_points(lat, R2, budget);
    rep.count = Int(pts.size());
    rep.rank = integer_rank(pts);
    rep.minima = successive_minima(lat, budget);

    const Int det = lat.det();

    {
        // vol(B_dim) prod lambda_i <= 2^dim det, squared; a violation must
        // survive the outward-rounded pi bound to be reported.
        Int prod_l2 = 1;
        for (const auto& l2 : rep.minima.lambda_sq) prod_l2 *= l2;
        Int rhs = pow_int(2, static_cast<unsigned long>(dim)) * det;
        rhs *= rhs;
        RatInterval vol2 = ball_volume_sq(dim);
        rep.minkowski.applicable = true;
        rep.minkowski.ok = !(vol2.lo * Rat(prod_l2) > Rat(rhs));
        rep.minkowski.bound = std::sqrt(rat_to_double(Rat(rhs)));
    }

    {
        rep.blichfeldt.applicable = (rep.rank == dim);
        RatInterval vol2 = ball_volume_sq(dim);
        double volR = std::sqrt(vol2.mid_double() * std::pow(rat_to_double(R2), dim));
        rep.blichfeldt.bound =
            rat_to_double(Rat(factorial(dim))) * volR / rat_to_double(Rat(det)) + dim;
        if (rep.blichfeldt.applicable) {
            if (rep.count <= dim) {
                rep.blichfeldt.ok = true;
            } else {
                Int lhs = (rep.count - dim) * det;
                lhs *= lhs;
                Rat rhs = vol2.hi * Rat(factorial(dim) * factorial(dim)) * pow_rat(R2, dim);
                rep.blichfeldt.ok = Rat(lhs) <= rhs;
            }
        }
    }

    {
        // count < 2^n prod_i floor(2R/lambda_i + 1)
        Int bound = pow_int(2, static_cast<unsigned long>(lat.n));
        for (int i = 0; i < dim; ++i) {
            Rat q = Rat(4) * R2 / Rat(rep.minima.lambda_sq[static_cast<size_t>(i)]);
            bound *= floor_sqrt(q) + 1;
        }
        rep.henk.applicable = true;
        rep.henk.ok = rep.count < bound;
        rep.henk.bound = rat_to_double(Rat(bound));
    }
    return rep;
}

Lambda1Report check_lambda1_bounds(const ApproxLattice& lat, const ApproxProfile& psi, const Int& N,
                                   const Rat& eps, const Budget& budget) {
    if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    const int dim = lat.n + 1;
    auto minima = successive_minima(lat, budget);
    const Int& l1_sq = minima.lambda_sq[0];

    Lambda1Report rep;
    rep.lambda1 = std::sqrt(static_cast<double>(l1_sq));

    ExactPow prod_psi = psi.psi_product(N);

    {
        // lambda_1^{2 dim} <= K (prod psi)^{-2} with K = C2^{2 dim}
        RatInterval K = lambda1_upper_factor(lat.n, lat.p);
        ExactPow inv_sq = prod_psi.pow(Rat(-2));
        ExactPow rhs(inv_sq.coeff() * K.hi, inv_sq.base(), inv_sq.exp());
        Int lhs = pow_int(l1_sq, static_cast<unsigned long>(dim));
        rep.upper_ok = rhs.cmp(Rat(lhs)) >= 0;
        rep.upper_bound = lambda1_upper_c2_double(lat.n, lat.p) *
                          std::pow(prod_psi.to_double(), -1.0 / dim);
    }

    {
        // applicability: prod psi < N^{-n}
        Rat n_pow(1, pow_int(N, static_cast<unsigned long>(lat.n)));
        rep.lower_applicable = prod_psi.cmp(n_pow) < 0;
        // lambda_1 >= (prod psi)^{-(1/dim - eps)}  <=>  lambda_1^2 >= (prod psi)^{-2(1/dim - eps)}
        Rat e = Rat(-2) * (Rat(1, dim) - eps);
        rep.lower_ok = prod_psi.cmp_pow(e, Rat(l1_sq)) <= 0;
        rep.lower_bound = std::pow(prod_psi.to_double(), -(1.0 / dim - rat_to_double(eps)));
    }
    return rep;
}

} // namespace padic
