#pragma once

#include <vector>

#include "padic/counting.hpp"
#include "padic/exact.hpp"
#include "padic/padic_int.hpp"
#include "padic/profile.hpp"

namespace padic {

// Rank n+1 integer lattice of vectors (a_0, ..., a_n) with a_i congruent to
// a_0 X_i mod p^{t_i}. Triangular basis: first column (1, X_1, ..., X_n), then
// the scaled unit columns p^{t_i} e_i.
struct ApproxLattice {
    std::int64_t p = 2;
    int n = 1;
    std::vector<int> t;       // all >= 1
    std::vector<Int> X;       // 0 <= X_i < p^{t_i}
    std::vector<Int> modulus; // p^{t_i}

    Int det() const;
    std::vector<std::vector<Int>> basis() const; // column vectors, size n+1

    bool member_congruence(const std::vector<Int>& v) const;
    // Solves the triangular system exactly; must agree with member_congruence.
    bool member_basis(const std::vector<Int>& v) const;
};

ApproxLattice make_lattice(std::int64_t p, std::vector<int> t, std::vector<Int> X);

// Thresholds are taken non-strict (the lattice condition is
// |a_0 x_i - a_i|_p <= psi_i(N)) regardless of the profile's mode.
ApproxLattice build_lattice(const std::vector<PadicInt>& x, const ApproxProfile& psi, const Int& N);

// All lattice vectors with squared euclidean norm <= R2, duplicate-free,
// sorted by (norm^2, lexicographic). Includes the zero vector.
std::vector<std::vector<Int>> enumerate_points(const ApproxLattice& lat, const Rat& R2,
                                               const Budget& budget = {});

struct MinimaProfile {
    std::vector<Int> lambda_sq;               // squared successive minima
    std::vector<std::vector<Int>> witnesses;  // independent vectors achieving them
    Rat radius_sq_used;

    double lambda(int i) const;
};

// Radius-doubling enumeration plus greedy independent selection; exact.
MinimaProfile successive_minima(const ApproxLattice& lat, const Budget& budget = {});

struct GeometryCheck {
    bool applicable = true;
    bool ok = true;
    double bound = 0.0;
};

struct GeometryReport {
    Int count = 0;            // #(lattice ∩ ball of squared radius R2)
    int rank = 0;             // rank of the intersection
    GeometryCheck minkowski;  // vol(B) prod lambda_i <= 2^{n+1} det
    GeometryCheck blichfeldt; // count <= (n+1)! vol(ball)/det + n+1, rank n+1 only
    GeometryCheck henk;       // count < 2^n prod floor(2R/lambda_i + 1)
    MinimaProfile minima;

    bool all_ok() const {
        return (!minkowski.applicable || minkowski.ok) && (!blichfeldt.applicable || blichfeldt.ok) &&
               (!henk.applicable || henk.ok);
    }
};

// Point-count inequalities at squared radius R2, decided with exact integer
// arithmetic and outward-rounded pi terms.
GeometryReport verify_geometry(const ApproxLattice& lat, const Rat& R2, const Budget& budget = {});

struct Lambda1Report {
    bool upper_ok = false;       // lambda_1 <= C2 (prod psi)^{-1/(n+1)}; must always hold
    bool lower_applicable = false; // needs prod psi < N^{-n}
    bool lower_ok = false;       // lambda_1 >= (prod psi)^{-(1/(n+1) - eps)}; generic-point property
    double lambda1 = 0.0;
    double upper_bound = 0.0;
    double lower_bound = 0.0;
};

Lambda1Report check_lambda1_bounds(const ApproxLattice& lat, const ApproxProfile& psi, const Int& N,
                                   const Rat& eps, const Budget& budget = {});

// Exact rank of a set of integer vectors (fraction-free elimination).
int integer_rank(std::vector<std::vector<Int>> rows);

} // namespace padic
