#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "invring/linalg.hpp"

namespace invring {

// diag(C(n-cv(g_i), r-cv(g_i))) where r = p.max_cv; rejects n < r.
IntVec scaling_matrix(const GPoset& p, int n);

// Lift c^T x <= 0 (valid on every member of the poset) to c^T D z <= 0 for
// hosts on n vertices. Rejects c that fails on some member.
struct LiftResult {
    bool ok = false;
    RatVec coeffs;     // c_i * D_i when ok
    int witness = -1;  // index of a violating member otherwise
};
LiftResult lift_inequality(const RatVec& c, const GPoset& p, int n);

// Which constraint families to impose / report.
struct Families {
    bool nonneg = true;
    bool linear = true;  // (E^-1)^T D z >= 0 plus sum of orthogonal params = C(n,r)
    bool products = true;
};

struct ConstraintReport {
    bool nonneg = true, integral = true, linear = true, products = true;
    std::vector<std::string> violations;
    bool pass() const { return nonneg && integral && linear && products; }
};

// Tests the full constraint system on a candidate invariant vector z
// (indexed like p, z_0 corresponding to the empty graph).
ConstraintReport weakly_graphic_check(const RatVec& z, const GPoset& p, int n);

// Strictly upper triangular bound matrices: for every r-graphic z,
// lower * z <= D z and D z <= total - upper * z componentwise, so the
// variables can be boxed one at a time from z_N down to z_1.
struct BoundSystem {
    RatMat lower;  // ((E^-1)^T - I) D
    RatMat upper;  // off-diagonal part of T (E^-1)^T D, T upper triangular all-ones
    IntVec d;
    Int total;  // C(n, r)
    int n = 0;
};
BoundSystem triangular_bounds(const GPoset& p, int n);

// Closed-form bounds on the cherry count I(a12a13) in terms of the edge
// count z1, valid for hosts on n >= 5 vertices.
std::pair<Rat, Rat> raja3_bounds(int n, const Int& z1);

// Checks (L x)_i <= x_i <= (U x)_i for every member vector x of p and every
// i >= 1 (coordinate 0 is the constant 1 and carries no bound).
struct BoundValidation {
    bool pass = true;
    std::vector<std::string> witnesses;
};
BoundValidation validate_bound_matrices(const GPoset& p, const RatMat& lower,
                                        const RatMat& upper);

// Enumerates every nonnegative integer vector z satisfying the selected
// families (z_0 = 1 unless overridden via `fixed`). Return false from emit to
// stop early. Emission order follows the internal search, not a fixed order.
void enumerate_r_graphic(const GPoset& p, int n, const std::map<int, Int>& fixed,
                         const Families& fam,
                         const std::function<bool(const IntVec&)>& emit);

}  // namespace invring
