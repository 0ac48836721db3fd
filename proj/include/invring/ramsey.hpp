#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "invring/constraints.hpp"

namespace invring {

// Coefficients with f.z = (number of k-cliques) + (number of independent
// k-sets) for the invariant vector z of any host on n vertices.
struct RamseyCoefficients {
    IntVec f;
    int k = 0, n = 0;
};
RamseyCoefficients ramsey_f_vector(const GPoset& p, int n, int k);

// Exact LP minimum of f.z over rational z >= 0 with z_0 = 1 and z_1 fixed,
// subject to the selected families (products are linearized through the
// fixed z_1). A positive minimum for every z_1 certifies r(k) <= n.
struct CurvePoint {
    Int z1;
    bool feasible = false;
    bool bounded = false;
    Rat bound;
};
std::vector<CurvePoint> lp_lower_bound_curve(const GPoset& p, int n, int k,
                                             const Int& z1_lo, const Int& z1_hi,
                                             const Families& fam);

// Integer-programming search for r-graphic zeros of the Ramsey invariant.
struct ZeroSearchOptions {
    bool sweep_z1 = false;       // loop z_1 over [0, C(n,2)]; default only floor(C(n,2)/2)
    bool orthosum = true;        // impose sum of orthogonal parameters = C(n,r)
    std::string state_file;      // branch-level checkpoint/resume when nonempty
    int workers = 1;             // deterministic branch partitioning
    int worker_id = 0;
    std::function<bool(const IntVec&)> on_zero;  // streaming; return false to stop
};
struct ZeroSearchResult {
    bool certified = false;  // no zeros: r(k) <= n for the configured z_1 set
    std::vector<IntVec> zeros;
    int n = 0, k = 0, r = 0;
};
ZeroSearchResult find_r_graphic_zeros(const GPoset& p, int n, int k,
                                      const ZeroSearchOptions& opt = {});

// a = f^T D^-1 E^T: the Ramsey invariant in orthogonal coordinates. Entries
// are nonnegative; the zero entries index the free variables of the search.
RatVec ramsey_orthogonal_coeffs(const GPoset& p, int n, int k);

}  // namespace invring
