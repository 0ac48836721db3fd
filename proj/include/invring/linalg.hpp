#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "invring/gposet.hpp"

namespace invring {

// U * m = h with U unimodular and h in row Hermite normal form
// (row echelon, positive pivots, entries above a pivot reduced mod it).
struct HNFResult {
    IntMat h, u;
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank = 0;
};
HNFResult hnf(IntMat m);

// Z-basis of the integer kernel {x : m x = 0}; one basis vector per row.
IntMat kernel_zbasis(const IntMat& m);

// One integer solution of m x = b, if any.
std::optional<IntVec> inverse_image(const IntMat& m, const IntVec& b);

// minimize c.x subject to a x <= b, x free
struct LPResult {
    enum Status { OPTIMAL, UNBOUNDED, INFEASIBLE } status;
    Rat value;
    RatVec x;
};
LPResult lp_min(const RatMat& a, const RatVec& b, const RatVec& c);

// LLL reduction (delta = 99/100) of the rows of image, with every row
// operation mirrored onto the rows of basis. Lengths are measured on image,
// so basis can be reduced with respect to a metric given by a linear map.
void lll_reduce(IntMat& image, IntMat& basis);

// All integer points x with a x + b >= 0. The polyhedron must be bounded
// (checked with exact LPs); throws std::invalid_argument otherwise.
std::vector<IntVec> integer_points(const RatMat& a, const RatVec& b);
// streaming flavor: return false from emit to stop the enumeration
void integer_points(const RatMat& a, const RatVec& b,
                    const std::function<bool(const IntVec&)>& emit);

// small helpers
IntMat transpose(const IntMat& m);
IntMat matmul(const IntMat& a, const IntMat& b);
IntVec matvec(const IntMat& a, const IntVec& x);
IntMat identity_mat(int n);

}  // namespace invring
