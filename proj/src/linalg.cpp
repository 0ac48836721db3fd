#include "invring/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace invring {

IntMat transpose(const IntMat& m) {
    if (m.empty()) return {};
    IntMat t(m[0].size(), IntVec(m.size()));
    for (size_t i = 0; i < m.size(); i++)
        for (size_t j = 0; j < m[0].size(); j++) t[j][i] = m[i][j];
    return t;
}

IntMat matmul(const IntMat& a, const IntMat& b) {
    IntMat r(a.size(), IntVec(b[0].size(), 0));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t k = 0; k < b.size(); k++) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < b[0].size(); j++) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

IntVec matvec(const IntMat& a, const IntVec& x) {
    IntVec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < x.size(); j++) r[i] += a[i][j] * x[j];
    return r;
}

IntMat identity_mat(int n) {
    IntMat r(n, IntVec(n, 0));
    for (int i = 0; i < n; i++) r[i][i] = 1;
    return r;
}

HNFResult hnf(IntMat m) {
    int rows = static_cast<int>(m.size());
    int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    HNFResult res;
    res.u = identity_mat(rows);
    auto& u = res.u;
    int r = 0;
    for (int col = 0; col < cols && r < rows; col++) {
        // gcd-out the column below row r with row operations
        while (true) {
            int piv = -1;
            for (int i = r; i < rows; i++)
                if (m[i][col] != 0 && (piv == -1 || abs(m[i][col]) < abs(m[piv][col]))) piv = i;
            if (piv == -1) break;
            std::swap(m[piv], m[r]);
            std::swap(u[piv], u[r]);
            bool clean = true;
            for (int i = r + 1; i < rows; i++) {
                if (m[i][col] == 0) continue;
                Int q = m[i][col] / m[r][col];  // C++ truncation is fine here
                for (int j = 0; j < cols; j++) m[i][j] -= q * m[r][j];
                for (int j = 0; j < rows; j++) u[i][j] -= q * u[r][j];
                if (m[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[r][col] == 0) continue;
        if (m[r][col] < 0) {
            for (int j = 0; j < cols; j++) m[r][j] = -m[r][j];
            for (int j = 0; j < rows; j++) u[r][j] = -u[r][j];
        }
        // reduce entries above the pivot
        for (int i = 0; i < r; i++) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[r][col].get_mpz_t());
            if (q == 0) continue;
            for (int j = 0; j < cols; j++) m[i][j] -= q * m[r][j];
            for (int j = 0; j < rows; j++) u[i][j] -= q * u[r][j];
        }
        res.pivots.push_back(col);
        r++;
    }
    res.rank = r;
    res.h = std::move(m);
    return res;
}

IntMat kernel_zbasis(const IntMat& m) {
    if (m.empty()) return {};
    auto res = hnf(transpose(m));
    IntMat basis;
    for (size_t i = res.rank; i < res.u.size(); i++) basis.push_back(res.u[i]);
    return basis;
}

std::optional<IntVec> inverse_image(const IntMat& m, const IntVec& b) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return IntVec{};
    int cols = static_cast<int>(m[0].size());
    // U m^T = H  =>  m U^T = H^T; solve H^T y = b column by column, x = U^T y.
    auto res = hnf(transpose(m));
    IntVec rem = b;
    IntVec y(cols, 0);
    for (int j = 0; j < res.rank; j++) {
        int p = res.pivots[j];  // H[j][p] is the pivot; column j of H^T leads at row p
        for (int i = 0; i < p; i++)
            if (rem[i] != 0) return std::nullopt;  // cannot be cleared later
        if (rem[p] % res.h[j][p] != 0) return std::nullopt;
        y[j] = rem[p] / res.h[j][p];
        if (y[j] != 0)
            for (int i = 0; i < rows; i++) rem[i] -= y[j] * res.h[j][i];
    }
    for (int i = 0; i < rows; i++)
        if (rem[i] != 0) return std::nullopt;
    IntVec x(cols, 0);
    for (int j = 0; j < res.rank; j++)
        if (y[j] != 0)
            for (int i = 0; i < cols; i++) x[i] += y[j] * res.u[j][i];
    return x;
}

namespace {

// Dense tableau simplex with Bland's rule, minimizing over equality rows
// with nonnegative variables. Rows: t[i] = coefficients, rhs separate.
struct Tableau {
    int m, n;
    std::vector<RatVec> a;  // m x n
    RatVec rhs;             // >= 0 maintained
    std::vector<int> basis;

    void pivot(int row, int col) {
        Rat p = a[row][col];
        for (int j = 0; j < n; j++) a[row][j] /= p;
        rhs[row] /= p;
        for (int i = 0; i < m; i++) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (int j = 0; j < n; j++) a[i][j] -= f * a[row][j];
            rhs[i] -= f * rhs[row];
        }
        basis[row] = col;
    }

    // minimize cost.x over current feasible basis; returns false if unbounded
    bool solve(const RatVec& cost) {
        while (true) {
            // reduced costs
            RatVec cb(m);
            for (int i = 0; i < m; i++) cb[i] = cost[basis[i]];
            int enter = -1;
            for (int j = 0; j < n && enter == -1; j++) {
                Rat rc = cost[j];
                for (int i = 0; i < m; i++) rc -= cb[i] * a[i][j];
                if (rc < 0) enter = j;  // Bland: first improving index
            }
            if (enter == -1) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; i++) {
                if (a[i][enter] <= 0) continue;
                Rat ratio = rhs[i] / a[i][enter];
                if (leave == -1 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == -1) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LPResult lp_min(const RatMat& a, const RatVec& b, const RatVec& c) {
    int m = static_cast<int>(a.size());
    int n = m == 0 ? static_cast<int>(c.size()) : static_cast<int>(a[0].size());
    // x = u - v with u,v >= 0; slack s >= 0: [A -A I] [u v s] = b
    Tableau t;
    t.m = m;
    int base = 2 * n + m;
    t.n = base + m;  // + artificials
    t.a.assign(m, RatVec(t.n, 0));
    t.rhs.assign(m, 0);
    t.basis.assign(m, 0);
    for (int i = 0; i < m; i++) {
        int sgn = b[i] < 0 ? -1 : 1;
        for (int j = 0; j < n; j++) {
            t.a[i][j] = sgn * a[i][j];
            t.a[i][n + j] = -sgn * a[i][j];
        }
        t.a[i][2 * n + i] = sgn;
        t.a[i][base + i] = 1;
        t.rhs[i] = sgn * b[i];
        t.basis[i] = base + i;
    }
    // phase 1
    RatVec cost1(t.n, 0);
    for (int i = 0; i < m; i++) cost1[base + i] = 1;
    t.solve(cost1);
    Rat p1 = 0;
    for (int i = 0; i < m; i++)
        if (t.basis[i] >= base) p1 += t.rhs[i];
    if (p1 != 0) return {LPResult::INFEASIBLE, 0, {}};
    // drive leftover artificials out of the basis where possible
    for (int i = 0; i < m; i++) {
        if (t.basis[i] < base) continue;
        for (int j = 0; j < base; j++)
            if (t.a[i][j] != 0) {
                t.pivot(i, j);
                break;
            }
    }
    // forbid artificials in phase 2
    for (int i = 0; i < m; i++)
        for (int j = base; j < t.n; j++) t.a[i][j] = 0;
    RatVec cost2(t.n, 0);
    for (int j = 0; j < n; j++) {
        cost2[j] = c[j];
        cost2[n + j] = -c[j];
    }
    if (!t.solve(cost2)) return {LPResult::UNBOUNDED, 0, {}};
    RatVec x(n, 0);
    for (int i = 0; i < m; i++) {
        if (t.basis[i] < n) x[t.basis[i]] += t.rhs[i];
        else if (t.basis[i] < 2 * n) x[t.basis[i] - n] -= t.rhs[i];
    }
    Rat val = 0;
    for (int j = 0; j < n; j++) val += c[j] * x[j];
    return {LPResult::OPTIMAL, val, x};
}

namespace {

Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}
Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int round_rat(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

}  // namespace

void lll_reduce(IntMat& image, IntMat& basis) {
    int dim = static_cast<int>(image.size());
    if (dim < 2) return;
    int w = static_cast<int>(image[0].size());
    std::vector<RatVec> gs(dim, RatVec(w));
    RatVec nrm(dim);
    RatMat mu(dim, RatVec(dim, Rat(0)));
    auto recompute = [&]() {
        for (int i = 0; i < dim; i++) {
            for (int t = 0; t < w; t++) gs[i][t] = Rat(image[i][t]);
            for (int j = 0; j < i; j++) {
                if (nrm[j] == 0) {
                    mu[i][j] = 0;
                    continue;
                }
                Rat dp = 0;
                for (int t = 0; t < w; t++) dp += Rat(image[i][t]) * gs[j][t];
                mu[i][j] = dp / nrm[j];
                for (int t = 0; t < w; t++) gs[i][t] -= mu[i][j] * gs[j][t];
            }
            nrm[i] = 0;
            for (int t = 0; t < w; t++) nrm[i] += gs[i][t] * gs[i][t];
        }
    };
    recompute();
    const Rat delta(99, 100);
    int k = 1;
    while (k < dim) {
        for (int j = k - 1; j >= 0; j--) {
            Int q = round_rat(mu[k][j]);
            if (q == 0) continue;
            for (int t = 0; t < w; t++) image[k][t] -= q * image[j][t];
            for (size_t t = 0; t < basis[k].size(); t++)
                basis[k][t] -= q * basis[j][t];
            recompute();
        }
        if (nrm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * nrm[k - 1]) {
            k++;
        } else {
            std::swap(image[k], image[k - 1]);
            std::swap(basis[k], basis[k - 1]);
            recompute();
            k = std::max(k - 1, 1);
        }
    }
}

void integer_points(const RatMat& a, const RatVec& b,
                    const std::function<bool(const IntVec&)>& emit) {
    int m = static_cast<int>(a.size());
    int k = m == 0 ? 0 : static_cast<int>(a[0].size());
    bool stopped = false;
    if (k == 0) {
        for (int i = 0; i < m; i++)
            if (b[i] < 0) return;
        emit({});
        return;
    }
    // Root bounds per coordinate via exact LPs on a x >= -b.
    RatMat neg(m, RatVec(k));
    for (int i = 0; i < m; i++)
        for (int j = 0; j < k; j++) neg[i][j] = -a[i][j];
    std::vector<Int> lo(k), hi(k);
    for (int j = 0; j < k; j++) {
        RatVec c(k, 0);
        c[j] = 1;
        auto down = lp_min(neg, b, c);  // -a x <= b  <=>  a x + b >= 0
        if (down.status == LPResult::INFEASIBLE) return;
        if (down.status == LPResult::UNBOUNDED)
            throw std::invalid_argument("integer_points: unbounded polyhedron");
        lo[j] = ceil_rat(down.value);
        c[j] = -1;
        auto up = lp_min(neg, b, c);
        if (up.status == LPResult::UNBOUNDED)
            throw std::invalid_argument("integer_points: unbounded polyhedron");
        hi[j] = floor_rat(-up.value);
    }

    IntVec x(k, 0);
    // DFS with interval propagation over the suffix.
    std::function<void(int, std::vector<Int>, std::vector<Int>)> rec =
        [&](int t, std::vector<Int> lov, std::vector<Int> hiv) {
            // propagate: tighten remaining intervals using each row
            for (int round = 0; round < 2; round++) {
                for (int i = 0; i < m; i++) {
                    // slack if every unfixed var sits at its favorable end
                    Rat fixed = b[i];
                    for (int j = 0; j < t; j++) fixed += a[i][j] * Rat(x[j]);
                    Rat best = fixed;
                    for (int j = t; j < k; j++)
                        best += a[i][j] * Rat(a[i][j] > 0 ? hiv[j] : lov[j]);
                    if (best < 0) return;  // infeasible subtree
                    for (int j = t; j < k; j++) {
                        if (a[i][j] == 0) continue;
                        Rat others = fixed;
                        for (int j2 = t; j2 < k; j2++) {
                            if (j2 == j) continue;
                            others += a[i][j2] * Rat(a[i][j2] > 0 ? hiv[j2] : lov[j2]);
                        }
                        // a_ij * x_j + others >= 0
                        if (a[i][j] > 0) {
                            Int nb = ceil_rat(-others / a[i][j]);
                            if (nb > lov[j]) lov[j] = nb;
                        } else {
                            Int nb = floor_rat(others / -a[i][j]);
                            if (nb < hiv[j]) hiv[j] = nb;
                        }
                        if (lov[j] > hiv[j]) return;
                    }
                }
            }
            if (t == k) {
                for (int i = 0; i < m; i++) {
                    Rat s = b[i];
                    for (int j = 0; j < k; j++) s += a[i][j] * Rat(x[j]);
                    if (s < 0) return;
                }
                if (!emit(x)) stopped = true;
                return;
            }
            for (Int v = lov[t]; v <= hiv[t] && !stopped; v++) {
                x[t] = v;
                rec(t + 1, lov, hiv);
            }
        };
    rec(0, lo, hi);
}

std::vector<IntVec> integer_points(const RatMat& a, const RatVec& b) {
    std::vector<IntVec> out;
    integer_points(a, b, [&](const IntVec& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

}  // namespace invring
