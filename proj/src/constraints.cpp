#include "invring/constraints.hpp"

#include <sstream>
#include <stdexcept>

namespace invring {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool pair_valid(const GPoset& p, int i, int j) {
    if (p.graphs[i].cv() + p.graphs[j].cv() > p.max_cv) return false;
    if (p.edge_bounded && p.graphs[i].size() + p.graphs[j].size() > p.max_edges) return false;
    return true;
}

}  // namespace

IntVec scaling_matrix(const GPoset& p, int n) {
    int r = p.max_cv;
    if (n < r) throw std::invalid_argument("scaling_matrix: n < r");
    IntVec d(p.size());
    for (int i = 0; i < p.size(); ++i)
        d[i] = binomial(n - p.graphs[i].cv(), r - p.graphs[i].cv());
    return d;
}

LiftResult lift_inequality(const RatVec& c, const GPoset& p, int n) {
    if ((int)c.size() != p.size())
        throw std::invalid_argument("lift_inequality: dimension mismatch");
    IntMat e = etransform(p);
    LiftResult res;
    for (int i = 0; i < p.size(); ++i) {
        Rat v = 0;
        for (int j = 0; j < p.size(); ++j) v += c[j] * Rat(e[i][j]);
        if (v > 0) {
            res.witness = i;
            return res;
        }
    }
    IntVec d = scaling_matrix(p, n);
    res.ok = true;
    res.coeffs.resize(p.size());
    for (int i = 0; i < p.size(); ++i) res.coeffs[i] = c[i] * Rat(d[i]);
    return res;
}

ConstraintReport weakly_graphic_check(const RatVec& z, const GPoset& p, int n) {
    int N = p.size();
    if ((int)z.size() != N)
        throw std::invalid_argument("weakly_graphic_check: dimension mismatch");
    ConstraintReport rep;
    for (int i = 0; i < N; ++i) {
        if (z[i] < 0) {
            rep.nonneg = false;
            rep.violations.push_back("z_" + std::to_string(i) + " < 0");
        }
        if (z[i].get_den() != 1) {
            rep.integral = false;
            rep.violations.push_back("z_" + std::to_string(i) + " not an integer");
        }
    }
    IntVec d = scaling_matrix(p, n);
    IntMat binv = etransform_inverse(p);
    for (int i = 0; i < N; ++i) {
        Rat zhat = 0;  // i-th orthogonal parameter
        for (int j = i; j < N; ++j) zhat += Rat(binv[j][i] * d[j]) * z[j];
        if (zhat < 0) {
            rep.linear = false;
            rep.violations.push_back("orthogonal parameter " + std::to_string(i) + " < 0");
        }
    }
    for (int i = 1; i < N; ++i)
        for (int j = i; j < N; ++j) {
            if (!pair_valid(p, i, j)) continue;
            IntVec c = product_coeffs(p, i, j);
            Rat rhs = 0;
            for (int k = 0; k < N; ++k)
                if (c[k] != 0) rhs += Rat(c[k]) * z[k];
            if (z[i] * z[j] != rhs) {
                rep.products = false;
                rep.violations.push_back("product (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") fails");
            }
        }
    return rep;
}

BoundSystem triangular_bounds(const GPoset& p, int n) {
    int N = p.size();
    BoundSystem bs;
    bs.n = n;
    bs.d = scaling_matrix(p, n);
    bs.total = binomial(n, p.max_cv);
    IntMat binv = etransform_inverse(p);
    bs.lower.assign(N, RatVec(N, Rat(0)));
    bs.upper.assign(N, RatVec(N, Rat(0)));
    // lower = ((E^-1)^T - I) D, upper = T (E^-1)^T D; both strictly upper.
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            bs.lower[i][j] = Rat(binv[j][i] * bs.d[j]);
            // the k = i term belongs here: it comes from moving the
            // expansion of the i-th orthogonal parameter across
            Int s = 0;
            for (int k = i; k <= j; ++k) s += binv[j][k];
            bs.upper[i][j] = Rat(s * bs.d[j]);
        }
    return bs;
}

std::pair<Rat, Rat> raja3_bounds(int n, const Int& z1) {
    if (n < 5) throw std::invalid_argument("raja3_bounds: n < 5");
    Rat x(z1);
    Rat c3 = Rat(binomial(n - 2, 3));
    Rat m = Rat(n - 4);
    Rat lower = (-(3 * c3 + 2 * m) * x + 2 * m * x * x) / (Rat(binomial(n - 3, 2)) + 4 * m);
    Rat upper = (m / 2 * x * x + (Rat(3, 2) * c3 - m / 2) * x) / (Rat(binomial(n - 3, 2)) + m);
    return {lower, upper};
}

BoundValidation validate_bound_matrices(const GPoset& p, const RatMat& lower,
                                        const RatMat& upper) {
    int N = p.size();
    if ((int)lower.size() != N || (int)upper.size() != N)
        throw std::invalid_argument("validate_bound_matrices: dimension mismatch");
    BoundValidation res;
    IntMat e = etransform(p);
    for (int g = 0; g < N; ++g)
        for (int i = 1; i < N; ++i) {  // coordinate 0 is the constant 1
            Rat lo = 0, hi = 0;
            for (int j = 0; j < N; ++j) {
                lo += lower[i][j] * Rat(e[g][j]);
                hi += upper[i][j] * Rat(e[g][j]);
            }
            Rat x(e[g][i]);
            if (lo > x || x > hi) {
                res.pass = false;
                std::ostringstream os;
                os << "member " << g << " row " << i << ": " << lo << " <= " << x
                   << " <= " << hi << " fails";
                res.witnesses.push_back(os.str());
            }
        }
    return res;
}

namespace {

// DFS over the "small" variables (every valid product pair has one such
// factor), then an exact integer lattice + polytope walk over the rest.
struct Enumerator {
    const GPoset& p;
    int n;
    Families fam;
    const std::function<bool(const IntVec&)>& emit;

    int N;
    IntVec d;
    Int total;
    IntMat e, binv;
    std::vector<std::pair<int, int>> pairs;           // valid (a,b), 1 <= a <= b
    std::map<std::pair<int, int>, IntVec> pc;         // product coefficients
    IntVec maxcol;                                    // column maxima of E
    IntVec s;                                         // orthogonal-sum weights
    std::vector<int> dfs_vars, rest;
    std::vector<char> known;
    IntVec val;
    bool stopped = false;

    Enumerator(const GPoset& p_, int n_, const std::map<int, Int>& fixed,
               const Families& f, const std::function<bool(const IntVec&)>& cb)
        : p(p_), n(n_), fam(f), emit(cb), N(p_.size()) {
        d = scaling_matrix(p, n);
        total = binomial(n, p.max_cv);
        e = etransform(p);
        binv = etransform_inverse(p);
        known.assign(N, 0);
        val.assign(N, 0);
        val[0] = 1;
        known[0] = 1;
        for (auto& [i, v] : fixed) {
            val[i] = v;
            known[i] = 1;
        }
        int half = p.edge_bounded ? p.max_edges / 2 : p.max_cv / 2;
        for (int i = 1; i < N; ++i) {
            if (known[i]) continue;
            int small = p.edge_bounded ? p.graphs[i].size() : p.graphs[i].cv();
            if (small <= half)
                dfs_vars.push_back(i);
            else
                rest.push_back(i);
        }
        if (fam.products)
            for (int a = 1; a < N; ++a)
                for (int b = a; b < N; ++b)
                    if (pair_valid(p, a, b)) {
                        pairs.push_back({a, b});
                        pc[{a, b}] = product_coeffs(p, a, b);
                    }
        maxcol.assign(N, 0);
        s.assign(N, 0);
        for (int j = 0; j < N; ++j) {
            for (int k = 0; k < N; ++k)
                if (e[k][j] > maxcol[j]) maxcol[j] = e[k][j];
            Int rs = 0;
            for (int i = 0; i < N; ++i) rs += binv[j][i];
            s[j] = rs * d[j];
        }
    }

    // pairs with both factors known must stay consistent: the known part of
    // the expansion may not exceed the product, with equality when nothing is
    // left unknown
    bool consistent() const {
        for (auto& [a, b] : pairs) {
            if (!known[a] || !known[b]) continue;
            const IntVec& c = pc.at({a, b});
            Int lhs = val[a] * val[b], acc = 0;
            bool open = false;
            for (int k = 0; k < N; ++k) {
                if (c[k] == 0) continue;
                if (known[k])
                    acc += c[k] * val[k];
                else
                    open = true;
            }
            if (acc > lhs || (!open && acc != lhs)) return false;
        }
        return true;
    }

    void run() {
        if (!consistent()) return;
        dfs(0);
    }

    void dfs(size_t level) {
        if (stopped) return;
        if (level == dfs_vars.size()) {
            leaf();
            return;
        }
        int i = dfs_vars[level];
        bool have_ub = false, forced = false;
        Int ub = 0, force_val = 0;
        if (fam.linear) {
            ub = floor_div(total * maxcol[i], d[i]);
            have_ub = true;
        }
        for (auto& [a, b] : pairs) {
            if (!known[a] || !known[b]) continue;
            const IntVec& c = pc.at({a, b});
            if (c[i] == 0) continue;
            Int lhs = val[a] * val[b], acc = 0;
            int open = 0;
            for (int k = 0; k < N; ++k) {
                if (c[k] == 0 || known[k]) {
                    if (c[k] != 0) acc += c[k] * val[k];
                } else
                    ++open;
            }
            Int slack = lhs - acc;
            if (slack < 0) return;
            Int cap = floor_div(slack, c[i]);
            if (!have_ub || cap < ub) ub = cap, have_ub = true;
            if (open == 1) {  // only z_i is unknown here: it is determined
                if (slack % c[i] != 0) return;
                Int v = slack / c[i];
                if (forced && v != force_val) return;
                forced = true;
                force_val = v;
            }
        }
        if (forced) {
            set_and_recurse(i, force_val, level);
            return;
        }
        if (!have_ub)
            throw std::runtime_error("enumerate_r_graphic: variable z_" +
                                     std::to_string(i) + " is unbounded");
        for (Int v = 0; v <= ub && !stopped; ++v) set_and_recurse(i, v, level);
    }

    void set_and_recurse(int i, const Int& v, size_t level) {
        val[i] = v;
        known[i] = 1;
        if (consistent()) dfs(level + 1);
        known[i] = 0;
        val[i] = 0;
    }

    void leaf() {
        int M = (int)rest.size();
        if (M == 0) {
            check_and_emit(val);
            return;
        }
        std::vector<int> pos(N, -1);
        for (int k = 0; k < M; ++k) pos[rest[k]] = k;
        // equality rows over the unknowns
        IntMat eq;
        IntVec rhs;
        for (auto& [a, b] : pairs) {
            if (!known[a] && !known[b]) continue;  // cannot happen by construction
            const IntVec& c = pc.at({a, b});
            IntVec row(M, 0);
            Int r = 0;
            for (int k = 0; k < N; ++k) {
                if (c[k] == 0) continue;
                if (known[k])
                    r -= c[k] * val[k];
                else
                    row[pos[k]] += c[k];
            }
            if (known[a] && known[b]) {
                r += val[a] * val[b];
            } else {  // exactly one factor unknown: product is linear in it
                int u = known[a] ? b : a;
                row[pos[u]] -= val[known[a] ? a : b];
            }
            eq.push_back(row);
            rhs.push_back(r);
        }
        if (fam.linear) {
            IntVec row(M, 0);
            Int r = total;
            for (int j = 0; j < N; ++j) {
                if (known[j])
                    r -= s[j] * val[j];
                else
                    row[pos[j]] = s[j];
            }
            eq.push_back(row);
            rhs.push_back(r);
        }
        IntVec x0(M, 0);
        IntMat kb;
        if (eq.empty()) {
            kb = identity_mat(M);
        } else {
            auto sol = inverse_image(eq, rhs);
            if (!sol) return;
            x0 = *sol;
            kb = kernel_zbasis(eq);
        }
        // inequalities W * z_rest + w0 >= 0
        RatMat w;
        RatVec w0;
        for (int k = 0; k < M; ++k) {  // z >= 0
            RatVec row(M, Rat(0));
            row[k] = 1;
            w.push_back(row);
            w0.push_back(Rat(0));
        }
        if (fam.linear)
            for (int i = 0; i < N; ++i) {
                RatVec row(M, Rat(0));
                Rat c0 = 0;
                for (int j = i; j < N; ++j) {
                    Int coef = binv[j][i] * d[j];
                    if (coef == 0) continue;
                    if (known[j])
                        c0 += Rat(coef * val[j]);
                    else
                        row[pos[j]] += Rat(coef);
                }
                w.push_back(row);
                w0.push_back(c0);
            }
        int dim = (int)kb.size();
        RatMat a(w.size(), RatVec(dim, Rat(0)));
        RatVec b(w.size());
        for (size_t r = 0; r < w.size(); ++r) {
            Rat c0 = w0[r];
            for (int k = 0; k < M; ++k) c0 += w[r][k] * Rat(x0[k]);
            b[r] = c0;
            for (int m = 0; m < dim; ++m) {
                Rat acc = 0;
                for (int k = 0; k < M; ++k) acc += w[r][k] * Rat(kb[m][k]);
                a[r][m] = acc;
            }
        }
        if (dim == 0) {
            for (auto& bb : b)
                if (bb < 0) return;
            IntVec z = val;
            for (int k = 0; k < M; ++k) z[rest[k]] = x0[k];
            check_and_emit(z);
            return;
        }
        for (auto& c : integer_points(a, b)) {
            IntVec z = val;
            for (int k = 0; k < M; ++k) {
                Int v = x0[k];
                for (int m = 0; m < dim; ++m) v += c[m] * kb[m][k];
                z[rest[k]] = v;
            }
            check_and_emit(z);
            if (stopped) return;
        }
    }

    void check_and_emit(const IntVec& z) {
        if (!emit(z)) stopped = true;
    }
};

}  // namespace

void enumerate_r_graphic(const GPoset& p, int n, const std::map<int, Int>& fixed,
                         const Families& fam,
                         const std::function<bool(const IntVec&)>& emit) {
    if (n < p.max_cv) throw std::invalid_argument("enumerate_r_graphic: n < r");
    Enumerator en(p, n, fixed, fam, emit);
    en.run();
}

}  // namespace invring
