#include "invring/ramsey.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace invring {

RamseyCoefficients ramsey_f_vector(const GPoset& p, int n, int k) {
    int r = p.max_cv;
    if (r < k) throw std::invalid_argument("ramsey_f_vector: r < k");
    if (n < r) throw std::invalid_argument("ramsey_f_vector: n < r");
    RamseyCoefficients rc;
    rc.k = k;
    rc.n = n;
    rc.f.assign(p.size(), 0);
    for (int i = 0; i < p.size(); ++i) {
        const Graph& g = p.graphs[i];
        if (g.cv() > k) continue;
        Int v = binomial(n - g.cv(), k - g.cv());
        if (g.size() % 2) v = -v;
        // the complete graph K_k carries the clique-count term as well
        if (g.cv() == k && g.size() == k * (k - 1) / 2) v += 1;
        rc.f[i] = v;
    }
    return rc;
}

RatVec ramsey_orthogonal_coeffs(const GPoset& p, int n, int k) {
    RamseyCoefficients rc = ramsey_f_vector(p, n, k);
    IntVec d = scaling_matrix(p, n);
    IntMat e = etransform(p);
    RatVec a(p.size(), Rat(0));
    for (int j = 0; j < p.size(); ++j) {
        Rat acc = 0;
        for (int i = 0; i < p.size(); ++i)
            if (rc.f[i] != 0 && e[j][i] != 0) acc += Rat(rc.f[i] * e[j][i], d[i]);
        acc.canonicalize();
        a[j] = acc;
    }
    return a;
}

namespace {

// G = (E^-1)^T D
IntMat gmatrix(const GPoset& p, const IntVec& d) {
    IntMat binv = etransform_inverse(p);
    int N = p.size();
    IntMat g(N, IntVec(N, 0));
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) g[i][j] = binv[j][i] * d[j];
    return g;
}

bool pair_valid(const GPoset& p, int i, int j) {
    if (p.graphs[i].cv() + p.graphs[j].cv() > p.max_cv) return false;
    if (p.edge_bounded && p.graphs[i].size() + p.graphs[j].size() > p.max_edges) return false;
    return true;
}

}  // namespace

std::vector<CurvePoint> lp_lower_bound_curve(const GPoset& p, int n, int k,
                                             const Int& z1_lo, const Int& z1_hi,
                                             const Families& fam) {
    int N = p.size();
    RamseyCoefficients rc = ramsey_f_vector(p, n, k);
    IntVec d = scaling_matrix(p, n);
    IntMat g = gmatrix(p, d);
    std::vector<CurvePoint> out;
    for (Int z1 = z1_lo; z1 <= z1_hi; ++z1) {
        int M = N - 2;  // z_0 = 1 and z_1 are fixed
        RatMat a;
        RatVec b;
        auto add_le = [&](const RatVec& row, const Rat& rhs) {
            a.push_back(row);
            b.push_back(rhs);
        };
        for (int j = 0; j < M; ++j) {  // z >= 0
            RatVec row(M, Rat(0));
            row[j] = -1;
            add_le(row, Rat(0));
        }
        if (fam.linear)  // constraint I: -(E^-1)^T D z <= 0
            for (int i = 0; i < N; ++i) {
                RatVec row(M, Rat(0));
                for (int j = 2; j < N; ++j) row[j - 2] = Rat(-g[i][j]);
                add_le(row, Rat(g[i][0] + g[i][1] * z1));
            }
        if (fam.products)  // constraint II linearized through the fixed z_1
            for (int i = 1; i < N; ++i)
                for (int j = i; j < N; ++j) {
                    if (!pair_valid(p, i, j)) continue;
                    if (i > 1 && j > 1) continue;  // no fixed factor
                    IntVec c = product_coeffs(p, i, j);
                    RatVec row(M, Rat(0));
                    Rat rhs = 0;
                    for (int t = 2; t < N; ++t) row[t - 2] = Rat(c[t]);
                    rhs -= Rat(c[0] + c[1] * z1);
                    if (j <= 1) {  // both factors fixed
                        rhs += (i == 1 ? Rat(z1) : Rat(1)) * (j == 1 ? Rat(z1) : Rat(1));
                    } else {
                        row[j - 2] -= (i == 1 ? Rat(z1) : Rat(1));
                    }
                    // equality as two inequalities: row.z <= rhs and >= rhs
                    add_le(row, rhs);
                    RatVec neg(M);
                    for (int t = 0; t < M; ++t) neg[t] = -row[t];
                    add_le(neg, -rhs);
                }
        RatVec obj(M, Rat(0));
        for (int j = 2; j < N; ++j) obj[j - 2] = Rat(rc.f[j]);
        auto lp = lp_min(a, b, obj);
        CurvePoint pt;
        pt.z1 = z1;
        pt.feasible = lp.status != LPResult::INFEASIBLE;
        pt.bounded = lp.status == LPResult::OPTIMAL;
        if (pt.bounded) pt.bound = lp.value + Rat(rc.f[0] + rc.f[1] * z1);
        out.push_back(pt);
    }
    return out;
}

namespace {

struct ZeroPipeline {
    const GPoset& p;
    int n, k, r, N;
    ZeroSearchOptions opt;
    RamseyCoefficients rc;
    IntVec d;
    IntMat g, e;
    std::vector<int> zset;            // a_i != 0
    std::vector<char> inz;
    std::vector<std::pair<int, int>> pairs;  // valid products, at least one small factor
    std::map<std::pair<int, int>, IntVec> pc;
    std::vector<int> assigned;        // cv <= r/2, beyond indices 0 and 1
    ZeroSearchResult res;
    std::set<IntVec> seen;
    std::set<std::string> done;
    std::ofstream state;
    bool stopped = false;

    ZeroPipeline(const GPoset& p_, int n_, int k_, const ZeroSearchOptions& o)
        : p(p_), n(n_), k(k_), r(p_.max_cv), N(p_.size()), opt(o) {
        rc = ramsey_f_vector(p, n, k);
        d = scaling_matrix(p, n);
        g = gmatrix(p, d);
        e = etransform(p);
        RatVec a = ramsey_orthogonal_coeffs(p, n, k);
        inz.assign(N, 0);
        for (int i = 0; i < N; ++i) {
            if (a[i] < 0)
                throw std::logic_error("orthogonal Ramsey coefficient a_i < 0");
            if (a[i] != 0) {
                zset.push_back(i);
                inz[i] = 1;
            }
        }
        for (int i = 1; i < N; ++i)
            for (int j = i; j < N; ++j)
                if (pair_valid(p, i, j)) {
                    pairs.push_back({i, j});
                    pc[{i, j}] = product_coeffs(p, i, j);
                }
        for (int i = 2; i < N; ++i)
            if (p.graphs[i].cv() <= r / 2) assigned.push_back(i);
        res.n = n;
        res.k = k;
        res.r = r;
    }

    void load_state() {
        if (opt.state_file.empty()) return;
        std::ifstream in(opt.state_file);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream is(line);
            std::string tag;
            is >> tag;
            if (tag == "done") {
                std::string key;
                is >> key;
                done.insert(key);
            } else if (tag == "zero") {
                IntVec z;
                std::string tok;
                while (is >> tok) z.push_back(Int(tok));
                if ((int)z.size() == N) report(z, false);
            }
        }
        state.open(opt.state_file, std::ios::app);
    }

    void mark_done(const std::string& key) {
        if (state.is_open()) {
            state << "done " << key << "\n";
            state.flush();
        }
    }

    void report(const IntVec& z, bool persist) {
        if (!seen.insert(z).second) return;
        if (persist && state.is_open()) {
            state << "zero";
            for (auto& v : z) state << " " << v;
            state << "\n";
            state.flush();
        }
        res.zeros.push_back(z);
        if (opt.on_zero && !opt.on_zero(z)) stopped = true;
    }

    void run() {
        load_state();
        Int edges_max = binomial(n, 2);
        std::vector<Int> z1s;
        if (opt.sweep_z1)
            for (Int v = 0; v <= edges_max; ++v) z1s.push_back(v);
        else
            z1s.push_back(edges_max / 2);
        for (auto& z1 : z1s) {
            if (stopped) break;
            IntVec val(N, 0);
            std::vector<char> known(N, 0);
            val[0] = 1;
            known[0] = 1;
            val[1] = z1;
            known[1] = 1;
            loop_assigned(0, val, known);
        }
        res.certified = res.zeros.empty();
    }

    // remaining assigned variables, bounded through the orthogonal sum
    void loop_assigned(size_t idx, IntVec& val, std::vector<char>& known) {
        if (stopped) return;
        if (idx == assigned.size()) {
            pipeline(val, known);
            return;
        }
        int i = assigned[idx];
        Int maxcol = 0;
        for (int t = 0; t < N; ++t)
            if (e[t][i] > maxcol) maxcol = e[t][i];
        Int ub;
        mpz_fdiv_q(ub.get_mpz_t(), Int(binomial(n, r) * maxcol).get_mpz_t(),
                   d[i].get_mpz_t());
        known[i] = 1;
        for (Int v = 0; v <= ub && !stopped; ++v) {
            val[i] = v;
            loop_assigned(idx + 1, val, known);
        }
        known[i] = 0;
        val[i] = 0;
    }

    std::string branch_key(const IntVec& val, const Int& c0) const {
        std::ostringstream os;
        os << val[1];
        for (int i : assigned) os << "," << val[i];
        os << ":" << c0;
        return os.str();
    }

    void pipeline(IntVec& val, std::vector<char>& known) {
        std::vector<int> rest;
        std::vector<int> pos(N, -1);
        for (int i = 0; i < N; ++i)
            if (!known[i]) {
                pos[i] = (int)rest.size();
                rest.push_back(i);
            }
        int M = (int)rest.size();
        IntMat eq;
        IntVec rhs;
        for (int i : zset) {  // G* z = 0
            IntVec row(M, 0);
            Int c = 0;
            for (int j = 0; j < N; ++j) {
                if (g[i][j] == 0) continue;
                if (known[j])
                    c -= g[i][j] * val[j];
                else
                    row[pos[j]] = g[i][j];
            }
            eq.push_back(row);
            rhs.push_back(c);
        }
        for (auto& [a, b] : pairs) {  // P rows: linearized products
            if (!known[a] && !known[b]) continue;
            const IntVec& c = pc.at({a, b});
            IntVec row(M, 0);
            Int rh = 0;
            for (int t = 0; t < N; ++t) {
                if (c[t] == 0) continue;
                if (known[t])
                    rh -= c[t] * val[t];
                else
                    row[pos[t]] += c[t];
            }
            if (known[a] && known[b]) {
                rh += val[a] * val[b];
            } else {
                int u = known[a] ? b : a;
                row[pos[u]] -= val[known[a] ? a : b];
            }
            eq.push_back(row);
            rhs.push_back(rh);
        }
        if (opt.orthosum) {  // sum of orthogonal parameters = C(n,r)
            IntVec row(M, 0);
            Int rh = binomial(n, r);
            for (int j = 0; j < N; ++j) {
                Int s = 0;
                for (int i = 0; i < N; ++i) s += g[i][j];
                if (known[j])
                    rh -= s * val[j];
                else
                    row[pos[j]] = s;
            }
            eq.push_back(row);
            rhs.push_back(rh);
        }
        auto z0 = inverse_image(eq, rhs);
        if (!z0) return;
        IntMat kb = kernel_zbasis(eq);
        int dim = (int)kb.size();
        if (dim > 1) {
            // reduce the kernel basis in orthogonal-parameter coordinates,
            // where every axis shares a scale; the raw basis from the HNF is
            // badly skewed and makes branching and rounding hopeless
            std::vector<int> fr;
            for (int i = 0; i < N; ++i)
                if (!inz[i]) fr.push_back(i);
            IntMat img(dim, IntVec(fr.size(), 0));
            for (int m = 0; m < dim; ++m)
                for (size_t wi = 0; wi < fr.size(); ++wi) {
                    Int s = 0;
                    for (int t = 0; t < M; ++t)
                        s += g[fr[wi]][rest[t]] * kb[m][t];
                    img[m][wi] = s;
                }
            lll_reduce(img, kb);
        }
        // inequalities: z_rest >= 0 and the remaining rows of G
        RatMat w;
        RatVec w0;
        for (int t = 0; t < M; ++t) {
            RatVec row(M, Rat(0));
            row[t] = 1;
            w.push_back(row);
            w0.push_back(Rat(0));
        }
        for (int i = 0; i < N; ++i) {
            if (inz[i]) continue;  // G^l only
            RatVec row(M, Rat(0));
            Rat c0 = 0;
            for (int j = 0; j < N; ++j) {
                if (g[i][j] == 0) continue;
                if (known[j])
                    c0 += Rat(g[i][j] * val[j]);
                else
                    row[pos[j]] += Rat(g[i][j]);
            }
            w.push_back(row);
            w0.push_back(c0);
        }
        RatMat a((int)w.size(), RatVec(dim, Rat(0)));
        RatVec b((int)w.size());
        for (size_t rr = 0; rr < w.size(); ++rr) {
            Rat c = w0[rr];
            for (int t = 0; t < M; ++t) c += w[rr][t] * Rat((*z0)[t]);
            b[rr] = c;
            for (int m = 0; m < dim; ++m) {
                Rat acc = 0;
                for (int t = 0; t < M; ++t) acc += w[rr][t] * Rat(kb[m][t]);
                a[rr][m] = acc;
            }
        }
        auto emit_point = [&](const IntVec& c) {
            IntVec z = val;
            for (int t = 0; t < M; ++t) {
                Int v = (*z0)[t];
                for (int m = 0; m < dim; ++m) v += c[m] * kb[m][t];
                z[rest[t]] = v;
            }
            Int fz = 0;
            for (int i = 0; i < N; ++i) fz += rc.f[i] * z[i];
            if (fz != 0) throw std::logic_error("pipeline produced f.z != 0");
            report(z, true);
        };
        // pre-pass: round a deep interior point (Chebyshev, row-norm scaled)
        // onto the kernel lattice and repair greedily; with the reduced basis
        // this usually lands inside the polyhedron immediately, while the
        // exhaustive slab loop below retains the certification semantics
        if (dim > 0) {
            RatMat cn;
            RatVec cb;
            for (size_t i = 0; i < a.size(); ++i) {
                Rat sc = 0;
                RatVec row(dim + 1);
                for (int j = 0; j < dim; ++j) {
                    row[j] = -a[i][j];
                    sc += abs(a[i][j]);
                }
                if (sc == 0) {
                    if (b[i] < 0) return;  // branch infeasible outright
                    continue;
                }
                row[dim] = sc;
                cn.push_back(row);
                cb.push_back(b[i]);
            }
            RatVec obj(dim + 1, Rat(0));
            obj[dim] = -1;
            auto ip = lp_min(cn, cb, obj);
            if (ip.status == LPResult::INFEASIBLE) return;
            if (ip.status == LPResult::OPTIMAL) {
                IntVec c(dim);
                for (int j = 0; j < dim; ++j) c[j] = round_int(ip.x[j]);
                auto violation = [&](const IntVec& cc) {
                    std::pair<int, Rat> v{0, Rat(0)};
                    for (size_t i = 0; i < a.size(); ++i) {
                        Rat s = b[i];
                        for (int j = 0; j < dim; ++j) s += a[i][j] * Rat(cc[j]);
                        if (s < 0) {
                            v.first++;
                            v.second -= s;
                        }
                    }
                    return v;
                };
                auto nv = violation(c);
                for (int it = 0; it < 64 * dim && nv.first > 0; ++it) {
                    int bj = -1, bd = 0;
                    auto best = nv;
                    for (int j = 0; j < dim; ++j)
                        for (int dv : {1, -1}) {
                            c[j] += dv;
                            auto v2 = violation(c);
                            c[j] -= dv;
                            if (v2 < best) {
                                best = v2;
                                bj = j;
                                bd = dv;
                            }
                        }
                    if (bj < 0) break;
                    c[bj] += bd;
                    nv = best;
                }
                if (nv.first == 0) {
                    emit_point(c);
                    if (stopped) return;
                }
            }
        }
        if (dim == 0) {
            std::string key = branch_key(val, 0);
            if (done.count(key)) return;
            bool feas = true;
            for (auto& bb : b)
                if (bb < 0) feas = false;
            if (feas) emit_point(IntVec{});
            mark_done(key);
            return;
        }
        // branch on the first kernel coordinate: resumable and partitionable
        RatVec obj(dim, Rat(0));
        obj[0] = 1;
        auto lo = lp_min(negate_rows(a), b, obj);
        RatVec nobj(dim, Rat(0));
        nobj[0] = -1;
        auto hi = lp_min(negate_rows(a), b, nobj);
        if (lo.status == LPResult::INFEASIBLE) return;
        if (lo.status != LPResult::OPTIMAL || hi.status != LPResult::OPTIMAL)
            throw std::runtime_error(
                "zero search polyhedron is unbounded; enable the orthogonal sum");
        Int clo = ceil_int(lo.value), chi = floor_int(-hi.value);
        long counter = 0;
        for (Int v = clo; v <= chi && !stopped; ++v, ++counter) {
            if (opt.workers > 1 && counter % opt.workers != opt.worker_id) continue;
            std::string key = branch_key(val, v);
            if (done.count(key)) continue;
            RatMat ab = a;
            RatVec bb = b;
            RatVec fix(dim, Rat(0));
            fix[0] = 1;
            ab.push_back(fix);
            bb.push_back(Rat(-v));
            for (auto& x : fix) x = -x;
            ab.push_back(fix);
            bb.push_back(Rat(v));
            integer_points(ab, bb, [&](const IntVec& c) {
                emit_point(c);
                return !stopped;
            });
            if (!stopped) mark_done(key);
        }
    }

    // lp_min expects a x <= b; ours is a x + b >= 0
    static RatMat negate_rows(const RatMat& a) {
        RatMat m = a;
        for (auto& row : m)
            for (auto& x : row) x = -x;
        return m;
    }
    static Int ceil_int(const Rat& q) {
        Int r;
        mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return r;
    }
    static Int floor_int(const Rat& q) {
        Int r;
        mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return r;
    }
    static Int round_int(const Rat& q) { return floor_int(q + Rat(1, 2)); }
};

}  // namespace

ZeroSearchResult find_r_graphic_zeros(const GPoset& p, int n, int k,
                                      const ZeroSearchOptions& opt) {
    if (p.max_cv < k) throw std::invalid_argument("find_r_graphic_zeros: r < k");
    if (n < p.max_cv) throw std::invalid_argument("find_r_graphic_zeros: n < r");
    ZeroPipeline zp(p, n, k, opt);
    zp.run();
    return zp.res;
}

}  // namespace invring
