#include "invring/local.hpp"

#include <algorithm>

#include "invring/linalg.hpp"
#include <functional>
#include <set>
#include <stdexcept>

namespace invring {

namespace {

std::vector<int> identity_tuple(int k) {
    std::vector<int> t(k);
    for (int i = 0; i < k; i++) t[i] = i;
    return t;
}

// all edge-preserving bijections of g's vertex set (plus isolated extras in
// verts) honoring the pins; calls cb with the image map
void for_each_automorphism(const Graph& g, const std::vector<int>& verts,
                           const std::map<int, int>& pins,
                           const std::function<void(const std::map<int, int>&)>& cb) {
    std::vector<int> perm = verts;
    std::sort(perm.begin(), perm.end());
    do {
        std::map<int, int> img;
        bool ok = true;
        for (size_t i = 0; i < verts.size() && ok; i++) {
            img[verts[i]] = perm[i];
            auto p = pins.find(verts[i]);
            ok = p == pins.end() || p->second == perm[i];
        }
        // isolated vertices may not land on connected ones and vice versa
        for (size_t i = 0; i < verts.size() && ok; i++)
            ok = g.degree(verts[i]) == g.degree(perm[i]);
        for (auto& [u, v] : g.edges)
            if (ok) ok = g.has_edge(img.at(u), img.at(v));
        if (ok) cb(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

Int stabilizer_order(const LocalGraph& g) {
    std::map<int, int> pins;
    for (int v : g.fixed) pins[v] = v;
    return embedding_count(g.base, g.base, pins);
}

// lower unitriangular solve E c = p
IntVec solve_lower(const IntMat& e, const IntVec& p) {
    int r = static_cast<int>(p.size());
    IntVec c(r);
    for (int i = 0; i < r; i++) {
        Int s = p[i];
        for (int j = 0; j < i; j++) s -= e[i][j] * c[j];
        c[i] = s;
    }
    return c;
}

// m = (E^T)^{-1} z for lower unitriangular E
IntVec solve_upper_t(const IntMat& e, const IntVec& z) {
    int r = static_cast<int>(z.size());
    IntVec m(r);
    for (int j = r - 1; j >= 0; j--) {
        Int s = z[j];
        for (int i = j + 1; i < r; i++) s -= e[i][j] * m[i];
        m[j] = s;
    }
    return m;
}

std::string key_str(const std::vector<int>& key) {
    std::string s = "(";
    for (size_t i = 0; i < key.size(); i++)
        s += (i ? "," : "") + std::to_string(key[i]);
    return s + ")";
}

}  // namespace

Graph LocalGraph::interior() const {
    std::vector<Edge> e;
    std::set<int> f(fixed.begin(), fixed.end());
    for (auto& [u, v] : base.edges)
        if (f.count(u) && f.count(v)) e.push_back({u, v});
    return Graph(e);
}

Graph LocalGraph::strip_interior() const {
    std::vector<Edge> e;
    std::set<int> f(fixed.begin(), fixed.end());
    for (auto& [u, v] : base.edges)
        if (!f.count(u) || !f.count(v)) e.push_back({u, v});
    return Graph(e);
}

Graph LocalGraph::drop_fixed() const {
    std::vector<Edge> e;
    std::set<int> f(fixed.begin(), fixed.end());
    for (auto& [u, v] : base.edges)
        if (!f.count(u) && !f.count(v)) e.push_back({u, v});
    return Graph(e);
}

std::vector<int> LocalGraph::vertices() const {
    std::set<int> vs(fixed.begin(), fixed.end());
    for (int v : base.vertices()) vs.insert(v);
    return {vs.begin(), vs.end()};
}

std::string LocalGraph::str() const {
    std::string s = base.size() ? base.str() : "1";
    s += "@[";
    for (size_t i = 0; i < fixed.size(); i++)
        s += (i ? "," : "") + std::to_string(fixed[i]);
    return s + "]";
}

void LocalGraph::validate() const {
    std::set<int> f(fixed.begin(), fixed.end());
    if (f.size() != fixed.size())
        throw std::invalid_argument("repeated fixed point");
}

Int local_eval(const LocalGraph& g, const Graph& h, const std::vector<int>& T) {
    g.validate();
    if (static_cast<int>(T.size()) != g.k())
        throw std::invalid_argument("fixed tuple size mismatch");
    if (std::set<int>(T.begin(), T.end()).size() != T.size())
        throw std::invalid_argument("repeated target vertex");
    std::map<int, int> pins;
    for (int i = 0; i < g.k(); i++) pins[g.fixed[i]] = T[i];
    Int emb = embedding_count(g.base, h, pins);
    Int aut = stabilizer_order(g);
    if (emb % aut != 0) throw std::logic_error("local_eval: inexact division");
    return emb / aut;
}

Int fixed_orbit_size(const LocalGraph& g) {
    g.validate();
    for (int v : g.fixed)
        if (g.base.degree(v) == 0)
            throw std::invalid_argument("orbit of an isolated fixed point depends on the ambient");
    std::set<std::vector<int>> images;
    for_each_automorphism(g.base, g.base.vertices(), {}, [&](const std::map<int, int>& img) {
        std::vector<int> t;
        for (int v : g.fixed) t.push_back(img.at(v));
        images.insert(t);
    });
    return Int(static_cast<long>(images.size()));
}

bool s_connected(const LocalGraph& g) {
    std::set<int> f(g.fixed.begin(), g.fixed.end());
    std::vector<int> w;
    for (int v : g.base.vertices())
        if (!f.count(v)) w.push_back(v);
    if (w.empty()) return false;
    // non-fixed part connected among itself
    std::set<int> seen{w[0]};
    std::vector<int> stack{w[0]};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto& [a, b] : g.base.edges) {
            int o = a == u ? b : b == u ? a : -1;
            if (o >= 0 && !f.count(o) && !seen.count(o)) {
                seen.insert(o);
                stack.push_back(o);
            }
        }
    }
    if (seen.size() != w.size()) return false;
    // every fixed vertex of the local graph reaches the non-fixed part
    for (int v : g.fixed) {
        bool touch = g.base.degree(v) == 0 ? false : false;
        for (auto& [a, b] : g.base.edges)
            if ((a == v && !f.count(b)) || (b == v && !f.count(a))) touch = true;
        if (!touch) return false;
    }
    return true;
}

Int restore_global(const LocalGraph& g, const Graph& h, int n, RestoreMode mode) {
    for (int v : h.vertices())
        if (v >= n) throw std::invalid_argument("host does not fit ambient n");
    int k = g.k();
    std::vector<int> t;
    Int sum = 0;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(t.size()) == k) {
            sum += local_eval(g, h, t);
            return;
        }
        for (int j = 0; j < n; j++) {
            if (std::find(t.begin(), t.end(), j) != t.end()) continue;
            t.push_back(j);
            self(self);
            t.pop_back();
        }
    };
    rec(rec);
    if (mode == RestoreMode::OrbitSum) return sum;
    Int orb = fixed_orbit_size(g);
    if (sum % orb != 0) throw std::logic_error("restore_global: inexact division");
    return sum / orb;
}

int LocalGPoset::find(const LocalGraph& g) const {
    g.validate();
    for (int i = 0; i < size(); i++) {
        const LocalGraph& m = members[i];
        if (m.base.size() != g.base.size()) continue;
        if (m.vertices().size() != g.vertices().size()) continue;
        if (m.k() != g.k()) continue;
        std::map<int, int> pins;
        for (int j = 0; j < g.k(); j++) pins[g.fixed[j]] = m.fixed[j];
        if (embedding_count(g.base, m.base, pins) > 0) return i;
    }
    return -1;
}

std::vector<LocalGPoset> build_local_posets(const LocalConfig& cfg) {
    if (cfg.radius != 1)
        throw std::invalid_argument("only radius-1 intersection posets are generated");
    if (cfg.degree_bound < 1)
        throw std::invalid_argument("degree bound must be positive");
    int d = cfg.degree_bound;
    std::vector<LocalGPoset> out;
    for (int k = 1; k - 1 <= d; k++) {
        LocalGPoset level;
        level.k = k;
        level.radius = cfg.radius;
        level.degree_bound = d;
        level.connected_only = cfg.connected_only;
        // complete interior; t further vertices adjacent to every fixed point
        for (int t = (k == 1 ? 1 : 0); t <= d - (k - 1); t++) {
            std::vector<Edge> frame;
            for (int a = 0; a < k; a++)
                for (int b = a + 1; b < k; b++) frame.push_back({a, b});
            for (int x = 0; x < t; x++)
                for (int a = 0; a < k; a++) frame.push_back({a, k + x});
            std::vector<Edge> among;
            for (int x = 0; x < t; x++)
                for (int y = x + 1; y < t; y++) among.push_back({k + x, k + y});
            for (unsigned long mask = 0; mask < (1ul << among.size()); mask++) {
                std::vector<Edge> e = frame;
                for (size_t i = 0; i < among.size(); i++)
                    if (mask >> i & 1) e.push_back(among[i]);
                Graph b(e);
                if (b.max_degree() > d) continue;
                LocalGraph cand{b, identity_tuple(k)};
                if (cfg.connected_only && !(s_connected(cand) || t == 0)) continue;
                if (level.find(cand) < 0) level.members.push_back(cand);
            }
        }
        if (level.members.empty()) break;
        std::stable_sort(level.members.begin(), level.members.end(),
                         [](const LocalGraph& a, const LocalGraph& b) {
                             if (a.base.size() != b.base.size())
                                 return a.base.size() < b.base.size();
                             if (a.vertices().size() != b.vertices().size())
                                 return a.vertices().size() < b.vertices().size();
                             return canonical_form(a.base).edges <
                                    canonical_form(b.base).edges;
                         });
        out.push_back(std::move(level));
    }
    return out;
}

IntMat local_etransform(const LocalGPoset& p) {
    int r = p.size();
    IntMat e(r, IntVec(r, 0));
    auto t = identity_tuple(p.k);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < r; j++)
            e[i][j] = local_eval(p.members[j], p.members[i].base, t);
    return e;
}

IntVec orbit_scaling(const LocalGPoset& p, int n) {
    IntVec d;
    int nf = p.k - 1;  // newest fixed vertex
    for (const LocalGraph& m : p.members) {
        if (m.base.degree(nf) == 0) {
            d.push_back(Int(n) - (static_cast<int>(m.vertices().size()) - 1));
            continue;
        }
        std::map<int, int> pins;
        for (int j = 0; j < nf; j++) pins[j] = j;
        std::set<int> images;
        for_each_automorphism(m.base, m.base.vertices(), pins,
                              [&](const std::map<int, int>& img) { images.insert(img.at(nf)); });
        d.push_back(Int(static_cast<long>(images.size())));
    }
    return d;
}

IntMat projector(const LocalGPoset& prev, const LocalGPoset& next) {
    if (next.k != prev.k + 1) throw std::invalid_argument("level mismatch");
    IntMat p(next.size(), IntVec(prev.size(), 0));
    for (int i = 0; i < next.size(); i++) {
        LocalGraph released{next.members[i].base, identity_tuple(prev.k)};
        int j = prev.find(released);
        if (j < 0) throw std::logic_error("released member missing from the previous level");
        p[i][j] = 1;
    }
    return p;
}

LocalGraph assemble(const LocalGPoset& p, const IntVec& mult) {
    if (static_cast<int>(mult.size()) != p.size())
        throw std::invalid_argument("multiplicity size mismatch");
    std::vector<Edge> e;
    if (p.size()) e = p.members[0].interior().edges;
    int fresh = p.k;
    for (int i = 0; i < p.size(); i++) {
        Graph part = p.members[i].strip_interior();
        for (Int c = 0; c < mult[i]; c++) {
            std::map<int, int> m;
            for (int j = 0; j < p.k; j++) m[j] = j;
            for (int v : part.vertices())
                if (v >= p.k) m[v] = fresh++;
            for (auto& [u, v] : part.relabel(m).edges) e.push_back({u, v});
        }
    }
    return {Graph(e), identity_tuple(p.k)};
}

SufficientResult local_sufficient_check(const IntVec& z, const LocalGPoset& p) {
    SufficientResult r;
    IntVec m = solve_upper_t(local_etransform(p), z);
    r.multiplicities = m;
    for (auto& x : m)
        if (x < 0) return r;  // inconclusive, never a rejection
    LocalGraph w = assemble(p, m);
    // gluing is only guaranteed to reproduce z for connected members; verify
    auto t = identity_tuple(p.k);
    for (int j = 0; j < p.size(); j++)
        if (local_eval(p.members[j], w.base, t) != z[j]) return r;
    r.graphic = true;
    r.witness = std::move(w);
    return r;
}

Int unconnected_recursion(const LocalGPoset& p, const std::vector<int>& target,
                          const std::vector<int>& host) {
    int r = p.size();
    if (static_cast<int>(target.size()) != r || static_cast<int>(host.size()) != r)
        throw std::invalid_argument("multiset size mismatch");
    auto t = identity_tuple(p.k);
    std::map<std::pair<std::vector<int>, std::vector<int>>, Int> memo;
    std::function<Int(std::vector<int>, std::vector<int>)> rec =
        [&](std::vector<int> tg, std::vector<int> hs) -> Int {
        int j = r - 1;
        while (j >= 0 && hs[j] == 0) j--;
        if (j < 0)
            return std::all_of(tg.begin(), tg.end(), [](int x) { return x == 0; }) ? 1 : 0;
        auto key = std::pair{tg, hs};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<int> hrest = hs;
        hrest[j]--;
        // sum over sub-multisets placed on the peeled component
        Int total = 0;
        std::vector<int> pick(r, 0);
        std::function<void(int)> loop = [&](int idx) {
            if (idx == r) {
                IntVec pv(pick.begin(), pick.end());
                Int inner = local_eval(assemble(p, pv), p.members[j].base, t);
                if (inner == 0) return;
                std::vector<int> trest = tg;
                for (int i = 0; i < r; i++) trest[i] -= pick[i];
                total += inner * rec(trest, hrest);
                return;
            }
            for (pick[idx] = 0; pick[idx] <= tg[idx]; pick[idx]++) loop(idx + 1);
            pick[idx] = 0;
        };
        loop(0);
        memo[key] = total;
        return total;
    };
    return rec(target, host);
}

int LocalParamTensor::depth() const {
    size_t d = 0;
    for (auto& [k, v] : z) d = std::max(d, k.size());
    return static_cast<int>(d);
}

IntVec LocalParamTensor::node(const std::vector<int>& key) const {
    auto it = z.find(key);
    if (it != z.end()) return it->second;
    size_t lvl = key.empty() ? 0 : key.size() - 1;
    return IntVec(levels.at(lvl).size(), 0);
}

LocalParamTensor extract_tensor(const Graph& h, int n,
                                const std::vector<LocalGPoset>& levels,
                                int depth) {
    for (int v : h.vertices())
        if (v >= n) throw std::invalid_argument("host does not fit ambient n");
    LocalParamTensor t;
    t.n = n;
    t.levels = levels;
    IntVec root;
    for (const LocalGraph& m : levels.at(0).members)
        root.push_back(subgraph_count(m.base, h));
    t.z[{}] = root;
    for (int k = 1; k <= depth && k <= static_cast<int>(levels.size()); k++) {
        std::vector<int> tup;
        auto rec = [&](auto&& self) -> void {
            if (static_cast<int>(tup.size()) == k) {
                IntVec v;
                bool nonzero = false;
                for (const LocalGraph& m : levels[k - 1].members) {
                    v.push_back(local_eval(m, h, tup));
                    nonzero = nonzero || v.back() != 0;
                }
                if (nonzero) t.z[tup] = v;
                return;
            }
            for (int j = 0; j < n; j++) {
                if (std::find(tup.begin(), tup.end(), j) != tup.end()) continue;
                tup.push_back(j);
                self(self);
                tup.pop_back();
            }
        };
        rec(rec);
    }
    return t;
}

namespace {

// member index permutation induced by reordering the fixed points: entry t is
// the member isomorphic to member t with fixed vertex v relabeled perm[v]
std::vector<int> conjugation_map(const LocalGPoset& p, const std::vector<int>& perm) {
    std::vector<int> c(p.size());
    for (int t = 0; t < p.size(); t++) {
        std::map<int, int> m;
        for (int v : p.members[t].vertices()) m[v] = v;
        for (int v = 0; v < p.k; v++) m[v] = perm[v];
        LocalGraph g{p.members[t].base.relabel(m), identity_tuple(p.k)};
        c[t] = p.find(g);
        if (c[t] < 0) throw std::logic_error("poset not closed under conjugation");
    }
    return c;
}

std::vector<std::vector<int>> all_perms(int k) {
    std::vector<int> p = identity_tuple(k);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// parent keys of a given length: stored keys plus prefixes of stored children
std::set<std::vector<int>> parent_keys(const LocalParamTensor& t, int len) {
    std::set<std::vector<int>> ps;
    for (auto& [key, v] : t.z) {
        if (static_cast<int>(key.size()) == len) ps.insert(key);
        if (static_cast<int>(key.size()) == len + 1)
            ps.insert(std::vector<int>(key.begin(), key.end() - 1));
    }
    return ps;
}

}  // namespace

CheckResult neighborhood_sums(const LocalParamTensor& t, int level) {
    CheckResult res;
    if (level < 1 || level > static_cast<int>(t.levels.size()))
        throw std::invalid_argument("no such level");
    // an absent root means the global vector was not supplied at all
    if (level == 1 && !t.z.count({})) return res;
    const LocalGPoset& q = t.levels[level - 1];
    IntMat e = local_etransform(q);
    IntVec d = orbit_scaling(q, t.n);
    IntMat p;
    if (level == 1)
        p = identity_mat(q.size());
    else
        p = projector(t.levels[level - 2], q);
    for (const auto& parent : parent_keys(t, level - 1)) {
        IntVec zp = t.node(parent);
        IntVec rhs(q.size(), 0);
        for (int i = 0; i < q.size(); i++) {
            Int s = 0;
            for (size_t j = 0; j < zp.size(); j++) s += p[i][j] * zp[j];
            rhs[i] = d[i] * s;
        }
        rhs = solve_upper_t(e, rhs);  // (E^-1)^T D P z
        IntVec lhs(q.size(), 0);
        for (int j = 0; j < t.n; j++) {
            if (std::find(parent.begin(), parent.end(), j) != parent.end()) continue;
            std::vector<int> child = parent;
            child.push_back(j);
            IntVec zh = solve_upper_t(e, t.node(child));
            for (int i = 0; i < q.size(); i++) lhs[i] += zh[i];
        }
        if (lhs != rhs) {
            res.status = CheckStatus::Fail;
            res.violation = "neighborhood sum at node " + key_str(parent);
            return res;
        }
    }
    return res;
}

namespace {

// search for a restricted assignment of one missing level consistent with
// the sum rules and conjugation; counts tried assignments against the budget
CheckResult complete_missing_level(const LocalParamTensor& t, int level, long budget) {
    CheckResult res;
    const LocalGPoset& q = t.levels[level - 1];
    IntMat e = local_etransform(q);
    IntVec d = orbit_scaling(q, t.n);
    IntMat p = level == 1 ? identity_mat(q.size()) : projector(t.levels[level - 2], q);
    auto perms = all_perms(level);
    std::map<std::vector<int>, std::vector<int>> cmaps;
    for (auto& pi : perms) cmaps[pi] = conjugation_map(q, pi);

    // demand per ordered parent tuple
    std::map<std::vector<int>, IntVec> demand;
    std::vector<int> tup;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(tup.size()) == level - 1) {
            IntVec zp = t.node(tup);
            IntVec rhs(q.size(), 0);
            for (int i = 0; i < q.size(); i++) {
                Int s = 0;
                for (size_t j = 0; j < zp.size(); j++) s += p[i][j] * zp[j];
                rhs[i] = d[i] * s;
            }
            demand[tup] = solve_upper_t(e, rhs);
            return;
        }
        for (int j = 0; j < t.n; j++) {
            if (std::find(tup.begin(), tup.end(), j) != tup.end()) continue;
            tup.push_back(j);
            self(self);
            tup.pop_back();
        }
    };
    rec(rec);

    bool any = false;
    for (auto& [k, v] : demand)
        for (auto& x : v) {
            if (x < 0) {
                res.status = CheckStatus::Fail;
                res.violation = "negative demand at node " + key_str(k);
                return res;
            }
            any = any || x != 0;
        }
    if (!any) return res;

    // one variable per vertex set; value 0 = zero node, i+1 = unit type i at
    // the sorted ordering
    std::vector<std::vector<int>> sets;
    {
        std::set<std::vector<int>> s;
        for (auto& [parent, v] : demand) {
            for (int j = 0; j < t.n; j++) {
                if (std::find(parent.begin(), parent.end(), j) != parent.end()) continue;
                std::vector<int> key = parent;
                key.push_back(j);
                std::sort(key.begin(), key.end());
                s.insert(key);
            }
        }
        sets.assign(s.begin(), s.end());
    }
    std::map<std::vector<int>, int> pos;
    for (size_t i = 0; i < sets.size(); i++) pos[sets[i]] = static_cast<int>(i);

    // unit type of the ordered key given the value at the sorted ordering
    auto ordered_type = [&](const std::vector<int>& key, int val) -> int {
        if (val == 0) return -1;  // zero vector
        std::vector<int> srt = key;
        std::sort(srt.begin(), srt.end());
        // key[i] = srt[perm[i]]
        std::vector<int> perm(level);
        for (int i = 0; i < level; i++)
            perm[i] = static_cast<int>(std::find(srt.begin(), srt.end(), key[i]) - srt.begin());
        const std::vector<int>& c = cmaps.at(perm);
        for (int u = 0; u < q.size(); u++)
            if (c[u] == val - 1) return u;
        throw std::logic_error("conjugation map is not a bijection");
    };

    std::vector<int> assign(sets.size(), -2);
    long tried = 0;
    bool exhausted = false;
    std::function<bool(size_t)> dfs = [&](size_t idx) -> bool {
        if (budget >= 0 && ++tried > budget) {
            exhausted = true;
            return false;
        }
        if (idx == sets.size()) {
            for (auto& [parent, want] : demand) {
                IntVec got(q.size(), 0);
                for (int j = 0; j < t.n; j++) {
                    if (std::find(parent.begin(), parent.end(), j) != parent.end()) continue;
                    std::vector<int> key = parent;
                    key.push_back(j);
                    std::vector<int> srt = key;
                    std::sort(srt.begin(), srt.end());
                    int u = ordered_type(key, assign[pos.at(srt)]);
                    if (u >= 0) got[u] += 1;
                }
                if (got != want) return false;
            }
            return true;
        }
        for (int v = 0; v <= q.size(); v++) {
            assign[idx] = v;
            if (dfs(idx + 1)) return true;
            if (exhausted) return false;
        }
        assign[idx] = -2;
        return false;
    };
    if (dfs(0)) return res;
    res.status = exhausted ? CheckStatus::BudgetExhausted : CheckStatus::Fail;
    res.violation = exhausted ? "budget exhausted"
                              : "no consistent completion of level " + std::to_string(level);
    return res;
}

}  // namespace

CheckResult tensor_consistency_check(const LocalParamTensor& t, long budget) {
    CheckResult res;
    int dep = t.depth();
    // nonnegativity
    for (auto& [key, v] : t.z)
        for (auto& x : v)
            if (x < 0) {
                res.status = CheckStatus::Fail;
                res.violation = "negative entry at node " + key_str(key);
                return res;
            }
    // conjugate equations on stored levels
    for (int k = 2; k <= dep; k++) {
        const LocalGPoset& q = t.levels.at(k - 1);
        for (auto& pi : all_perms(k)) {
            auto c = conjugation_map(q, pi);
            for (auto& [key, v] : t.z) {
                if (static_cast<int>(key.size()) != k) continue;
                std::vector<int> pk(k);
                for (int i = 0; i < k; i++) pk[i] = key[pi[i]];
                IntVec other = t.node(pk);
                for (int i = 0; i < q.size(); i++)
                    if (other[i] != v[c[i]]) {
                        res.status = CheckStatus::Fail;
                        res.violation = "conjugate equation between " + key_str(key) +
                                        " and " + key_str(pk);
                        return res;
                    }
            }
        }
    }
    // sum rules on stored levels
    for (int k = 1; k <= dep; k++) {
        CheckResult s = neighborhood_sums(t, k);
        if (!s.pass()) return s;
    }
    // internal products at every stored node
    for (int k = 1; k <= dep; k++) {
        const LocalGPoset& q = t.levels.at(k - 1);
        IntMat e = local_etransform(q);
        for (int a = 0; a < q.size(); a++)
            for (int b = a; b < q.size(); b++) {
                IntVec prod(q.size());
                for (int i = 0; i < q.size(); i++) prod[i] = e[i][a] * e[i][b];
                IntVec c = solve_lower(e, prod);
                if (std::any_of(c.begin(), c.end(), [](const Int& x) { return x < 0; }))
                    continue;  // product leaves the poset
                for (auto& [key, v] : t.z) {
                    if (static_cast<int>(key.size()) != k) continue;
                    Int rhs = 0;
                    for (int i = 0; i < q.size(); i++) rhs += c[i] * v[i];
                    if (v[a] * v[b] != rhs) {
                        res.status = CheckStatus::Fail;
                        res.violation = "product relation at node " + key_str(key);
                        return res;
                    }
                }
            }
    }
    // restricted completion of the first absent level
    if (dep < static_cast<int>(t.levels.size()))
        return complete_missing_level(t, dep + 1, budget);
    return res;
}

ReconstructResult reconstruct_restricted(const LocalParamTensor& t) {
    ReconstructResult r;
    if (t.levels.size() < 2) {
        r.witness = "needs at least two levels";
        return r;
    }
    const LocalGraph& first = t.levels[1].members.at(0);
    if (first.base.edges != std::vector<Edge>{{0, 1}}) {
        r.witness = "first pair member is not the plain edge";
        return r;
    }
    CheckResult c = tensor_consistency_check(t);
    if (!c.pass()) {
        r.witness = c.violation;
        return r;
    }
    IntMat e1 = local_etransform(t.levels[0]);
    for (int i = 0; i < t.n; i++) {
        IntVec zh = solve_upper_t(e1, t.node({i}));
        Int s = 0;
        for (auto& x : zh) {
            if (x < 0) {
                r.witness = "vertex type at " + std::to_string(i) + " is not a unit";
                return r;
            }
            s += x;
        }
        if (s > 1) {
            r.witness = "vertex type at " + std::to_string(i) + " is not a unit";
            return r;
        }
    }
    std::vector<Edge> edges;
    for (int i = 0; i < t.n; i++)
        for (int j = i + 1; j < t.n; j++) {
            Int v = t.node({i, j}).at(0);
            if (v != 0 && v != 1) {
                r.witness = "edge coordinate at " + key_str({i, j}) + " is not 0/1";
                return r;
            }
            if (v == 1) edges.push_back({i, j});
        }
    Graph g(edges);
    LocalParamTensor back = extract_tensor(g, t.n, t.levels, t.depth());
    for (auto& [key, v] : back.z)
        if (t.node(key) != v) {
            r.witness = "re-extraction differs at node " + key_str(key);
            return r;
        }
    for (auto& [key, v] : t.z)
        if (back.node(key) != v) {
            r.witness = "re-extraction differs at node " + key_str(key);
            return r;
        }
    r.ok = true;
    r.graph = g;
    return r;
}

CheckResult finitely_generated_check(const LocalParamTensor& t) {
    CheckResult res;
    int dep = t.depth();
    for (auto& [key, v] : t.z) {
        for (auto& x : v)
            if (x < 0) {
                res.status = CheckStatus::Fail;
                res.violation = "negative entry at node " + key_str(key);
                return res;
            }
        if (key.empty()) continue;
        IntMat e = local_etransform(t.levels.at(key.size() - 1));
        for (auto& x : solve_upper_t(e, v))
            if (x < 0) {
                res.status = CheckStatus::Fail;
                res.violation = "negative transform pair at node " + key_str(key);
                return res;
            }
    }
    // conjugate equations
    for (int k = 2; k <= dep; k++) {
        const LocalGPoset& q = t.levels.at(k - 1);
        for (auto& pi : all_perms(k)) {
            auto c = conjugation_map(q, pi);
            for (auto& [key, v] : t.z) {
                if (static_cast<int>(key.size()) != k) continue;
                std::vector<int> pk(k);
                for (int i = 0; i < k; i++) pk[i] = key[pi[i]];
                IntVec other = t.node(pk);
                for (int i = 0; i < q.size(); i++)
                    if (other[i] != v[c[i]]) {
                        res.status = CheckStatus::Fail;
                        res.violation = "conjugate equation between " + key_str(key) +
                                        " and " + key_str(pk);
                        return res;
                    }
            }
        }
    }
    // raw sum rules
    for (int k = 1; k <= dep; k++) {
        if (k == 1 && !t.z.count({})) continue;
        const LocalGPoset& q = t.levels[k - 1];
        IntVec d = orbit_scaling(q, t.n);
        IntMat p = k == 1 ? identity_mat(q.size()) : projector(t.levels[k - 2], q);
        for (const auto& parent : parent_keys(t, k - 1)) {
            IntVec zp = t.node(parent);
            IntVec rhs(q.size(), 0);
            for (int i = 0; i < q.size(); i++) {
                Int s = 0;
                for (size_t j = 0; j < zp.size(); j++) s += p[i][j] * zp[j];
                rhs[i] = d[i] * s;
            }
            IntVec lhs(q.size(), 0);
            for (int j = 0; j < t.n; j++) {
                if (std::find(parent.begin(), parent.end(), j) != parent.end()) continue;
                std::vector<int> child = parent;
                child.push_back(j);
                IntVec zc = t.node(child);
                for (int i = 0; i < q.size(); i++) lhs[i] += zc[i];
            }
            if (lhs != rhs) {
                res.status = CheckStatus::Fail;
                res.violation = "component sum at node " + key_str(parent);
                return res;
            }
        }
    }
    return res;
}

Realizability degree_sequence_realizable(const std::vector<int>& degs, long budget) {
    int n = static_cast<int>(degs.size());
    for (int x : degs)
        if (x < 0 || x >= n) return Realizability::No;
    auto levels = build_local_posets({1, 1, true});
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    std::vector<int> rem = degs;
    long tried = 0;
    bool exhausted = false;
    // fill the adjacency row by row; rem tracks missing degree
    std::function<bool(int, int)> dfs = [&](int i, int j) -> bool {
        if (budget >= 0 && ++tried > budget) {
            exhausted = true;
            return false;
        }
        if (i == n) {
            std::vector<Edge> e;
            for (int a = 0; a < n; a++)
                for (int b = a + 1; b < n; b++)
                    if (adj[a][b]) e.push_back({a, b});
            Graph g(e);
            LocalParamTensor t = extract_tensor(g, n, levels, 2);
            return finitely_generated_check(t).pass();
        }
        if (j == n) return rem[i] == 0 && dfs(i + 1, i + 2 > n ? n : i + 2);
        if (rem[i] > n - j) return false;
        for (int v = 0; v <= 1 && !exhausted; v++) {
            if (v == 1 && (rem[i] == 0 || rem[j] == 0)) continue;
            adj[i][j] = adj[j][i] = v;
            rem[i] -= v;
            rem[j] -= v;
            if (dfs(i, j + 1)) return true;
            rem[i] += v;
            rem[j] += v;
            adj[i][j] = adj[j][i] = 0;
        }
        return false;
    };
    if (n == 0) return Realizability::Yes;
    if (dfs(0, 1)) return Realizability::Yes;
    return exhausted ? Realizability::BudgetExhausted : Realizability::No;
}

IntVec local_product_coeffs(const LocalGraph& a, const LocalGraph& b,
                            const LocalGPoset& p) {
    int K = p.k;
    auto check_sub = [&](const LocalGraph& g) {
        g.validate();
        for (int v : g.fixed)
            if (v < 0 || v >= K)
                throw std::invalid_argument("factor fixed points must lie in the poset's fixed set");
    };
    check_sub(a);
    check_sub(b);

    auto ident = identity_tuple(K);
    // sum of evaluation vectors over extension classes of one factor
    auto class_sum = [&](const LocalGraph& g, std::vector<LocalGraph>& reps) -> IntVec {
        std::set<int> have(g.fixed.begin(), g.fixed.end());
        std::vector<int> slots;
        for (int v = 0; v < K; v++)
            if (!have.count(v)) slots.push_back(v);
        // move non-fixed vertices out of the slot range
        std::map<int, int> shift;
        int fresh = K;
        for (int v : g.vertices()) shift[v] = have.count(v) ? v : fresh++;
        Graph base = g.base.relabel(shift);
        std::vector<int> cand;  // non-fixed vertices, shifted
        for (int v : base.vertices())
            if (v >= K) cand.push_back(v);

        IntVec total(p.size(), 0);
        std::vector<int> choice;  // slot images: vertex or -1 for fresh
        auto rec = [&](auto&& self, size_t idx) -> void {
            if (idx == slots.size()) {
                std::map<int, int> m;
                for (int v : base.vertices()) m[v] = v;
                for (size_t i = 0; i < slots.size(); i++)
                    if (choice[i] >= 0) m[choice[i]] = slots[i];
                LocalGraph ext{base.relabel(m), ident};
                for (const LocalGraph& seen : reps) {
                    if (seen.base.size() != ext.base.size()) continue;
                    if (seen.vertices().size() != ext.vertices().size()) continue;
                    std::map<int, int> pins;
                    for (int v = 0; v < K; v++) pins[v] = v;
                    if (embedding_count(ext.base, seen.base, pins) > 0) return;
                }
                reps.push_back(ext);
                for (int t = 0; t < p.size(); t++)
                    total[t] += local_eval(ext, p.members[t].base, ident);
                return;
            }
            choice.push_back(-1);
            self(self, idx + 1);
            choice.pop_back();
            for (int v : cand) {
                if (std::find(choice.begin(), choice.end(), v) != choice.end()) continue;
                choice.push_back(v);
                self(self, idx + 1);
                choice.pop_back();
            }
        };
        rec(rec, 0);
        return total;
    };

    std::vector<LocalGraph> ra, rb;
    IntVec va = class_sum(a, ra), vb = class_sum(b, rb);
    IntVec prod(p.size());
    for (int t = 0; t < p.size(); t++) prod[t] = va[t] * vb[t];
    IntVec c = solve_lower(local_etransform(p), prod);
    for (auto& x : c)
        if (x < 0) throw std::invalid_argument("product term outside the poset");

    // validate on the member bases and on glued unions of extension reps
    auto validate_host = [&](const Graph& host) {
        Int lhs = local_eval(a, host, a.fixed) * local_eval(b, host, b.fixed);
        Int rhs = 0;
        for (int t = 0; t < p.size(); t++)
            rhs += c[t] * local_eval(p.members[t], host, ident);
        if (lhs != rhs)
            throw std::invalid_argument("product term outside the poset");
    };
    for (const LocalGraph& m : p.members) validate_host(m.base);
    for (const LocalGraph& ea : ra)
        for (const LocalGraph& eb : rb) {
            std::map<int, int> m;
            int fresh = 0;
            for (int v : ea.vertices()) fresh = std::max(fresh, v + 1);
            for (int v : eb.vertices())
                m[v] = v < K ? v : fresh++;
            std::vector<Edge> e = ea.base.edges;
            for (auto& [u, v] : eb.base.relabel(m).edges) e.push_back({u, v});
            validate_host(Graph(e));
        }
    return c;
}

}  // namespace invring
