#include "invring/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace invring {

Graph::Graph(std::vector<Edge> e) : edges(std::move(e)) {
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("loop edge");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::vector<int> Graph::vertices() const {
    std::set<int> s;
    for (auto& [u, v] : edges) {
        s.insert(u);
        s.insert(v);
    }
    return {s.begin(), s.end()};
}

int Graph::cv() const { return static_cast<int>(vertices().size()); }

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

int Graph::degree(int v) const {
    int d = 0;
    for (auto& [a, b] : edges)
        if (a == v || b == v) d++;
    return d;
}

int Graph::max_degree() const {
    int m = 0;
    for (int v : vertices()) m = std::max(m, degree(v));
    return m;
}

std::vector<std::vector<int>> Graph::components() const {
    std::map<int, int> comp;
    std::vector<int> vs = vertices();
    for (int v : vs) comp[v] = -1;
    int nc = 0;
    for (int v : vs) {
        if (comp[v] != -1) continue;
        std::vector<int> stack{v};
        comp[v] = nc;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto& [a, b] : edges) {
                int w = -1;
                if (a == u) w = b;
                else if (b == u) w = a;
                if (w != -1 && comp[w] == -1) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
            }
        }
        nc++;
    }
    std::vector<std::vector<int>> out(nc);
    for (int v : vs) out[comp[v]].push_back(v);
    return out;
}

Graph Graph::relabel(const std::map<int, int>& m) const {
    std::vector<Edge> e;
    e.reserve(edges.size());
    for (auto& [u, v] : edges) e.push_back({m.at(u), m.at(v)});
    return Graph(std::move(e));
}

std::string Graph::str() const {
    if (edges.empty()) return "1";
    std::string s;
    for (auto& [u, v] : edges) {
        s += "a" + std::to_string(u) + std::to_string(v);
    }
    return s;
}

Graph Graph::from_monomial(const std::string& s) {
    std::vector<Edge> e;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '1' && e.empty() && s.size() == 1) break;  // "1" = empty
        if (s[i] != 'a') throw std::invalid_argument("bad monomial: " + s);
        if (i + 2 >= s.size()) throw std::invalid_argument("bad monomial: " + s);
        e.push_back({s[i + 1] - '0', s[i + 2] - '0'});
        i += 3;
    }
    return Graph(std::move(e));
}

Graph Graph::from_edge_list(const std::string& text) {
    std::vector<Edge> e;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int u, v;
        if (ls >> u >> v) e.push_back({u, v});
    }
    return Graph(std::move(e));
}

Graph Graph::from_graph6(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty graph6");
    size_t pos = 0;
    int n = s[pos++] - 63;
    if (n < 0 || n > 62) throw std::invalid_argument("graph6: only n <= 62 supported");
    std::vector<Edge> e;
    int bit = 0;
    int cur = 0;
    auto next_bit = [&]() {
        if (bit == 0) {
            if (pos >= s.size()) throw std::invalid_argument("graph6 truncated");
            cur = s[pos++] - 63;
            bit = 6;
        }
        bit--;
        return (cur >> bit) & 1;
    };
    for (int j = 1; j < n; j++)
        for (int i = 0; i < j; i++)
            if (next_bit()) e.push_back({i, j});
    return Graph(std::move(e));
}

std::string Graph::to_graph6(int n) const {
    if (n > 62) throw std::invalid_argument("graph6: only n <= 62 supported");
    std::string s;
    s += static_cast<char>(n + 63);
    int acc = 0, nb = 0;
    for (int j = 1; j < n; j++)
        for (int i = 0; i < j; i++) {
            acc = (acc << 1) | (has_edge(i, j) ? 1 : 0);
            if (++nb == 6) {
                s += static_cast<char>(acc + 63);
                acc = 0;
                nb = 0;
            }
        }
    if (nb > 0) s += static_cast<char>((acc << (6 - nb)) + 63);
    return s;
}

namespace {

// Minimal-adjacency-row canonical search within one connected component.
// Rows are compared lexicographically; row k lists the already-labeled
// neighbors of the vertex that receives label k.
struct CanonSearch {
    int m;
    std::vector<std::vector<char>> adj;
    std::vector<int> label_of;  // internal vertex -> label, -1 if unset
    std::vector<int> vert_of;   // label -> internal vertex
    std::vector<std::vector<int>> rows, best;
    bool have = false;

    enum Cmp { EQUAL, LESS };

    bool rec(int k, Cmp status) {
        if (k == m) {
            if (!have || status == LESS) {
                best = rows;
                have = true;
                return true;
            }
            return false;
        }
        bool updated = false;
        for (int v = 0; v < m; v++) {
            if (label_of[v] != -1) continue;
            std::vector<int> row;
            for (int j = 0; j < k; j++)
                if (adj[vert_of[j]][v]) row.push_back(j);
            Cmp st = status;
            if (have && st == EQUAL) {
                if (row > best[k]) continue;
                if (row < best[k]) st = LESS;
            }
            label_of[v] = k;
            vert_of[k] = v;
            rows[k] = row;
            if (rec(k + 1, st)) {
                updated = true;
                status = EQUAL;  // best is now the current prefix
            }
            label_of[v] = -1;
        }
        return updated;
    }

    std::vector<Edge> run() {
        label_of.assign(m, -1);
        vert_of.assign(m, -1);
        rows.assign(m, {});
        rec(0, EQUAL);
        std::vector<Edge> e;
        for (int k = 0; k < m; k++)
            for (int j : best[k]) e.push_back({j, k});
        std::sort(e.begin(), e.end());
        return e;
    }
};

std::vector<Edge> canonical_component(const Graph& g, const std::vector<int>& verts) {
    CanonSearch cs;
    cs.m = static_cast<int>(verts.size());
    std::map<int, int> idx;
    for (int i = 0; i < cs.m; i++) idx[verts[i]] = i;
    cs.adj.assign(cs.m, std::vector<char>(cs.m, 0));
    for (auto& [u, v] : g.edges) {
        auto iu = idx.find(u), iv = idx.find(v);
        if (iu != idx.end() && iv != idx.end()) {
            cs.adj[iu->second][iv->second] = 1;
            cs.adj[iv->second][iu->second] = 1;
        }
    }
    return cs.run();
}

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
    static thread_local std::map<std::vector<Edge>, CanonicalForm> cache;
    auto it = cache.find(g.edges);
    if (it != cache.end()) return it->second;

    // Canonicalize each component, then concatenate in a deterministic order.
    struct Comp {
        std::vector<Edge> edges;
        int m;
    };
    std::vector<Comp> comps;
    for (auto& verts : g.components())
        comps.push_back({canonical_component(g, verts), static_cast<int>(verts.size())});
    std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        if (a.m != b.m) return a.m < b.m;
        return a.edges < b.edges;
    });
    CanonicalForm cf;
    int offset = 0;
    for (auto& c : comps) {
        for (auto& [u, v] : c.edges) cf.edges.push_back({u + offset, v + offset});
        offset += c.m;
    }
    std::sort(cf.edges.begin(), cf.edges.end());
    Graph canon(cf.edges);
    cf.aut = embedding_count(canon, canon);
    cache[g.edges] = cf;
    return cf;
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.size() != b.size() || a.cv() != b.cv()) return false;
    return canonical_form(a).edges == canonical_form(b).edges;
}

Int embedding_count(const Graph& g, const Graph& h, const std::map<int, int>& pinned) {
    // Vertex order: pinned first, then components in BFS-ish order so each
    // new vertex usually has an already-placed neighbor.
    std::vector<int> gv = g.vertices();
    for (auto& [k, v] : pinned)
        if (std::find(gv.begin(), gv.end(), k) == gv.end()) gv.push_back(k);
    std::vector<int> order;
    std::set<int> placed;
    for (auto& [k, v] : pinned) {
        order.push_back(k);
        placed.insert(k);
    }
    while (order.size() < gv.size()) {
        int pick = -1;
        for (int v : gv) {
            if (placed.count(v)) continue;
            for (int u : order)
                if (g.has_edge(u, v)) {
                    pick = v;
                    break;
                }
            if (pick != -1) break;
        }
        if (pick == -1)
            for (int v : gv)
                if (!placed.count(v)) {
                    pick = v;
                    break;
                }
        order.push_back(pick);
        placed.insert(pick);
    }

    std::vector<int> pool = h.vertices();
    for (auto& [k, v] : pinned)
        if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);

    std::map<int, int> img;
    Int count = 0;
    auto ok = [&](int gvtx, int hvtx) {
        for (auto& [a, b] : img)
            if (b == hvtx) return false;
        for (auto& [u, v] : g.edges) {
            int other = -1;
            if (u == gvtx) other = v;
            else if (v == gvtx) other = u;
            if (other != -1 && img.count(other) && !h.has_edge(hvtx, img[other]))
                return false;
        }
        return true;
    };
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == order.size()) {
            count++;
            return;
        }
        int v = order[k];
        auto pin = pinned.find(v);
        if (pin != pinned.end()) {
            if (ok(v, pin->second)) {
                img[v] = pin->second;
                rec(k + 1);
                img.erase(v);
            }
            return;
        }
        for (int t : pool) {
            if (!ok(v, t)) continue;
            img[v] = t;
            rec(k + 1);
            img.erase(v);
        }
    };
    rec(0);
    return count;
}

Int subgraph_count(const Graph& g, const Graph& h) {
    if (g.edges.empty()) return 1;
    if (g.size() > h.size()) return 0;
    Int emb = embedding_count(g, h);
    Int aut = canonical_form(g).aut;
    if (emb % aut != 0) throw std::logic_error("subgraph_count: inexact division");
    return emb / aut;
}

std::vector<Graph> enumerate_graphs(int max_cv, int max_edges) {
    if (max_edges < 0) max_edges = max_cv * (max_cv - 1) / 2;
    std::set<std::vector<Edge>> seen;
    std::vector<Graph> out;
    std::vector<Graph> frontier{Graph{}};
    seen.insert({});
    out.push_back(Graph{});
    for (int level = 1; level <= max_edges; level++) {
        std::vector<Graph> next;
        for (auto& g : frontier) {
            int cv = g.cv();
            // Candidate endpoints: current canonical labels plus up to two
            // fresh vertices (fresh labels cv and cv+1).
            int hi = std::min(cv + 2, max_cv);
            for (int u = 0; u < hi; u++)
                for (int v = u + 1; v < hi; v++) {
                    if (u >= cv + 1) continue;  // at most one gap
                    if (g.has_edge(u, v)) continue;
                    std::vector<Edge> e = g.edges;
                    e.push_back({u, v});
                    Graph cand(std::move(e));
                    if (cand.cv() > max_cv) continue;
                    auto cf = canonical_form(cand);
                    if (seen.insert(cf.edges).second) {
                        Graph can_g(cf.edges);
                        next.push_back(can_g);
                        out.push_back(can_g);
                    }
                }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        if (a.cv() != b.cv()) return a.cv() < b.cv();
        return a.edges < b.edges;
    });
    return out;
}

std::vector<std::pair<Graph, Int>> subgraph_classes(const Graph& g) {
    std::map<std::vector<Edge>, std::pair<Graph, Int>> acc;
    size_t m = g.edges.size();
    if (m > 25) throw std::invalid_argument("subgraph_classes: too many edges");
    for (size_t mask = 0; mask < (size_t{1} << m); mask++) {
        std::vector<Edge> e;
        for (size_t i = 0; i < m; i++)
            if (mask & (size_t{1} << i)) e.push_back(g.edges[i]);
        Graph a(std::move(e));
        auto cf = canonical_form(a);
        auto it = acc.find(cf.edges);
        if (it == acc.end()) acc[cf.edges] = {Graph(cf.edges), 1};
        else it->second.second++;
    }
    std::vector<std::pair<Graph, Int>> out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [](auto& kv) { return kv.second; });
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        if (x.first.cv() != y.first.cv()) return x.first.cv() < y.first.cv();
        return x.first.edges < y.first.edges;
    });
    return out;
}

std::vector<std::pair<Graph, Poly>> complement_expand(const Graph& g) {
    Int aut_g = canonical_form(g).aut;
    int cvg = g.cv();
    std::vector<std::pair<Graph, Poly>> out;
    for (auto& [a, count] : subgraph_classes(g)) {
        Int aut_a = canonical_form(a).aut;
        // (-1)^|a| I(a)(g) * aut(a)/aut(g) * (n-cv(a))!/(n-cv(g))!
        Rat scale(count * aut_a, aut_g);
        scale.canonicalize();
        if (a.size() % 2 == 1) scale = -scale;
        out.push_back({a, scale * falling_from(a.cv(), cvg)});
    }
    return out;
}

}  // namespace invring
