#include "invring/newton.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <stdexcept>

namespace invring {

int omega(int x) {
    if (x < 0) throw std::invalid_argument("omega of negative edge count");
    int v = 1;
    while (v * (v - 1) / 2 < x) v++;
    return v;
}

bool SigmaIndex::valid() const {
    // v large enough to host e edges (equivalently e <= C(v,2))
    return e >= 0 && v >= omega(e);
}

Int elem_sym_prefix(int a, int b) {
    if (a < 0 || a > b) return 0;
    // row of the DP over [1..b]
    std::vector<Int> row(a + 1, 0);
    row[0] = 1;
    for (int t = 1; t <= b; t++)
        for (int j = std::min(a, t); j >= 1; j--) row[j] += t * row[j - 1];
    return row[a];
}

Poly d_poly(int i, int v) {
    Poly p = falling_from(v - i, v);  // (n-v+1)...(n-v+i)
    Rat s(Int(i % 2 ? -1 : 1), factorial(i));
    return s * p;
}

Rat d_coeff(int i, int v, int n) { return d_poly(i, v).eval(Rat(n)); }

namespace {

// distinct endpoint count of an edge subset, graph vertices remapped to 0..
struct SubsetCounter {
    std::vector<std::pair<int, int>> ed;
    Int count = 0;
    int want_e, want_v;

    explicit SubsetCounter(const Graph& h, int e, int v) : want_e(e), want_v(v) {
        std::map<int, int> relab;
        for (auto& [a, b] : h.edges) {
            if (!relab.count(a)) relab[a] = (int)relab.size();
            if (!relab.count(b)) relab[b] = (int)relab.size();
            ed.push_back({relab[a], relab[b]});
        }
    }

    void rec(size_t from, int taken, unsigned long long mask, int nv) {
        if (taken == want_e) {
            if (nv == want_v) count += 1;
            return;
        }
        if (ed.size() - from < size_t(want_e - taken)) return;
        for (size_t i = from; i < ed.size(); i++) {
            unsigned long long m2 = mask;
            int d = nv;
            if (!(m2 >> ed[i].first & 1)) { m2 |= 1ull << ed[i].first; d++; }
            if (!(m2 >> ed[i].second & 1)) { m2 |= 1ull << ed[i].second; d++; }
            if (d <= want_v) rec(i + 1, taken + 1, m2, d);
        }
    }
};

// sum of f(induced edge count) over all v-subsets of {0..n-1}
template <class F>
Int vsubset_sum(const Graph& h, int n, int v, F f) {
    for (auto& [a, b] : h.edges)
        if (b >= n) throw std::invalid_argument("graph does not fit ambient n");
    if (v < 0 || v > n) return 0;
    std::vector<int> pick;
    std::vector<char> in(n, 0);
    Int total = 0;
    auto rec = [&](auto&& self, int from) -> void {
        if ((int)pick.size() == v) {
            int m = 0;
            for (auto& [a, b] : h.edges) m += in[a] && in[b];
            total += f(m);
            return;
        }
        for (int i = from; i <= n - (v - (int)pick.size()); i++) {
            pick.push_back(i);
            in[i] = 1;
            self(self, i + 1);
            in[i] = 0;
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return total;
}

}  // namespace

Int sigma_eval(const Graph& h, int e, int v) {
    if (e < 0 || v < 0) throw std::invalid_argument("negative sigma index");
    if (e == 0) return v == 0 ? 1 : 0;
    SubsetCounter sc(h, e, v);
    sc.rec(0, 0, 0, 0);
    return sc.count;
}

Int h_eval(const Graph& h, int n, int e, int v) {
    return vsubset_sum(h, n, v, [&](int m) {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), (unsigned long)m, (unsigned long)e);
        return p;
    });
}

Int b_eval(const Graph& h, int n, int e, int v) {
    return vsubset_sum(h, n, v, [&](int m) { return binomial(m, e); });
}

EvTable sigma_from_b(const EvTable& b, int n) {
    EvTable out;
    for (auto& [key, unused] : b) {
        (void)unused;
        auto [e, v] = key;
        Rat s = 0;
        for (int w = omega(e); w <= v; w++) {
            auto it = b.find({e, w});
            if (it == b.end())
                throw std::invalid_argument("sigma_from_b: missing entry");
            s += d_coeff(v - w, v, n) * it->second;
        }
        s.canonicalize();
        out[key] = s;
    }
    return out;
}

EvTable b_from_h(const EvTable& h) {
    EvTable out;
    for (auto& [key, unused] : h) {
        (void)unused;
        auto [e, v] = key;
        Rat s = 0;
        for (int f = 1; f <= e; f++) {
            auto it = h.find({f, v});
            if (it == h.end())
                throw std::invalid_argument("b_from_h: missing entry");
            Rat c(((e - f) % 2 ? -1 : 1) * elem_sym_prefix(e - f, e - 1),
                  factorial(e));
            c.canonicalize();
            s += c * it->second;
        }
        s.canonicalize();
        out[key] = s;
    }
    return out;
}

EvTable sigma_from_h(const EvTable& h, int n) {
    return sigma_from_b(b_from_h(h), n);
}

KbarExpansion kbar_expansion(int k) {
    if (k < 2) throw std::invalid_argument("kbar_expansion needs k >= 2");
    KbarExpansion ex;
    ex.k = k;
    ex.constant = binomial_poly(k);
    for (int v = 2; v <= k; v++) {
        Poly cnk = Rat(Int(1), factorial(k - v)) * falling_from(v, k);
        for (int e = (v + 1) / 2; e <= v * (v - 1) / 2; e++) {
            Poly coef = Rat(e % 2 ? -1 : 1) * cnk;
            ex.sigma_terms[{e, v}] += coef;
            // push through b and h in one shot
            for (int w = omega(e); w <= v; w++) {
                Poly dw = coef * d_poly(v - w, v);
                for (int f = 1; f <= e; f++) {
                    Rat c(((e - f) % 2 ? -1 : 1) * elem_sym_prefix(e - f, e - 1),
                          factorial(e));
                    c.canonicalize();
                    ex.h_terms[{f, w}] += c * dw;
                }
            }
        }
    }
    for (auto it = ex.sigma_terms.begin(); it != ex.sigma_terms.end();)
        it = it->second.zero() ? ex.sigma_terms.erase(it) : std::next(it);
    for (auto it = ex.h_terms.begin(); it != ex.h_terms.end();)
        it = it->second.zero() ? ex.h_terms.erase(it) : std::next(it);
    return ex;
}

namespace {

void normalize(SigmaExpression& ex) {
    std::map<std::vector<SigmaIndex>, Rat> acc;
    for (auto& t : ex.terms) {
        auto f = t.factors;
        std::sort(f.begin(), f.end());
        acc[f] += t.coeff;
    }
    ex.terms.clear();
    for (auto& [f, c] : acc) {
        Rat cc = c;
        cc.canonicalize();
        if (cc != 0) ex.terms.push_back({cc, f});
    }
}

}  // namespace

SigmaExpression parse_sigma_expression(const std::string& text) {
    SigmaExpression ex;
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) i++; };
    auto number = [&]() -> Int {
        size_t s = i;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) i++;
        if (i == s) throw std::invalid_argument("sigma expression: digit expected at " + std::to_string(s));
        return Int(text.substr(s, i - s));
    };
    skip();
    while (i < text.size()) {
        if (!ex.terms.empty() && text[i] != '+' && text[i] != '-')
            throw std::invalid_argument("sigma expression: missing term separator");
        int sign = 1;
        while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -sign;
            i++;
            skip();
        }
        Int num = number();
        Int den = 1;
        skip();
        if (i < text.size() && text[i] == '/') {
            i++;
            skip();
            den = number();
            skip();
        }
        SigmaTerm t;
        t.coeff = Rat(sign * num, den);
        t.coeff.canonicalize();
        while (i < text.size() && text[i] == '*') {
            i++;
            skip();
            if (i >= text.size() || text[i] != 's')
                throw std::invalid_argument("sigma expression: s(e,v) expected");
            i++;
            skip();
            if (i >= text.size() || text[i] != '(') throw std::invalid_argument("sigma expression: '(' expected");
            i++;
            skip();
            long e = number().get_si();
            skip();
            if (i >= text.size() || text[i] != ',') throw std::invalid_argument("sigma expression: ',' expected");
            i++;
            skip();
            long v = number().get_si();
            skip();
            if (i >= text.size() || text[i] != ')') throw std::invalid_argument("sigma expression: ')' expected");
            i++;
            skip();
            t.factors.push_back({(int)e, (int)v});
        }
        ex.terms.push_back(std::move(t));
    }
    normalize(ex);
    return ex;
}

std::vector<SigmaExpression> load_sigma_expressions(std::istream& in) {
    std::vector<SigmaExpression> out;
    std::string line;
    while (std::getline(in, line)) {
        size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        bool blank = true;
        for (char c : line) blank = blank && std::isspace((unsigned char)c);
        if (blank) continue;
        out.push_back(parse_sigma_expression(line));
    }
    return out;
}

Rat sigma_expr_eval(const SigmaExpression& ex, const Graph& h) {
    std::map<std::pair<int, int>, Int> cache;
    auto sig = [&](const SigmaIndex& s) -> const Int& {
        auto it = cache.find({s.e, s.v});
        if (it == cache.end())
            it = cache.emplace(std::pair{s.e, s.v}, sigma_eval(h, s.e, s.v)).first;
        return it->second;
    };
    Rat total = 0;
    for (auto& t : ex.terms) {
        Rat p = t.coeff;
        for (auto& f : t.factors) p *= sig(f);
        total += p;
    }
    total.canonicalize();
    return total;
}

std::vector<SyzygyReport> syzygy_check(const std::vector<SigmaExpression>& exprs,
                                       const GPoset& p) {
    std::vector<SyzygyReport> out(exprs.size());
    for (auto& g : p.graphs)
        for (size_t i = 0; i < exprs.size(); i++)
            if (sigma_expr_eval(exprs[i], g) != 0) {
                out[i].pass = false;
                out[i].witnesses.push_back(g.str());
            }
    return out;
}

std::vector<SigmaIndex> sigma_columns(int r) {
    std::vector<SigmaIndex> cols;
    for (int v = 2; v <= r; v++)
        for (int e = (v + 1) / 2; e <= v * (v - 1) / 2; e++) cols.push_back({e, v});
    return cols;
}

IntMat sigma_etable(const GPoset& p) {
    auto cols = sigma_columns(p.max_cv);
    IntMat m(p.graphs.size(), IntVec(cols.size()));
    for (size_t i = 0; i < p.graphs.size(); i++)
        for (size_t j = 0; j < cols.size(); j++)
            m[i][j] = sigma_eval(p.graphs[i], cols[j].e, cols[j].v);
    return m;
}

}  // namespace invring
