#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "invring/gposet.hpp"

namespace invring {

// sigma_e^v: index of an edge/connected-vertex count pair
struct SigmaIndex {
    int e = 0, v = 0;
    bool valid() const;
    bool operator<(const SigmaIndex& o) const {
        return v != o.v ? v < o.v : e < o.e;
    }
    bool operator==(const SigmaIndex& o) const { return e == o.e && v == o.v; }
};

// least v with room for x edges: ceil(1/2 + sqrt(1+8x)/2)
int omega(int x);

// elementary symmetric polynomial sigma_a(1, 2, ..., b)
Int elem_sym_prefix(int a, int b);

// d_i^v = (-1)^i / i! * prod_{j=1..i} (n - v + j)
Poly d_poly(int i, int v);
Rat d_coeff(int i, int v, int n);

// sigma: subgraphs with exactly v connected vertices and e edges
Int sigma_eval(const Graph& h, int e, int v);
// h: sum over v-subsets of the n ambient vertices of (induced edges)^e
Int h_eval(const Graph& h, int n, int e, int v);
// b: same sum of C(induced edges, e)
Int b_eval(const Graph& h, int n, int e, int v);

// value tables keyed by (e, v)
using EvTable = std::map<std::pair<int, int>, Rat>;
EvTable sigma_from_b(const EvTable& b, int n);
EvTable b_from_h(const EvTable& h);
EvTable sigma_from_h(const EvTable& h, int n);

// I(anti-K_k) expanded over sigma terms and, through the conversion maps,
// over power-sum terms; coefficients polynomial in the ambient n.
struct KbarExpansion {
    int k = 0;
    Poly constant;                                   // C(n,k)
    std::map<std::pair<int, int>, Poly> sigma_terms; // key (e,v)
    std::map<std::pair<int, int>, Poly> h_terms;     // key (f,w)
};
KbarExpansion kbar_expansion(int k);

// rational combinations of products of sigma indices
struct SigmaTerm {
    Rat coeff;
    std::vector<SigmaIndex> factors;  // kept sorted
};
struct SigmaExpression {
    std::vector<SigmaTerm> terms;  // normalized: merged, zero terms dropped
};
// grammar: terms "c * s(e,v) * s(e,v) ..." joined by + or -
SigmaExpression parse_sigma_expression(const std::string& text);
std::vector<SigmaExpression> load_sigma_expressions(std::istream& in);
Rat sigma_expr_eval(const SigmaExpression& ex, const Graph& h);

struct SyzygyReport {
    bool pass = true;
    std::vector<std::string> witnesses;  // offending member graphs
};
std::vector<SyzygyReport> syzygy_check(const std::vector<SigmaExpression>& exprs,
                                       const GPoset& p);

// all sigma indices for E(r) in (v, e) lexicographic order
std::vector<SigmaIndex> sigma_columns(int r);
// rows = members of p, columns = sigma_columns(p.max_cv)
IntMat sigma_etable(const GPoset& p);

}  // namespace invring
