#pragma once

#include <map>
#include <string>
#include <vector>

#include "invring/graph.hpp"

namespace invring {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Ordered set of isomorphism classes closed downward under subgraphs:
// all classes with cv <= max_cv and size <= max_edges.
struct GPoset {
    int max_cv = 0;
    int max_edges = 0;  // C(max_cv,2) when unrestricted
    bool edge_bounded = false;
    std::vector<Graph> graphs;
    std::map<std::vector<Edge>, int> index;

    int size() const { return static_cast<int>(graphs.size()); }
    int find(const Graph& g) const;  // -1 if absent
};

GPoset build_gposet(int max_cv, int max_edges = -1);

// e_ij = I(g_j)(g_i); lower triangular with unit diagonal.
IntMat etransform(const GPoset& p);

// Inverse via the sign rule b_ij = (-1)^(|g_i|-|g_j|) e_ij (complete posets).
IntMat etransform_inverse(const GPoset& p);

// Inverse of any lower triangular matrix with unit diagonal.
IntMat unitri_inverse(const IntMat& m);

// z(h): subgraph counts of every poset member in h.
IntVec evaluate_vector(const GPoset& p, const Graph& h);

// c with I(g_i)I(g_j) = sum_k c_k I(g_k); requires cv_i+cv_j <= max_cv and,
// for edge-bounded posets, |g_i|+|g_j| <= max_edges.
IntVec product_coeffs(const GPoset& p, int i, int j);

// Number of isomorphism classes of graphs on n vertices (Polya / pair group).
Int count_graphs(int n);

// Disjoint unions of cycles; length >= 2, a 2-"cycle" meaning a single edge.
using CycleProfile = std::map<int, int>;  // length -> multiplicity
Graph cycles_graph(const CycleProfile& c);
Int cycle_etransform(const CycleProfile& a, const CycleProfile& b);

// Coefficients c_0..c_n of det(zI - A) for h's adjacency matrix on n ambient
// vertices, computed from linear-subgraph invariants.
std::vector<Int> charpoly_via_invariants(const Graph& h, int n);

// perm[built_index] = target_index for a poset listed as monomial strings.
std::vector<int> alignment(const GPoset& p, const std::vector<std::string>& monomials);

// The 11 classes of E(4) in the order used by the published 11x11 table.
std::vector<std::string> paper_order_e4();

}  // namespace invring
