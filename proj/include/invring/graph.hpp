#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invring/poly.hpp"

namespace invring {

using Edge = std::pair<int, int>;

// A graph given by its edge set. Vertex labels are arbitrary non-negative
// ints; only vertices incident to an edge belong to the graph ("connected
// vertices"). The ambient vertex count n is always tracked separately.
struct Graph {
    std::vector<Edge> edges;  // normalized: u < v, sorted, unique

    Graph() = default;
    explicit Graph(std::vector<Edge> e);

    int cv() const;                     // number of connected vertices
    int size() const { return static_cast<int>(edges.size()); }
    std::vector<int> vertices() const;  // sorted
    bool has_edge(int u, int v) const;
    int degree(int v) const;
    int max_degree() const;

    // Vertex sets of connected components.
    std::vector<std::vector<int>> components() const;

    Graph relabel(const std::map<int, int>& m) const;

    bool operator==(const Graph& o) const { return edges == o.edges; }
    bool operator<(const Graph& o) const { return edges < o.edges; }

    std::string str() const;  // "a12a34" style for small labels

    // "a12a13" monomial notation, single-digit vertex labels.
    static Graph from_monomial(const std::string& s);
    // one "u v" pair per line
    static Graph from_edge_list(const std::string& text);
    static Graph from_graph6(const std::string& s);
    std::string to_graph6(int n) const;  // n >= largest vertex + 1
};

struct CanonicalForm {
    std::vector<Edge> edges;  // canonical labels 0..cv-1
    Int aut;                  // order of the automorphism group
    bool operator==(const CanonicalForm& o) const { return edges == o.edges; }
    bool operator<(const CanonicalForm& o) const { return edges < o.edges; }
};

// Canonical relabeling (complete isomorphism invariant) plus |Aut|.
CanonicalForm canonical_form(const Graph& g);

bool isomorphic(const Graph& a, const Graph& b);

// I(g)(h): number of subgraphs (edge subsets) of h isomorphic to g,
// computed as injective edge-preserving embeddings divided by |Aut(g)|.
Int subgraph_count(const Graph& g, const Graph& h);

// Injective maps of g's vertices into h's vertices carrying every edge of g
// onto an edge of h; optionally with prescribed images for some vertices.
Int embedding_count(const Graph& g, const Graph& h,
                    const std::map<int, int>& pinned = {});

// All isomorphism classes with cv <= max_cv and at most max_edges edges
// (max_edges < 0 means C(max_cv,2)), ordered by (edge count, cv, canonical
// edge sequence). Each graph is returned in canonical labeling.
std::vector<Graph> enumerate_graphs(int max_cv, int max_edges = -1);

// Distinct subgraph classes of g with their counts I(a)(g).
std::vector<std::pair<Graph, Int>> subgraph_classes(const Graph& g);

// Expansion of the complement-counting invariant of g over its subgraph
// classes: coefficient of I(a) is (-1)^|a| I(a)(g) |Stab(a)|/|Stab(g)| as a
// polynomial in the ambient vertex count n. For g = K_k this expands the
// independent-k-set count.
std::vector<std::pair<Graph, Poly>> complement_expand(const Graph& g);

}  // namespace invring
