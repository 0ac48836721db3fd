#pragma once

#include <map>
#include <string>
#include <vector>

#include "invring/gposet.hpp"

namespace invring {

// Partially labeled graph: base plus an ordered sequence of fixed vertices.
// Fixed vertices may be isolated in base; all other vertices carry an edge.
struct LocalGraph {
    Graph base;
    std::vector<int> fixed;

    int k() const { return static_cast<int>(fixed.size()); }
    Graph interior() const;        // edges with both ends fixed
    Graph strip_interior() const;  // base minus the interior edges
    Graph drop_fixed() const;      // base minus fixed vertices and their edges
    std::vector<int> vertices() const;  // base vertices plus fixed, sorted
    std::string str() const;
    void validate() const;  // throws on repeated fixed points
};

// count of subgraphs of h isomorphic to g carrying fixed[i] onto T[i]
Int local_eval(const LocalGraph& g, const Graph& h, const std::vector<int>& T);

// orbit size of the ordered fixed tuple under automorphisms of the base;
// requires every fixed point to carry an edge
Int fixed_orbit_size(const LocalGraph& g);

// every pair of vertices, at least one outside the fixed set, joined by a
// path avoiding the fixed vertices
bool s_connected(const LocalGraph& g);

enum class RestoreMode { OrbitSum, Normalized };
// Sum of local evaluations over all ordered placements of the fixed tuple in
// an ambient vertex set of size n. OrbitSum returns the raw sum, which equals
// fixed_orbit_size(g) times the global count; Normalized divides it out.
Int restore_global(const LocalGraph& g, const Graph& h, int n, RestoreMode mode);

struct LocalGPoset {
    int k = 0;  // members have fixed points 0..k-1
    int radius = 1;
    int degree_bound = 0;
    bool connected_only = false;
    std::vector<LocalGraph> members;

    int size() const { return static_cast<int>(members.size()); }
    int find(const LocalGraph& g) const;  // up to pointwise-stabilizer iso, -1 absent
};

struct LocalConfig {
    int radius = 1;
    int degree_bound = 3;
    bool connected_only = false;
};
// Intersection posets for fixed point counts 1, 2, ... until the level comes
// out empty. Members at level k: complete interior on the fixed points, every
// other vertex adjacent to all of them, degrees capped by the bound. The
// connected filter keeps members whose non-fixed part is connected away from
// the fixed set, plus the bare interiors.
std::vector<LocalGPoset> build_local_posets(const LocalConfig& cfg);

IntMat local_etransform(const LocalGPoset& p);
// D entries: orbit of the newest fixed vertex under automorphisms pinning the
// earlier ones; n - (other vertex count) when that vertex is isolated
IntVec orbit_scaling(const LocalGPoset& p, int n);
// P: row per member of next = unit vector of the member of prev obtained by
// releasing the newest fixed point
IntMat projector(const LocalGPoset& prev, const LocalGPoset& next);

// glue multiplicities of members on their common fixed points
LocalGraph assemble(const LocalGPoset& p, const IntVec& mult);

struct SufficientResult {
    bool graphic = false;
    IntVec multiplicities;  // (E^T)^{-1} z, meaningful when graphic
    LocalGraph witness;
};
// one-sided test: nonnegative integer multiplicities yield a witness graph
SufficientResult local_sufficient_check(const IntVec& z, const LocalGPoset& p);

// I(coprod target_i g_i)(coprod host_i g_i) by peeling one host component
Int unconnected_recursion(const LocalGPoset& p, const std::vector<int>& target,
                          const std::vector<int>& host);

// Sparse tensor of local invariant vectors keyed by fixed tuples; the empty
// key holds the global vector over the level-1 members.
struct LocalParamTensor {
    int n = 0;
    std::vector<LocalGPoset> levels;  // levels[j] has j+1 fixed points
    std::map<std::vector<int>, IntVec> z;

    int depth() const;  // longest stored key
    IntVec node(const std::vector<int>& key) const;  // zeros when absent
};

LocalParamTensor extract_tensor(const Graph& h, int n,
                                const std::vector<LocalGPoset>& levels,
                                int depth);

enum class CheckStatus { Pass, Fail, BudgetExhausted };
struct CheckResult {
    CheckStatus status = CheckStatus::Pass;
    std::string violation;
    bool pass() const { return status == CheckStatus::Pass; }
};

// sum rule at one level: children transform-pairs add up to the scaled,
// projected parent vector
CheckResult neighborhood_sums(const LocalParamTensor& t, int level);

// conjugate equations, neighborhood sums, internal products; when the first
// missing level has nonzero demand, searches for a restricted completion
// within the budget
CheckResult tensor_consistency_check(const LocalParamTensor& t,
                                     long budget = 1000000);

struct ReconstructResult {
    bool ok = false;
    Graph graph;
    std::string witness;
};
// adjacency read from the edge coordinate of the pair nodes; verified by
// re-extraction
ReconstructResult reconstruct_restricted(const LocalParamTensor& t);

// connected-family conditions: nonnegativity, transform-pair nonnegativity,
// raw sum rules, conjugate equations
CheckResult finitely_generated_check(const LocalParamTensor& t);

enum class Realizability { Yes, No, BudgetExhausted };
// degree-sequence specialization of the connected machinery (budget < 0
// means unlimited)
Realizability degree_sequence_realizable(const std::vector<int>& degs,
                                         long budget = -1);

// coefficients c with I_A(a) I_B(b) = sum c_g I_{fixed set of p}(g);
// throws std::invalid_argument when a product term falls outside p
IntVec local_product_coeffs(const LocalGraph& a, const LocalGraph& b,
                            const LocalGPoset& p);

}  // namespace invring
