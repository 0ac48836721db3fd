#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "invring/ramsey.hpp"

using namespace invring;

namespace {

// independent k-sets of h among n ambient vertices
Int independent_sets(const Graph& h, int n, int k) {
    Int count = 0;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if ((int)pick.size() == k) {
            for (size_t a = 0; a < pick.size(); ++a)
                for (size_t b = a + 1; b < pick.size(); ++b)
                    if (h.has_edge(pick[a], pick[b])) return;
            ++count;
            return;
        }
        for (int v = from; v < n; ++v) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return count;
}

Int ramsey_invariant(const Graph& h, int n, int k) {
    Graph kk;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) kk.edges.push_back({a, b});
    return subgraph_count(Graph(kk.edges), h) + independent_sets(h, n, k);
}

Int dot(const IntVec& f, const IntVec& z) {
    Int acc = 0;
    for (size_t i = 0; i < f.size(); ++i) acc += f[i] * z[i];
    return acc;
}

RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

}  // namespace

TEST_CASE("f vector") {
    GPoset p4 = build_gposet(4);
    auto perm = alignment(p4, paper_order_e4());
    auto rc = ramsey_f_vector(p4, 6, 3);
    IntVec expect = {20, -4, 0, 1, 0, 0, 0, 0, 0, 0, 0};  // published order
    for (int i = 0; i < p4.size(); ++i) CHECK(rc.f[i] == expect[perm[i]]);

    CHECK_THROWS(ramsey_f_vector(p4, 6, 5));
    CHECK_THROWS(ramsey_f_vector(p4, 3, 3));

    // f.z equals cliques plus independent sets on every six-vertex host
    GPoset p6 = build_gposet(6);
    for (auto& h : p6.graphs)
        CHECK(dot(rc.f, evaluate_vector(p4, h)) == ramsey_invariant(h, 6, 3));

    // the five-cycle is a zero at n = 5
    auto rc5 = ramsey_f_vector(p4, 5, 3);
    Graph c5 = Graph::from_monomial("a12a23a34a45a15");
    CHECK(dot(rc5.f, evaluate_vector(p4, c5)) == 0);
}

TEST_CASE("orthogonal coefficients") {
    GPoset p4 = build_gposet(4);
    RatVec a = ramsey_orthogonal_coeffs(p4, 6, 3);
    // a_i = (Ramsey invariant of g_i on r vertices) / C(n-k, r-k)
    for (int i = 0; i < p4.size(); ++i) {
        CHECK(a[i] >= 0);
        Rat expect(ramsey_invariant(p4.graphs[i], 4, 3), Int(3));
        expect.canonicalize();
        CHECK(a[i] == expect);
    }
}

TEST_CASE("lp lower bound curves") {
    GPoset p4 = build_gposet(4);
    GPoset p5 = build_gposet(5);
    Families lin;
    lin.products = false;

    // linear bound from E(5) alone certifies r(3) <= 6
    for (auto& pt : lp_lower_bound_curve(p5, 6, 3, 0, 15, lin)) {
        REQUIRE(pt.feasible);
        REQUIRE(pt.bounded);
        CHECK(pt.bound > 0);
    }

    // from E(4) the linear bound dips to zero or below somewhere
    bool dips = false;
    for (auto& pt : lp_lower_bound_curve(p4, 6, 3, 0, 15, lin))
        if (pt.feasible && pt.bounded && pt.bound <= 0) dips = true;
    CHECK(dips);

    // adding the linearized products recovers the certificate
    for (auto& pt : lp_lower_bound_curve(p4, 6, 3, 0, 15, Families{}))
        if (pt.feasible) {
            REQUIRE(pt.bounded);
            CHECK(pt.bound > 0);
        }
}

TEST_CASE("zero search at n = 6 certifies r(3) <= 6") {
    GPoset p4 = build_gposet(4);
    auto res = find_r_graphic_zeros(p4, 6, 3);
    CHECK(res.certified);
    CHECK(res.zeros.empty());

    ZeroSearchOptions sweep;
    sweep.sweep_z1 = true;
    auto full = find_r_graphic_zeros(p4, 6, 3, sweep);
    CHECK(full.certified);

    // no actual graph is a zero either
    GPoset p6 = build_gposet(6);
    for (auto& h : p6.graphs) CHECK(ramsey_invariant(h, 6, 3) > 0);
}

TEST_CASE("zero search at n = 5 finds the five-cycle") {
    GPoset p4 = build_gposet(4);
    Graph c5 = Graph::from_monomial("a12a23a34a45a15");
    IntVec zc5 = evaluate_vector(p4, c5);

    auto res = find_r_graphic_zeros(p4, 5, 3);  // default z1 = 5 suffices
    CHECK(!res.certified);
    std::set<IntVec> zeros(res.zeros.begin(), res.zeros.end());
    CHECK(zeros.count(zc5));

    auto rc = ramsey_f_vector(p4, 5, 3);
    for (auto& z : res.zeros) {
        CHECK(dot(rc.f, z) == 0);
        CHECK(weakly_graphic_check(to_rat(z), p4, 5).pass());
    }

    // completeness across the full z1 sweep: every graph zero appears
    ZeroSearchOptions sweep;
    sweep.sweep_z1 = true;
    auto full = find_r_graphic_zeros(p4, 5, 3, sweep);
    std::set<IntVec> all(full.zeros.begin(), full.zeros.end());
    GPoset p5 = build_gposet(5);
    for (auto& h : p5.graphs)
        if (ramsey_invariant(h, 5, 3) == 0) CHECK(all.count(evaluate_vector(p4, h)));
}

TEST_CASE("checkpointed search resumes without recomputation") {
    GPoset p4 = build_gposet(4);
    std::string path = "ramsey_state_test.txt";
    std::remove(path.c_str());
    ZeroSearchOptions opt;
    opt.state_file = path;
    auto first = find_r_graphic_zeros(p4, 5, 3, opt);
    auto second = find_r_graphic_zeros(p4, 5, 3, opt);
    std::set<IntVec> a(first.zeros.begin(), first.zeros.end());
    std::set<IntVec> b(second.zeros.begin(), second.zeros.end());
    CHECK(a == b);
    CHECK(second.zeros.size() == a.size());  // no duplicates from the replay
    std::remove(path.c_str());
}

TEST_CASE("worker partitioning covers the search") {
    GPoset p4 = build_gposet(4);
    ZeroSearchOptions w0, w1;
    w0.workers = w1.workers = 2;
    w0.worker_id = 0;
    w1.worker_id = 1;
    std::set<IntVec> split;
    for (auto& z : find_r_graphic_zeros(p4, 5, 3, w0).zeros) split.insert(z);
    for (auto& z : find_r_graphic_zeros(p4, 5, 3, w1).zeros) split.insert(z);
    std::set<IntVec> whole;
    for (auto& z : find_r_graphic_zeros(p4, 5, 3).zeros) whole.insert(z);
    CHECK(split == whole);
}
