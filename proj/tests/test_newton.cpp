#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "invring/newton.hpp"

using namespace invring;

namespace {

// independent: count k-subsets of [n] inducing no edge of h
Int independent_sets(const Graph& h, int n, int k) {
    std::vector<int> pick;
    Int total = 0;
    auto rec = [&](auto&& self, int from) -> void {
        if ((int)pick.size() == k) {
            for (auto& [a, b] : h.edges) {
                bool ina = false, inb = false;
                for (int x : pick) ina |= x == a, inb |= x == b;
                if (ina && inb) return;
            }
            total += 1;
            return;
        }
        for (int i = from; i < n; i++) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return total;
}

Graph clique(int k) {
    Graph g;
    for (int a = 0; a < k; a++)
        for (int b = a + 1; b < k; b++) g.edges.push_back({a, b});
    return g;
}

std::vector<SigmaExpression> load_syzygies() {
    std::ifstream in(std::string(INVRING_DATA_DIR) + "/syzygies.txt");
    REQUIRE(in.good());
    return load_sigma_expressions(in);
}

}  // namespace

TEST_CASE("omega and prefix elementary symmetric values") {
    CHECK(omega(1) == 2);
    CHECK(omega(3) == 3);
    CHECK(omega(6) == 4);
    CHECK(omega(2) == 3);
    CHECK(omega(4) == 4);
    CHECK(omega(0) == 1);
    CHECK_THROWS_AS(omega(-1), std::invalid_argument);

    CHECK(elem_sym_prefix(2, 3) == 11);  // 1*2 + 1*3 + 2*3
    for (int b = 0; b <= 6; b++) {
        CHECK(elem_sym_prefix(0, b) == 1);
        CHECK(elem_sym_prefix(b + 1, b) == 0);
    }
    // product expansion oracle: prod (x + t) over t=1..b at x=1 is (b+1)!
    for (int b = 1; b <= 7; b++) {
        Int s = 0;
        for (int a = 0; a <= b; a++) s += elem_sym_prefix(a, b);
        CHECK(s == factorial(b + 1));
    }
    CHECK(SigmaIndex{1, 2}.valid());
    CHECK(SigmaIndex{3, 3}.valid());
    CHECK_FALSE(SigmaIndex{4, 3}.valid());
}

TEST_CASE("d coefficients: closed form, values, and the recursion") {
    for (int v = 0; v <= 8; v++) {
        CHECK(d_poly(0, v) == Poly(Rat(1)));
        CHECK(d_poly(1, v) == Rat(-1) * (Poly::var() - Poly(Rat(v - 1))));
    }
    CHECK(d_coeff(2, 4, 6) == Rat(6));   // (1/2)(n-3)(n-2) at n=6
    CHECK(d_coeff(1, 3, 5) == Rat(-3));  // -(n-2) at n=5

    // d_i^v = -sum_j C(n-v+j, j) d_{i-j}^{v-j}, symbolically in n
    for (int v = 2; v <= 9; v++)
        for (int i = 1; i <= std::min(v, 5); i++) {
            Poly rhs;
            for (int j = 1; j <= i; j++) {
                Poly binp = Rat(Int(1), factorial(j)) * falling_from(v - j, v);
                rhs -= binp * d_poly(i - j, v - j);
            }
            CHECK(d_poly(i, v) == rhs);
        }
    // the alternating-sum identity behind the recursion's proof
    for (int i = 1; i <= 8; i++) {
        Int s = 0;
        for (int j = 1; j <= i; j++)
            s += ((i - j + 1) % 2 ? -1 : 1) * binomial(i, j);
        CHECK(s == ((i % 2) ? -1 : 1));
    }
}

TEST_CASE("direct sigma, h, b evaluation") {
    Graph k3 = clique(3);
    CHECK(sigma_eval(k3, 1, 2) == 3);
    CHECK(sigma_eval(k3, 2, 3) == 3);
    CHECK(sigma_eval(k3, 3, 3) == 1);
    CHECK(sigma_eval(k3, 2, 4) == 0);
    CHECK(h_eval(k3, 3, 2, 3) == 9);
    CHECK(b_eval(k3, 3, 2, 3) == 3);

    Graph empty;
    for (int e = 1; e <= 4; e++)
        for (int v = omega(e); v <= 6; v++) CHECK(sigma_eval(empty, e, v) == 0);
    CHECK(sigma_eval(empty, 0, 0) == 1);

    // sigma_1^2 is the edge count; sigma_{C(k,2)}^k counts k-cliques
    GPoset p5 = build_gposet(5);
    for (auto& g : p5.graphs) {
        CHECK(sigma_eval(g, 1, 2) == g.size());
        for (int k = 3; k <= 5; k++)
            CHECK(sigma_eval(g, k * (k - 1) / 2, k) == subgraph_count(clique(k), g));
    }

    // graph bigger than the ambient space is rejected by h/b
    CHECK_THROWS_AS(h_eval(clique(4), 3, 1, 2), std::invalid_argument);
}

TEST_CASE("conversion maps agree with brute force on all of E(6)") {
    GPoset p6 = build_gposet(6);
    const int n = 6;
    for (auto& g : p6.graphs) {
        EvTable ht, bt, st_direct;
        for (int e = 1; e <= 15; e++)
            for (int v = omega(e); v <= 6; v++) {
                ht[{e, v}] = Rat(h_eval(g, n, e, v));
                bt[{e, v}] = Rat(b_eval(g, n, e, v));
                st_direct[{e, v}] = Rat(sigma_eval(g, e, v));
            }
        EvTable b2 = b_from_h(ht);
        for (auto& [k, val] : b2) CHECK(val == bt.at(k));
        EvTable s2 = sigma_from_b(bt, n);
        for (auto& [k, val] : s2) CHECK(val == st_direct.at(k));
        EvTable s3 = sigma_from_h(ht, n);
        CHECK(s3 == s2);
        // sigma_e^{omega(e)} = b_e^{omega(e)}
        for (int e = 1; e <= 15; e++)
            CHECK(st_direct.at({e, omega(e)}) == bt.at({e, omega(e)}));
    }
    EvTable gap{{{2, 4}, Rat(1)}};  // needs (2,3): incomplete range
    CHECK_THROWS_AS(sigma_from_b(gap, n), std::invalid_argument);
    CHECK_THROWS_AS(b_from_h(gap), std::invalid_argument);
}

TEST_CASE("binomial split identity") {
    // sigma_e^v = b_e^v - sum_{w<v} C(n-w, v-w) sigma_e^w
    GPoset p5 = build_gposet(5);
    for (int n : {5, 7}) {
        for (auto& g : p5.graphs)
            for (int e = 1; e <= 6; e++)
                for (int v = omega(e); v <= 6; v++) {
                    Int rhs = b_eval(g, n, e, v);
                    for (int w = omega(e); w < v; w++)
                        rhs -= binomial(Int(n - w), v - w) * sigma_eval(g, e, w);
                    CHECK(sigma_eval(g, e, v) == rhs);
                }
    }
}

TEST_CASE("complement clique expansions") {
    auto e3 = kbar_expansion(3);
    CHECK(e3.constant == binomial_poly(3));
    CHECK(e3.h_terms.at({1, 2}) == Rat(-1) * (Poly::var() - Poly(Rat(2))));
    CHECK(e3.h_terms.at({1, 3}) == Poly(Rat("-5/6")));
    CHECK(e3.h_terms.at({2, 3}) == Poly(Rat(1)));
    CHECK(e3.h_terms.at({3, 3}) == Poly(Rat("-1/6")));
    CHECK(e3.h_terms.size() == 4);
    CHECK(e3.sigma_terms.at({2, 3}) == Poly(Rat(1)));
    CHECK(e3.sigma_terms.at({3, 3}) == Poly(Rat(-1)));
    CHECK(e3.sigma_terms.at({1, 2}) == Rat(-1) * (Poly::var() - Poly(Rat(2))));

    auto e4 = kbar_expansion(4);
    Poly nm2c2 = Rat(Int(1), 2) * (Poly::var() - Poly(Rat(2))) *
                 (Poly::var() - Poly(Rat(3)));
    CHECK(e4.h_terms.at({1, 2}) == Rat(-1) * nm2c2);
    CHECK(e4.h_terms.at({1, 4}) == Poly(Rat("-29/20")));
    CHECK(e4.h_terms.at({2, 4}) == Poly(Rat("203/90")));
    CHECK(e4.h_terms.at({3, 4}) == Poly(Rat("-49/48")));
    CHECK(e4.h_terms.at({4, 4}) == Poly(Rat("35/144")));
    CHECK(e4.h_terms.at({5, 4}) == Poly(Rat("-7/240")));
    CHECK(e4.h_terms.at({6, 4}) == Poly(Rat("1/720")));
    // every h_{f,3} coefficient cancels
    for (int f = 1; f <= 3; f++) CHECK(e4.h_terms.count({f, 3}) == 0);

    auto e5 = kbar_expansion(5);
    CHECK(e5.h_terms.at({1, 5}) == Poly(Rat("-3601/2520")));
    CHECK(e5.h_terms.at({2, 5}) == Poly(Rat("151933/50400")));
    CHECK(e5.h_terms.at({3, 5}) == Poly(Rat("-84095/36288")));
    CHECK(e5.h_terms.at({4, 5}) == Poly(Rat("341693/362880")));
    CHECK(e5.h_terms.at({5, 5}) == Poly(Rat("-8591/34560")));
    CHECK(e5.h_terms.at({6, 5}) == Poly(Rat("7513/172800")));
    CHECK(e5.h_terms.at({7, 5}) == Poly(Rat("-121/24192")));
    CHECK(e5.h_terms.at({8, 5}) == Poly(Rat("11/30240")));
    CHECK(e5.h_terms.at({9, 5}) == Poly(Rat("-11/725760")));
    CHECK(e5.h_terms.at({10, 5}) == Poly(Rat("1/3628800")));

    CHECK_THROWS_AS(kbar_expansion(1), std::invalid_argument);

    // both forms evaluate to the independent-set count on E(5) hosts
    GPoset p5 = build_gposet(5);
    for (int k = 3; k <= 5; k++) {
        auto ex = kbar_expansion(k);
        for (int n : {5, 6}) {
            for (auto& g : p5.graphs) {
                Int want = independent_sets(g, n, k);
                Rat via_sigma = ex.constant.eval(Rat(n));
                for (auto& [key, coef] : ex.sigma_terms)
                    via_sigma += coef.eval(Rat(n)) * sigma_eval(g, key.first, key.second);
                via_sigma.canonicalize();
                CHECK(via_sigma == Rat(want));
                Rat via_h = ex.constant.eval(Rat(n));
                for (auto& [key, coef] : ex.h_terms)
                    via_h += coef.eval(Rat(n)) * h_eval(g, n, key.first, key.second);
                via_h.canonicalize();
                CHECK(via_h == Rat(want));
            }
        }
    }
}

TEST_CASE("sigma expression parsing and normalization") {
    auto ex = parse_sigma_expression("-1*s(1,2)*s(1,2) + 2*s(2,4) + 2*s(2,3) + 1*s(1,2)");
    CHECK(ex.terms.size() == 4);
    // merge and cancellation
    auto z = parse_sigma_expression("1/2*s(1,2)*s(2,3) + 1/2*s(2,3)*s(1,2) + -1*s(2,3)*s(1,2)");
    CHECK(z.terms.empty());
    CHECK(sigma_expr_eval(z, clique(4)) == 0);
    auto c = parse_sigma_expression("3/6*s(1,2)");
    CHECK(c.terms.size() == 1);
    CHECK(c.terms[0].coeff == Rat(1, 2));
    CHECK_THROWS_AS(parse_sigma_expression("s(1,2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sigma_expression("1*s(1 2)"), std::invalid_argument);

    std::istringstream in("# comment\n\n1*s(1,2)\n2*s(2,3) # trailing\n");
    auto exprs = load_sigma_expressions(in);
    CHECK(exprs.size() == 2);
    CHECK(sigma_expr_eval(exprs[0], clique(3)) == 3);
}

TEST_CASE("the thirteen syzygies vanish on E(6)") {
    auto syz = load_syzygies();
    REQUIRE(syz.size() == 13);
    GPoset p6 = build_gposet(6);
    auto reports = syzygy_check(syz, p6);
    for (size_t i = 0; i < reports.size(); i++) {
        INFO("syzygy ", i);
        CHECK(reports[i].pass);
        CHECK(reports[i].witnesses.empty());
    }
    // the last one is the edge product identity m^2 = m + 2*matchings + 2*cherries
    for (auto& g : p6.graphs) {
        Int m = g.size();
        CHECK(m * m == m + 2 * sigma_eval(g, 2, 4) + 2 * sigma_eval(g, 2, 3));
    }
    // a wrong relation is reported with witnesses
    auto bad = parse_sigma_expression("1*s(1,2)");
    auto r = syzygy_check({bad}, p6);
    CHECK_FALSE(r[0].pass);
    CHECK(!r[0].witnesses.empty());
    CHECK(r[0].witnesses[0] == "a01");
    // the zero expression passes anywhere
    CHECK(syzygy_check({SigmaExpression{}}, p6)[0].pass);
}

TEST_CASE("sigma evaluation table") {
    GPoset p4 = build_gposet(4);
    auto cols = sigma_columns(4);
    std::vector<std::pair<int, int>> want{{1, 2}, {2, 3}, {3, 3}, {2, 4}, {3, 4}, {4, 4}, {5, 4}, {6, 4}};
    REQUIRE(cols.size() == want.size());
    for (size_t j = 0; j < cols.size(); j++) {
        CHECK(cols[j].e == want[j].first);
        CHECK(cols[j].v == want[j].second);
    }

    auto m = sigma_etable(p4);
    REQUIRE(m.size() == p4.graphs.size());
    auto et = etransform(p4);
    Graph k3 = clique(3);
    for (size_t i = 0; i < p4.graphs.size(); i++) {
        auto& g = p4.graphs[i];
        if (g.size() == 0)
            for (auto& x : m[i]) CHECK(x == 0);
        if (canonical_form(g) == canonical_form(k3)) {
            CHECK(m[i][0] == 3);  // sigma_1^2
            CHECK(m[i][1] == 3);  // sigma_2^3
            CHECK(m[i][2] == 1);  // sigma_3^3
        }
        // sigma_1^2 column equals the single-edge column of the E-transform
        CHECK(m[i][0] == et[i][p4.find(Graph::from_monomial("a12"))]);
    }
}
