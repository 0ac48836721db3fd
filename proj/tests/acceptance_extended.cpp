// Long-running acceptance checks, excluded from the default suite:
//  - the r = 5, k = 4, n = 18 zero search (hours in the worst case; writes a
//    checkpoint file so an interrupted run resumes where it left off)
//  - the syzygy sweep over eight-vertex classes
// One [PASS]/[FAIL] line each; nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <vector>

#include "invring/constraints.hpp"
#include "invring/newton.hpp"
#include "invring/ramsey.hpp"

using namespace invring;

namespace {

int failures = 0;

void run(const char* label, const char* what, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", label, what, secs,
                err.empty() ? "" : " error: ", err.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// the published eighteen-vertex, 76-edge solution vector (source ordering
// unknown; see the alignment check below)
const std::vector<long> PUBLISHED_18 = {
    1,     76,     0,      2850,  144943, 40,    49161, 2559,  23294,
    82,    15,     121162, 41864, 9033,   104781, 107484, 77509, 3789,
    1,     89219,  237949, 324866, 16203, 27998,  78056, 0,     540733,
    95195, 0,      3,      0,     70440,  0,      0};

}  // namespace

int main() {
    run("9", "five-vertex constraints admit a zero at eighteen vertices", [] {
        GPoset p5 = build_gposet(5);
        ZeroSearchOptions opt;
        opt.state_file = "acceptance18.resume";  // survives interruption
        IntVec first;
        opt.on_zero = [&](const IntVec& z) {
            first = z;
            return false;  // one witness is enough
        };
        auto res = find_r_graphic_zeros(p5, 18, 4, opt);
        if (res.certified || first.empty()) return false;
        if (first[1] != 76) return false;  // default sweep point C(18,2)/2
        RatVec zr(first.size());
        for (size_t i = 0; i < first.size(); i++) zr[i] = Rat(first[i]);
        if (!weakly_graphic_check(zr, p5, 18).pass()) return false;
        auto rc = ramsey_f_vector(p5, 18, 4);
        Int fz = 0;
        for (size_t i = 0; i < first.size(); i++) fz += rc.f[i] * first[i];
        std::remove("acceptance18.resume");
        return fz == 0;
    });

    run("9b", "published solution vector aligns with the constraint system", [] {
        // Attempted alignment of the 34 published entries onto the 34 classes.
        // The attempt provably cannot succeed: with z_0 = 1 (forced by the
        // product family), the orthogonal parameters are nonnegative and sum
        // to C(18,5) = 8568, so every entry is capped by
        // max_t I(g_j)(g_t) * 8568 / D_j <= 60 * 8568 = 514080 (no graph on
        // five vertices has a trivial automorphism group, so no column of the
        // transform exceeds 5!/2 = 60). The published vector contains 540733.
        GPoset p5 = build_gposet(5);
        auto E = etransform(p5);
        IntVec D = scaling_matrix(p5, 18);
        Int cap = 0;
        for (int j = 0; j < p5.size(); j++) {
            Int mc = 0;
            for (int t = j; t < p5.size(); t++)
                if (E[t][j] > mc) mc = E[t][j];
            Int b = mc * 8568 / D[j];
            if (b > cap) cap = b;
        }
        long worst = *std::max_element(PUBLISHED_18.begin(), PUBLISHED_18.end());
        std::printf("       max published entry %ld vs attainable cap %s: %s\n", worst,
                    cap.get_str().c_str(),
                    Int(worst) > cap ? "no alignment can satisfy the linear family"
                                     : "cap argument inconclusive");
        return Int(worst) <= cap;  // honest: this fails with the printed vector
    });

    run("11x", "syzygies vanish on eight-vertex classes", [] {
        std::ifstream in(std::string(INVRING_DATA_DIR) + "/syzygies.txt");
        if (!in) return false;
        auto exprs = load_sigma_expressions(in);
        if (exprs.size() != 13) return false;
        GPoset p8 = build_gposet(8);
        for (auto& rep : syzygy_check(exprs, p8))
            if (!rep.pass) return false;
        return true;
    });

    if (failures) std::printf("%d extended check(s) failed\n", failures);
    return failures ? 1 : 0;
}
