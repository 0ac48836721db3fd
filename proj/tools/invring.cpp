#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "invring/local.hpp"
#include "invring/newton.hpp"
#include "invring/ramsey.hpp"

using namespace invring;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// exact values go out as strings so nothing is squeezed through a double
std::string jint(const Int& v) { return v.get_str(); }
std::vector<std::string> jvec(const IntVec& v) {
    std::vector<std::string> a;
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

struct GraphInput {
    std::string graph6, monomial, path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph6", graph6, "graph6-encoded input graph");
        cmd->add_option("--monomial", monomial, "a12a13-style monomial input");
        cmd->add_option("--input", path, "edge-list file, one 'u v' per line, - for stdin");
    }
    Graph load() const {
        int given = !graph6.empty() + !monomial.empty() + !path.empty();
        if (given != 1)
            throw CLI::ValidationError("exactly one of --graph6/--monomial/--input is required");
        if (!graph6.empty()) return Graph::from_graph6(graph6);
        if (!monomial.empty()) return Graph::from_monomial(monomial);
        if (path == "-") {
            std::stringstream ss;
            ss << std::cin.rdbuf();
            return Graph::from_edge_list(ss.str());
        }
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return Graph::from_edge_list(ss.str());
    }
};

Families parse_families(const std::string& spec) {
    Families f;
    if (spec.empty()) return f;
    f.nonneg = f.linear = f.products = false;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "nonneg")
            f.nonneg = true;
        else if (tok == "linear")
            f.linear = true;
        else if (tok == "products")
            f.products = true;
        else
            throw CLI::ValidationError("unknown family: " + tok);
    }
    return f;
}

RatVec parse_rat_vector(const std::string& text) {
    RatVec v;
    std::stringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        Rat r(tok);
        r.canonicalize();
        v.push_back(r);
    }
    return v;
}

IntMat aligned_etransform(int r, int edges, bool align, bool inverse) {
    GPoset p = build_gposet(r, edges);
    IntMat e = inverse ? etransform_inverse(p) : etransform(p);
    if (!align) return e;
    if (r != 4 || edges >= 0)
        throw CLI::ValidationError("--align-paper applies to the plain r=4 poset");
    std::vector<int> perm = alignment(p, paper_order_e4());
    IntMat out(p.size(), IntVec(p.size()));
    for (int i = 0; i < p.size(); i++)
        for (int j = 0; j < p.size(); j++) out[perm[i]][perm[j]] = e[i][j];
    return out;
}

void print_matrix(const IntMat& m, const std::string& format) {
    if (format == "json") {
        json rows = json::array();
        for (auto& r : m) rows.push_back(jvec(r));
        std::cout << rows.dump() << "\n";
        return;
    }
    const char* sep = format == "csv" ? "," : " ";
    for (auto& row : m) {
        for (size_t j = 0; j < row.size(); j++)
            std::cout << (j ? sep : "") << row[j].get_str();
        std::cout << "\n";
    }
}

// tensor files: {"n":, "degree_bound":, "z": {"": [...], "1": [...], "1,2": [...]}}
// fixed-point keys are 1-based comma-separated sequences; only nonzero nodes
// need to be present
LocalParamTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    json doc = json::parse(in);
    LocalParamTensor t;
    t.n = doc.at("n").get<int>();
    int d = doc.value("degree_bound", 3);
    t.levels = build_local_posets({1, d, false});
    for (auto& [key, val] : doc.at("z").items()) {
        std::vector<int> fp;
        std::stringstream ss(key);
        std::string tok;
        while (std::getline(ss, tok, ',')) fp.push_back(std::stoi(tok) - 1);
        IntVec v;
        for (auto& x : val)
            v.push_back(x.is_string() ? Int(x.get<std::string>()) : Int(x.get<long>()));
        t.z[fp] = v;
    }
    return t;
}

std::string status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "budget_exhausted";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for subgraph-counting graph invariants"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- poset ----
    auto* poset_cmd = app.add_subcommand("poset", "list the members of E(r) or E(r,d)");
    int po_r = 4, po_edges = -1;
    std::string po_format = "text";
    poset_cmd->add_option("--r", po_r, "maximum connected vertices")->required();
    poset_cmd->add_option("--edges", po_edges, "edge bound (E(r,d))");
    poset_cmd->add_option("--format", po_format)->check(CLI::IsMember({"text", "json"}));
    poset_cmd->callback([&] {
        GPoset p = build_gposet(po_r, po_edges);
        if (po_format == "json") {
            json out = json::array();
            for (int i = 0; i < p.size(); i++) {
                const Graph& g = p.graphs[i];
                out.push_back({{"index", i},
                               {"monomial", g.str()},
                               {"edges", g.size()},
                               {"cv", g.cv()},
                               {"graph6", g.to_graph6(std::max(g.cv(), 1))}});
            }
            std::cout << out.dump() << "\n";
        } else {
            for (int i = 0; i < p.size(); i++) {
                const Graph& g = p.graphs[i];
                std::cout << i << " " << g.str() << " edges=" << g.size()
                          << " cv=" << g.cv() << "\n";
            }
        }
    });

    // ---- etransform ----
    auto* et_cmd = app.add_subcommand("etransform", "print the E-transform of a poset");
    int et_r = 4, et_edges = -1;
    bool et_align = false, et_inverse = false;
    std::string et_format = "text";
    et_cmd->add_option("--n,--r", et_r, "maximum connected vertices")->required();
    et_cmd->add_option("--edges", et_edges, "edge bound");
    et_cmd->add_flag("--align-paper", et_align, "published Example-1 row order (r=4)");
    et_cmd->add_flag("--inverse", et_inverse, "sign-formula inverse instead");
    et_cmd->add_option("--format", et_format)->check(CLI::IsMember({"text", "csv", "json"}));
    et_cmd->callback([&] {
        print_matrix(aligned_etransform(et_r, et_edges, et_align, et_inverse), et_format);
    });

    // ---- check ----
    auto* check_cmd = app.add_subcommand("check", "test a vector against the r-graphic constraints");
    int ck_r = 4, ck_n = 0;
    std::string ck_vector, ck_input, ck_families;
    check_cmd->add_option("--r", ck_r)->required();
    check_cmd->add_option("--n", ck_n, "ambient vertex count")->required();
    check_cmd->add_option("--vector", ck_vector, "whitespace-separated entries, rationals allowed");
    check_cmd->add_option("--input", ck_input, "file holding the vector");
    check_cmd->add_option("--families", ck_families, "comma subset of nonneg,linear,products");
    check_cmd->callback([&] {
        std::string text = ck_vector;
        if (text.empty()) {
            if (ck_input.empty())
                throw CLI::ValidationError("--vector or --input is required");
            std::ifstream in(ck_input);
            if (!in) throw CLI::ValidationError("cannot open " + ck_input);
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        RatVec z = parse_rat_vector(text);
        GPoset p = build_gposet(ck_r);
        if ((int)z.size() != p.size())
            throw CLI::ValidationError("vector has " + std::to_string(z.size()) +
                                       " entries, poset needs " + std::to_string(p.size()));
        ConstraintReport rep = weakly_graphic_check(z, p, ck_n);
        Families fam = parse_families(ck_families);
        bool pass = rep.integral && (!fam.nonneg || rep.nonneg) &&
                    (!fam.linear || rep.linear) && (!fam.products || rep.products);
        ordered_json out = {{"pass", pass},
                            {"nonneg", rep.nonneg},
                            {"integral", rep.integral},
                            {"linear", rep.linear},
                            {"products", rep.products},
                            {"violations", rep.violations}};
        std::cout << out.dump() << "\n";
        exit_code = pass ? 0 : 2;
    });

    // ---- enumerate ----
    auto* en_cmd = app.add_subcommand("enumerate", "all vectors satisfying the constraints");
    int en_r = 4, en_n = 0, en_edges = -1;
    long en_limit = 0;
    std::vector<std::string> en_fix;
    std::string en_families, en_format = "ndjson";
    en_cmd->add_option("--r", en_r)->required();
    en_cmd->add_option("--n", en_n)->required();
    en_cmd->add_option("--edges", en_edges, "edge bound on the poset");
    en_cmd->add_option("--fix", en_fix, "index=value pins, repeatable");
    en_cmd->add_option("--families", en_families);
    en_cmd->add_option("--limit", en_limit, "stop after this many vectors (0 = all)");
    en_cmd->add_option("--format", en_format)->check(CLI::IsMember({"ndjson", "csv"}));
    en_cmd->callback([&] {
        GPoset p = build_gposet(en_r, en_edges);
        std::map<int, Int> fixed;
        for (const std::string& s : en_fix) {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--fix expects index=value");
            fixed[std::stoi(s.substr(0, eq))] = Int(s.substr(eq + 1));
        }
        std::vector<IntVec> rows;
        enumerate_r_graphic(p, en_n, fixed, parse_families(en_families),
                            [&](const IntVec& z) {
                                rows.push_back(z);
                                return en_limit == 0 || (long)rows.size() < en_limit;
                            });
        std::sort(rows.begin(), rows.end());
        for (const IntVec& z : rows) {
            if (en_format == "csv") {
                for (size_t j = 0; j < z.size(); j++)
                    std::cout << (j ? "," : "") << z[j].get_str();
                std::cout << "\n";
            } else {
                std::cout << json(jvec(z)).dump() << "\n";
            }
        }
    });

    // ---- ramsey ----
    auto* ram_cmd = app.add_subcommand("ramsey", "clique+independent-set invariant tools");
    ram_cmd->require_subcommand(1);

    auto* rb_cmd = ram_cmd->add_subcommand("bound", "exact bound curves as CSV");
    int rb_r = 4, rb_n = 0, rb_k = 3;
    std::string rb_curve = "lp", rb_families, rb_z1lo = "0", rb_z1hi = "-1";
    rb_cmd->add_option("--r", rb_r);
    rb_cmd->add_option("--n", rb_n)->required();
    rb_cmd->add_option("--k", rb_k);
    rb_cmd->add_option("--curve", rb_curve)->check(CLI::IsMember({"lp", "raja3"}));
    rb_cmd->add_option("--families", rb_families);
    rb_cmd->add_option("--z1-lo", rb_z1lo);
    rb_cmd->add_option("--z1-hi", rb_z1hi);
    rb_cmd->callback([&] {
        Int lo(rb_z1lo), hi(rb_z1hi);
        if (hi < 0) hi = Int(rb_n) * (rb_n - 1) / 2;
        if (rb_curve == "raja3") {
            std::cout << "z1,lower_num,lower_den,upper_num,upper_den\n";
            for (Int z1 = lo; z1 <= hi; z1++) {
                auto [l, u] = raja3_bounds(rb_n, z1);
                std::cout << z1.get_str() << "," << l.get_num().get_str() << ","
                          << l.get_den().get_str() << "," << u.get_num().get_str()
                          << "," << u.get_den().get_str() << "\n";
            }
            return;
        }
        GPoset p = build_gposet(rb_r);
        auto curve = lp_lower_bound_curve(p, rb_n, rb_k, lo, hi,
                                          parse_families(rb_families));
        std::cout << "z1,feasible,bounded,num,den\n";
        for (const CurvePoint& pt : curve) {
            std::cout << pt.z1.get_str() << "," << (pt.feasible ? 1 : 0) << ","
                      << (pt.bounded ? 1 : 0) << ",";
            if (pt.feasible && pt.bounded)
                std::cout << pt.bound.get_num().get_str() << ","
                          << pt.bound.get_den().get_str();
            else
                std::cout << ",";
            std::cout << "\n";
        }
    });

    auto* rz_cmd = ram_cmd->add_subcommand("zeros", "search for r-graphic zeros");
    int rz_r = 4, rz_n = 0, rz_k = 3, rz_workers = 1;
    long rz_limit = 0;
    bool rz_sweep = false, rz_no_orthosum = false;
    std::string rz_resume;
    rz_cmd->add_option("--r", rz_r)->required();
    rz_cmd->add_option("--n", rz_n)->required();
    rz_cmd->add_option("--k", rz_k)->required();
    rz_cmd->add_flag("--sweep", rz_sweep, "sweep z1 over the whole range");
    rz_cmd->add_flag("--no-orthosum", rz_no_orthosum, "drop the orthogonal-sum equality");
    rz_cmd->add_option("--workers", rz_workers)->check(CLI::PositiveNumber);
    rz_cmd->add_option("--limit", rz_limit, "stop after this many zeros");
    rz_cmd->add_option("--resume", rz_resume, "checkpoint state file");
    rz_cmd->callback([&] {
        GPoset p = build_gposet(rz_r);
        std::vector<IntVec> zeros;
        std::mutex mu;
        std::atomic<long> found{0};
        bool certified = true;
        auto run = [&](int id) {
            ZeroSearchOptions opt;
            opt.sweep_z1 = rz_sweep;
            opt.orthosum = !rz_no_orthosum;
            opt.workers = rz_workers;
            opt.worker_id = id;
            if (!rz_resume.empty())
                opt.state_file = rz_workers == 1
                                     ? rz_resume
                                     : rz_resume + "." + std::to_string(id);
            opt.on_zero = [&](const IntVec& z) {
                std::lock_guard<std::mutex> lk(mu);
                zeros.push_back(z);
                return rz_limit == 0 || ++found < rz_limit;
            };
            ZeroSearchResult res = find_r_graphic_zeros(p, rz_n, rz_k, opt);
            if (!res.certified) {
                std::lock_guard<std::mutex> lk(mu);
                certified = false;
            }
        };
        if (rz_workers == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (int i = 0; i < rz_workers; i++) pool.emplace_back(run, i);
            for (auto& th : pool) th.join();
        }
        std::sort(zeros.begin(), zeros.end());
        zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
        ordered_json out = {
            {"status", zeros.empty() ? (certified ? "bound_certified" : "stopped")
                                     : "zero_found"},
            {"r", rz_r},
            {"k", rz_k},
            {"n", rz_n},
            {"zeros", json::array()}};
        for (const IntVec& z : zeros) out["zeros"].push_back(jvec(z));
        std::cout << out.dump() << "\n";
        exit_code = zeros.empty() ? 0 : 2;
    });

    // ---- newton ----
    auto* new_cmd = app.add_subcommand("newton", "sigma/h/b parameter machinery");
    new_cmd->require_subcommand(1);

    auto* ne_cmd = new_cmd->add_subcommand("expand", "complement-clique invariant expansion");
    int ne_k = 3;
    std::string ne_format = "text";
    ne_cmd->add_option("--k", ne_k)->required()->check(CLI::Range(2, 12));
    ne_cmd->add_option("--format", ne_format)->check(CLI::IsMember({"text", "json"}));
    ne_cmd->callback([&] {
        KbarExpansion ex = kbar_expansion(ne_k);
        if (ne_format == "json") {
            ordered_json out = {{"k", ex.k}, {"constant", ex.constant.str()}};
            out["sigma_terms"] = json::array();
            for (auto& [ev, c] : ex.sigma_terms)
                out["sigma_terms"].push_back(
                    {{"e", ev.first}, {"v", ev.second}, {"coeff", c.str()}});
            out["h_terms"] = json::array();
            for (auto& [fw, c] : ex.h_terms)
                out["h_terms"].push_back(
                    {{"f", fw.first}, {"w", fw.second}, {"coeff", c.str()}});
            std::cout << out.dump() << "\n";
            return;
        }
        std::cout << "I(kbar_" << ex.k << ") = (" << ex.constant.str() << ")";
        for (auto& [ev, c] : ex.sigma_terms)
            std::cout << " + (" << c.str() << ")*sigma_" << ev.first << "^" << ev.second;
        std::cout << "\n  = (" << ex.constant.str() << ")";
        for (auto& [fw, c] : ex.h_terms)
            std::cout << " + (" << c.str() << ")*h_" << fw.first << "^" << fw.second;
        std::cout << "\n";
    });

    auto* ns_cmd = new_cmd->add_subcommand("syzygy", "verify sigma identities over a poset");
    int ns_r = 6;
    std::string ns_file;
    ns_cmd->add_option("--r", ns_r, "check over all graphs of E(r)");
    ns_cmd->add_option("--file", ns_file, "expression file (defaults to the bundled list)");
    ns_cmd->callback([&] {
        std::string path = ns_file.empty()
                               ? std::string(INVRING_DATA_DIR) + "/syzygies.txt"
                               : ns_file;
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("cannot open " + path);
        auto exprs = load_sigma_expressions(in);
        GPoset p = build_gposet(ns_r);
        std::vector<SyzygyReport> reps = syzygy_check(exprs, p);
        bool pass = true;
        ordered_json detail = json::array();
        for (size_t i = 0; i < reps.size(); i++) {
            pass = pass && reps[i].pass;
            detail.push_back({{"expression", i},
                              {"pass", reps[i].pass},
                              {"witnesses", reps[i].witnesses}});
        }
        ordered_json out = {{"pass", pass},
                            {"expressions", exprs.size()},
                            {"poset", ns_r},
                            {"results", detail}};
        std::cout << out.dump() << "\n";
        exit_code = pass ? 0 : 2;
    });

    auto* nc_cmd = new_cmd->add_subcommand("convert", "sigma/h/b tables for one host");
    GraphInput nc_graph;
    int nc_n = 0, nc_maxv = 0;
    nc_graph.attach(nc_cmd);
    nc_cmd->add_option("--n", nc_n, "ambient vertex count")->required();
    nc_cmd->add_option("--max-v", nc_maxv, "largest connected-vertex class (default n)");
    nc_cmd->callback([&] {
        Graph h = nc_graph.load();
        int vmax = nc_maxv > 0 ? nc_maxv : nc_n;
        ordered_json rows = json::array();
        for (int v = 2; v <= vmax; v++)
            for (int e = (v + 1) / 2; e <= v * (v - 1) / 2; e++) {
                if (omega(e) > v) continue;
                rows.push_back({{"e", e},
                                {"v", v},
                                {"sigma", jint(sigma_eval(h, e, v))},
                                {"b", jint(b_eval(h, nc_n, e, v))},
                                {"h", jint(h_eval(h, nc_n, e, v))}});
            }
        std::cout << rows.dump() << "\n";
    });

    // ---- local ----
    auto* loc_cmd = app.add_subcommand("local", "pinned-invariant tensors");
    loc_cmd->require_subcommand(1);

    auto* lc_cmd = loc_cmd->add_subcommand("check", "consistency of a parameter tensor");
    GraphInput lc_graph;
    std::string lc_tensor;
    int lc_n = 0, lc_depth = 2, lc_degree = 3;
    long lc_budget = 1000000;
    lc_graph.attach(lc_cmd);
    lc_cmd->add_option("--tensor", lc_tensor, "tensor JSON file instead of a graph");
    lc_cmd->add_option("--n", lc_n, "ambient vertex count (with a graph input)");
    lc_cmd->add_option("--depth", lc_depth, "extraction depth (with a graph input)");
    lc_cmd->add_option("--degree-bound", lc_degree);
    lc_cmd->add_option("--budget", lc_budget, "completion search node budget");
    lc_cmd->callback([&] {
        LocalParamTensor t;
        if (!lc_tensor.empty()) {
            t = load_tensor(lc_tensor);
        } else {
            if (lc_n <= 0) throw CLI::ValidationError("--n is required with a graph input");
            t = extract_tensor(lc_graph.load(), lc_n,
                               build_local_posets({1, lc_degree, false}), lc_depth);
        }
        CheckResult c = tensor_consistency_check(t, lc_budget);
        CheckResult f = finitely_generated_check(t);
        ordered_json out = {{"consistency", status_name(c.status)},
                            {"connected_family", status_name(f.status)},
                            {"violation", c.pass() ? f.violation : c.violation}};
        std::cout << out.dump() << "\n";
        exit_code = c.pass() && f.pass() ? 0 : 2;
    });

    auto* lr_cmd = loc_cmd->add_subcommand("reconstruct", "rebuild the adjacency from a tensor");
    GraphInput lr_graph;
    std::string lr_tensor;
    int lr_n = 0, lr_degree = 3;
    lr_graph.attach(lr_cmd);
    lr_cmd->add_option("--tensor", lr_tensor, "tensor JSON file instead of a graph");
    lr_cmd->add_option("--n", lr_n, "ambient vertex count (with a graph input)");
    lr_cmd->add_option("--degree-bound", lr_degree);
    lr_cmd->callback([&] {
        LocalParamTensor t;
        if (!lr_tensor.empty()) {
            t = load_tensor(lr_tensor);
        } else {
            if (lr_n <= 0) throw CLI::ValidationError("--n is required with a graph input");
            t = extract_tensor(lr_graph.load(), lr_n,
                               build_local_posets({1, lr_degree, false}), 2);
        }
        ReconstructResult r = reconstruct_restricted(t);
        ordered_json out = {{"ok", r.ok}};
        if (r.ok) {
            json edges = json::array();
            for (auto& [u, v] : r.graph.edges) edges.push_back({u, v});
            out["edges"] = edges;
            out["graph6"] = r.graph.to_graph6(t.n);
        } else {
            out["witness"] = r.witness;
        }
        std::cout << out.dump() << "\n";
        exit_code = r.ok ? 0 : 2;
    });

    // ---- count ----
    auto* count_cmd = app.add_subcommand("count", "isomorphism classes on n vertices");
    int cn = 0;
    count_cmd->add_option("--n", cn)->required()->check(CLI::NonNegativeNumber);
    count_cmd->callback([&] { std::cout << count_graphs(cn).get_str() << "\n"; });

    // ---- charpoly ----
    auto* cp_cmd = app.add_subcommand("charpoly", "characteristic polynomial from invariants");
    GraphInput cp_graph;
    int cp_n = 0;
    cp_graph.attach(cp_cmd);
    cp_cmd->add_option("--n", cp_n, "ambient vertex count")->required();
    cp_cmd->callback([&] {
        std::vector<Int> c = charpoly_via_invariants(cp_graph.load(), cp_n);
        for (size_t i = 0; i < c.size(); i++)
            std::cout << (i ? " " : "") << c[i].get_str();
        std::cout << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
