// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Usage: acceptance [sessions-dir]

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "annwb/io.hpp"
#include "annwb/runner.hpp"

using namespace annwb;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << "CRITERION " << number << " [" << label << "]: " << (ok ? "PASS" : "FAIL")
              << " (" << ms << " ms)" << (detail.empty() ? "" : " " + detail) << "\n";
    if (!ok) ++g_failures;
}

Ring qq(std::vector<std::string> vars) {
    return make_poly_ring(BaseField(), vars, MonoOrder::grevlex((int)vars.size()),
                          std::vector<int>((int)vars.size(), 1));
}

Ideal I(const Ring& r, std::initializer_list<const char*> gens) {
    std::vector<Poly> gs;
    for (const char* g : gens) gs.push_back(parse_poly(r, g));
    return make_ideal(r, gs);
}

Complex two_term(const Ring& r, const char* f) {
    PMat d(1, 1);
    d.at(0, 0) = parse_poly(r, f);
    int fd = 0;
    poly_is_homogeneous(d.at(0, 0), *r->weights, &fd);
    return make_complex(r, -1,
                        {free_module(r, 1, std::vector<int>{fd}),
                         free_module(r, 1, std::vector<int>{0})},
                        {d});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GradedWindow accept_window() {
    GradedWindow win;
    win.d_lo = -5;
    win.d_hi = 2;
    win.h_lo = 0;
    win.h_hi = 3;
    return win;
}

// the fixed poset family of criterion 1
std::vector<std::pair<std::string, PosetPtr>> poset_family() {
    return {
        {"chain2", make_poset({"p", "q"}, {{0, 1}})},
        {"chain3", make_poset({"p", "q", "r"}, {{0, 1}, {1, 2}})},
        {"antichain2", make_poset({"p", "q"}, {})},
        {"diamond", make_poset({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})},
        // 5-element N-poset: an N with a tail
        {"n5", make_poset({"a", "b", "c", "d", "e"}, {{0, 2}, {1, 2}, {1, 3}, {3, 4}})},
    };
}

bool criterion1(std::string& detail) {
    for (const auto& [name, P] : poset_family()) {
        RoundtripReport rep = roundtrip_verify(P, 0, 2);
        if (!rep.ok()) {
            detail = name + ": " + (rep.discrepancies.empty() ? "count mismatch"
                                                              : rep.discrepancies.front());
            return false;
        }
    }
    return true;
}

bool criterion2(std::string& detail) {
    Ring r2 = qq({"x", "y"});
    Ring r3 = qq({"x", "y", "z"});
    struct Case {
        Ideal a;
        FgModule m;
        const char* label;
        int expect; // -1 = unpinned, compare the two routes only
    };
    auto free1 = [&](const Ring& r) { return free_module(r, 1); };
    std::vector<Case> cases;
    // over QQ[x,y]
    cases.push_back({I(r2, {"x", "y"}), free1(r2), "grade(m, R) = 2", 2});
    cases.push_back({I(r2, {"x"}), cyclic_module(I(r2, {"x"})), "grade(x, R/x) = 0", 0});
    cases.push_back({I(r2, {"x"}), free1(r2), "grade(x, R)", 1});
    cases.push_back({I(r2, {"x", "y"}), cyclic_module(I(r2, {"x"})), "grade(m, R/x)", 1});
    cases.push_back({I(r2, {"x", "y"}), cyclic_module(I(r2, {"x^2"})), "grade(m, R/x^2)", 1});
    cases.push_back({I(r2, {"x", "y"}), cyclic_module(I(r2, {"x*y"})), "grade(m, R/xy)", 1});
    cases.push_back({I(r2, {"x", "y"}),
                     module_sum(cyclic_module(I(r2, {"x"})), free1(r2)), "grade(m, R/x + R)", 1});
    cases.push_back({I(r2, {"y"}), cyclic_module(I(r2, {"x"})), "grade(y, R/x)", 1});
    // over QQ[x,y,z]
    cases.push_back({I(r3, {"x", "y", "z"}), free1(r3), "grade(m3, R) = 3", 3});
    cases.push_back({I(r3, {"x", "y"}), free1(r3), "grade((x,y), R)", 2});
    cases.push_back({I(r3, {"x", "y", "z"}), cyclic_module(I(r3, {"x"})), "grade(m3, R/x)", 2});
    cases.push_back({I(r3, {"x", "z"}), cyclic_module(I(r3, {"x*z"})), "grade((x,z), R/xz)", 1});
    cases.push_back(
        {I(r3, {"x", "y", "z"}),
         module_sum(cyclic_module(I(r3, {"x"})), cyclic_module(I(r3, {"x", "y"}))),
         "grade(m3, R/x + R/(x,y))", 1});
    for (const auto& c : cases) {
        XInt g = grade(c.a, c.m);
        // independent route: hyper-Ext bound of the resolved complex
        int len = std::max(ring_dimension(c.m.ring), 0) + 1;
        Complex cx = module_free_complex(c.m, 0, len);
        auto b = lc_vanishing_bound(spc_closed(c.a), cx);
        if (!b) {
            detail = std::string(c.label) + ": complex route inconclusive";
            return false;
        }
        if (!(g == *b)) {
            detail = std::string(c.label) + ": grade " + g.to_string() + " vs bound " +
                     b->to_string();
            return false;
        }
        if (c.expect >= 0 && g != XInt(c.expect)) {
            detail = std::string(c.label) + ": expected " + std::to_string(c.expect) + " got " +
                     g.to_string();
            return false;
        }
    }
    return true;
}

bool criterion3(std::string& detail) {
    Ring r = qq({"x", "y"});
    PrimeIdeal pm = make_prime(I(r, {"x", "y"}));
    PrimeIdeal px = make_prime(I(r, {"x"}));

    // Remark 1(1): exact shift identities on 5 module/shift combinations
    struct ShiftCase {
        Complex x;
        int n;
    };
    std::vector<ShiftCase> shifts = {
        {two_term(r, "x"), 1},
        {two_term(r, "x"), -2},
        {module_one_term(free_module(r, 1), 0), 3},
        {koszul_complex(r, {parse_poly(r, "x"), parse_poly(r, "y")}), -1},
        {two_term(r, "x*y"), 2},
    };
    for (const auto& sc : shifts) {
        XInt d0 = complex_depth_at_prime(sc.x, pm);
        XInt dn = complex_depth_at_prime(shift(sc.x, sc.n), pm);
        if (!(dn == d0 - sc.n)) {
            detail = "shift identity failed";
            return false;
        }
    }

    // Remark 1(2) on truncation-series triangles X_{i+1} -> X_i -> H^{s_i}[-s_i]
    auto check_triangle = [&](const Complex& A, const Complex& B, const Complex& C,
                              const PrimeIdeal& p) {
        XInt da = complex_depth_at_prime(A, p);
        XInt db = complex_depth_at_prime(B, p);
        XInt dc = complex_depth_at_prime(C, p);
        bool ok = da >= std::min(db, dc + 1) && db >= std::min(da, dc) &&
                  dc >= std::min(db, da - 1);
        return ok;
    };
    {
        PMat d0(1, 1), d1(1, 1);
        d0.at(0, 0) = parse_poly(r, "0");
        d1.at(0, 0) = parse_poly(r, "x");
        Complex x = make_complex(
            r, 0, {free_module(r, 1), free_module(r, 1), free_module(r, 1)}, {d0, d1});
        TruncationSeries ts = truncation_series(x);
        for (size_t k = 0; k + 1 < ts.stages.size(); ++k) {
            const Complex& B = ts.stages[k].x;
            const Complex& A = ts.stages[k + 1].x;
            Complex C = module_one_term(ts.stages[k].head, ts.stages[k].s);
            for (const auto& p : {pm, px})
                if (!check_triangle(A, B, C, p)) {
                    detail = "truncation triangle inequality failed";
                    return false;
                }
        }
    }
    // Remark 1(2) on Koszul-tower triangles X_{i-1} --y--> X_{i-1} -> X_i
    {
        Complex x = two_term(r, "x");
        KoszulTower tower = tensor_koszul(x, {parse_poly(r, "y"), parse_poly(r, "x + y")});
        for (size_t k = 1; k < tower.stages.size(); ++k) {
            const Complex& A = tower.stages[k - 1];
            const Complex& C = tower.stages[k];
            for (const auto& p : {pm, px})
                if (!check_triangle(A, A, C, p)) {
                    detail = "Koszul tower triangle inequality failed";
                    return false;
                }
        }
    }
    return true;
}

bool criterion4(std::string& detail) {
    Ring r = qq({"x", "y"});
    PrimeIdeal pm = make_prime(I(r, {"x", "y"}));
    PrimeIdeal px = make_prime(I(r, {"x"}));
    struct Case {
        Complex x;
        std::vector<const char*> ys;
        PrimeIdeal q;
    };
    std::vector<Case> cases = {
        {module_one_term(free_module(r, 1), 0), {"x"}, pm},
        {module_one_term(free_module(r, 1), 0), {"x", "y"}, pm},
        {two_term(r, "x"), {"y"}, pm},
        {two_term(r, "x"), {"x"}, px},
        {koszul_complex(r, {parse_poly(r, "x")}), {"y", "x + y"}, pm},
        {two_term(r, "x*y"), {"x + y"}, pm},
    };
    for (const auto& c : cases) {
        std::vector<Poly> ys;
        for (const char* y : c.ys) ys.push_back(parse_poly(r, y));
        KoszulTower tower = tensor_koszul(c.x, ys);
        XInt before = complex_depth_at_prime(tower.stages.front(), c.q);
        XInt after = complex_depth_at_prime(tower.stages.back(), c.q);
        if (!(after >= before - (int)ys.size())) {
            detail = "depth drop exceeded s";
            return false;
        }
    }
    return true;
}

bool criterion5(std::string& detail) {
    Ring r = qq({"x", "y"});
    PrimeIdeal pm = make_prime(I(r, {"x", "y"}));
    struct Case {
        SpcSubset w;
        Complex x;
        int n;
    };
    std::vector<Case> cases = {
        {spc_closed(I(r, {"x", "y"})), module_one_term(free_module(r, 1), 0), 2},
        {spc_closed(I(r, {"x", "y"})), two_term(r, "x"), 1},
        {spc_closed(I(r, {"x"})), module_one_term(free_module(r, 1), 0), 1},
        {spc_closed(I(r, {"x", "y"})), koszul_complex(r, {parse_poly(r, "x"), parse_poly(r, "y")}),
         0},
        {spc_closed(I(r, {"x", "y"})), shift(two_term(r, "x"), -1), 2},
        {spc_closed(I(r, {"y"})), two_term(r, "x"), 1},
    };
    for (const auto& c : cases) {
        // m in W holds for all sampled subsets here
        auto bound = lc_vanishing_bound(c.w, c.x);
        if (!bound || !(*bound >= XInt(c.n))) {
            detail = "case does not satisfy the hypothesis";
            return false;
        }
        XInt depth = complex_depth_at_prime(c.x, pm);
        if (!(depth >= XInt(c.n))) {
            detail = "Lemma 15(1) inequality failed";
            return false;
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    Ring r = qq({"x", "y"});
    GradedWindow win = accept_window();
    Complex x = two_term(r, "x");
    SpcSubset vm = spc_closed(I(r, {"x", "y"}));
    SpcSubset vx = spc_closed(I(r, {"x"}));
    PrimeIdeal pm = make_prime(I(r, {"x", "y"}));
    PrimeIdeal px = make_prime(I(r, {"x"}));
    PrimeIdeal p0 = make_prime(zero_ideal(r));

    struct Case {
        const char* label;
        SpcSubset Y, Z;
        int n;
        PrimePairList pairs;
        bool expect_c1;
        bool expect_found;
        const char* expect_b; // nullptr = any
    };
    PrimePairList plZZ{{{pm, px}, {pm, p0}}, vm, vm};
    PrimePairList plYZ{{{pm, p0}}, vx, vm};
    std::vector<Case> cases = {
        {"Z=Y=V(m), n=1", vm, vm, 1, plZZ, true, true, "<1>"},
        {"Z=Y=V(m), n=2", vm, vm, 2, plZZ, false, false, nullptr},
        {"Z=V(m), Y=V(x), n=2", vx, vm, 2, plYZ, true, true, "<x>"},
    };
    for (const auto& c : cases) {
        Condition1Result c1 = condition1_check(x, c.n, c.pairs);
        if (c1.holds != c.expect_c1) {
            detail = std::string(c.label) + ": condition 1 surprise";
            return false;
        }
        SearchOptions opt;
        opt.budget = 32;
        SearchResult sr = annihilator_search(x, c.Y, c.Z, c.n, win, opt);
        if (sr.found != c.expect_found) {
            detail = std::string(c.label) + ": search surprise";
            return false;
        }
        if (sr.found && c.expect_b &&
            ideal_gens_to_string(r, sr.b.gens) != std::string(c.expect_b)) {
            detail = std::string(c.label) + ": wrong annihilator " +
                     ideal_gens_to_string(r, sr.b.gens);
            return false;
        }
        // soundness: a found b and a condition-1 violation never coexist
        if (sr.found && !c1.holds) {
            detail = std::string(c.label) + ": found b despite a condition-1 violation";
            return false;
        }
        // direct witness for the failing case: Cech class 1/y in H^1 degree -1
        if (!c.expect_c1) {
            Condition2Verdict v2 = condition2_verify(x, c.Y, c.Z, c.n, I(r, {"x^2", "y^2"}), win);
            if (v2.kind != Condition2Verdict::FailsLegII || v2.ann.witness_i != 1 ||
                v2.ann.witness_d != -1) {
                detail = std::string(c.label) + ": expected the 1/y witness in H^1 degree -1";
                return false;
            }
        }
    }
    return true;
}

bool criterion7(std::string& detail) {
    Ring r = qq({"x", "y"});
    GradedWindow win = accept_window();
    Complex x = module_one_term(free_module(r, 1), 0);
    SpcSubset vm = spc_closed(I(r, {"x", "y"}));
    LcTable h2 = graded_local_cohomology(vm, x, 2, win);
    for (const auto& p : h2.pieces) {
        int expect = std::max(0, -p.d - 1);
        if (!p.stable || p.dim != expect) {
            detail = "H^2 piece at d=" + std::to_string(p.d) + " expected " +
                     std::to_string(expect) + " got " + std::to_string(p.dim);
            return false;
        }
    }
    LcTable h1 = graded_local_cohomology(vm, x, 1, win);
    for (const auto& p : h1.pieces) {
        if (!p.stable || p.dim != 0) {
            detail = "H^1 should vanish identically";
            return false;
        }
    }
    return true;
}

bool criterion8(std::string& detail) {
    Ring r = qq({"x"});
    Complex kx = two_term(r, "x");
    Complex kx2 = two_term(r, "x^2");
    auto h = null_homotopy_mult(kx, parse_poly(r, "x"));
    if (!h || !verify_homotopy(kx, parse_poly(r, "x"), *h)) {
        detail = "x should be null-homotopic on (R --x--> R)";
        return false;
    }
    if (null_homotopy_mult(kx2, parse_poly(r, "x"))) {
        detail = "x must not be null-homotopic on (R --x^2--> R)";
        return false;
    }
    auto h2 = null_homotopy_mult(kx2, parse_poly(r, "x^2"));
    if (!h2 || !verify_homotopy(kx2, parse_poly(r, "x^2"), *h2)) {
        detail = "x^2 witness failed";
        return false;
    }
    return true;
}

bool criterion9(std::string& detail) {
    Ring r = qq({"x", "y"});
    GradedWindow win = accept_window();
    SpcSubset whole = spc_closed(zero_ideal(r));
    SpcSubset empty = spc_closed(unit_ideal(r));
    SpcSubset vx = spc_closed(I(r, {"x"}));
    SpcSubset vm = spc_closed(I(r, {"x", "y"}));
    PrimeIdeal px = make_prime(I(r, {"x"}));
    PrimeIdeal pm = make_prime(I(r, {"x", "y"}));
    PrimeIdeal p0 = make_prime(zero_ideal(r));

    auto mk_filt = [&](int lo, std::vector<SpcSubset> lv) {
        RingFiltration phi;
        phi.ring = r;
        phi.lo = lo;
        phi.hi = lo + (int)lv.size() - 1;
        phi.levels = std::move(lv);
        validate_ring_filtration(phi);
        return phi;
    };

    // standard t-structure characterization: X in A(D^{<k}) iff sup X < k
    std::vector<Complex> xs = {
        two_term(r, "x"),
        shift(two_term(r, "x"), 1),
        shift(module_one_term(free_module(r, 1), 0), -2),
        koszul_complex(r, {parse_poly(r, "x"), parse_poly(r, "y")}),
        shift(two_term(r, "x*y"), 3),
    };
    for (int k = -2; k <= 3; ++k) {
        RingFiltration dk = mk_filt(k - 1, {whole, empty});
        for (const auto& x : xs) {
            auto [sup, inf] = sup_inf(x);
            bool expect = sup < XInt(k);
            if (aisle_membership(x, dk).member != expect) {
                detail = "standard aisle characterization failed at k=" + std::to_string(k);
                return false;
            }
        }
    }

    // psi round trips: 3 filtrations x 3 primes x range [-2, 2]
    std::vector<RingFiltration> filts = {
        mk_filt(-1, {whole, empty}),
        mk_filt(-1, {whole, vx, empty}),
        mk_filt(0, {whole, vm, empty}),
    };
    for (const auto& phi : filts) {
        PsiReport rep = psi_roundtrip_check(phi, {px, pm, p0}, -2, 2);
        if (!rep.ok()) {
            detail = "psi mismatch: " + rep.mismatches.front();
            return false;
        }
    }

    // lemma 19: certificate on the R/x example, rejection of a violator
    RingFiltration good = mk_filt(0, {vx, empty});
    good.sample_primes = {px, pm};
    Lemma19Verdict v = lemma19_check(good, two_term(r, "x"), 0, win);
    if (v.kind != Lemma19Verdict::Certified || !v.certificate ||
        !ideal_equal(*v.certificate, I(r, {"x"}))) {
        detail = "lemma 19 certificate missing on the R/x example";
        return false;
    }
    RingFiltration bad = mk_filt(0, {vm, vm});
    bad.sample_primes = {px, pm};
    Lemma19Verdict vb = lemma19_check(bad, module_one_term(free_module(r, 1), 0), 2, win);
    if (vb.kind != Lemma19Verdict::PreconditionFailed) {
        detail = "weak-Cousin violation was not rejected";
        return false;
    }
    return true;
}

std::string g_sessions_dir = "sessions";

bool criterion10(std::string& detail) {
    for (const char* name : {"basic.awb", "filtrations.awb", "faltings.awb"}) {
        std::string path = g_sessions_dir + "/" + name;
        std::string text = read_file(path);
        Session s1 = parse_session(text);
        RunResult r1 = run_session(s1);
        RunResult r2 = run_session(s1);
        if (r1.report != r2.report) {
            detail = std::string(name) + ": reports differ across runs";
            return false;
        }
        if (r1.exit_code != 0) {
            detail = std::string(name) + ": session failed with exit " +
                     std::to_string(r1.exit_code);
            return false;
        }
        Session s2 = parse_session(pretty_print(s1));
        if (!sessions_equal(s1, s2)) {
            detail = std::string(name) + ": pretty-print/re-parse mismatch";
            return false;
        }
        RunResult r3 = run_session(s2);
        if (r3.report != r1.report) {
            detail = std::string(name) + ": reparsed session report differs";
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_sessions_dir = argv[1];
    criterion(1, "sp-filtration bijections, exhaustive", criterion1);
    criterion(2, "grade sensitivity", criterion2);
    criterion(3, "depth calculus", criterion3);
    criterion(4, "Koszul depth drop", criterion4);
    criterion(5, "vanishing forces depth", criterion5);
    criterion(6, "annihilator theorem coherence", criterion6);
    criterion(7, "Cech pinning", criterion7);
    criterion(8, "null-homotopy solver", criterion8);
    criterion(9, "aisle sampling", criterion9);
    criterion(10, "determinism and round-trip", criterion10);
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
