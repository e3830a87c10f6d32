#include <doctest.h>

#include "annwb/complex.hpp"
#include "annwb/io.hpp"

using namespace annwb;

namespace {

Ring qq_xy() {
    return make_poly_ring(BaseField(), {"x", "y"}, MonoOrder::grevlex(2), std::vector<int>{1, 1});
}

Ring qq_x() {
    return make_poly_ring(BaseField(), {"x"}, MonoOrder::grevlex(1), std::vector<int>{1});
}

Ideal I(const Ring& r, std::initializer_list<const char*> gens) {
    std::vector<Poly> gs;
    for (const char* g : gens) gs.push_back(parse_poly(r, g));
    return make_ideal(r, gs);
}

// R --f--> R in degrees [-1, 0]
Complex two_term(const Ring& r, const char* f) {
    PMat d(1, 1);
    d.at(0, 0) = parse_poly(r, f);
    std::optional<std::vector<int>> src_deg;
    std::optional<std::vector<int>> dst_deg;
    if (r->graded()) {
        int fd = 0;
        if (poly_is_homogeneous(d.at(0, 0), *r->weights, &fd)) {
            src_deg = std::vector<int>{fd};
            dst_deg = std::vector<int>{0};
        }
    }
    return make_complex(r, -1, {free_module(r, 1, src_deg), free_module(r, 1, dst_deg)}, {d});
}

} // namespace

TEST_CASE("cohomology and bounds of basic complexes") {
    Ring r = qq_x();
    SUBCASE("R --x--> R") {
        Complex x = two_term(r, "x");
        FgModule h0 = cohomology(x, 0).mod;
        CHECK_FALSE(module_is_zero(h0));
        CHECK(ideal_equal(annihilator(h0), I(r, {"x"})));
        CHECK(module_is_zero(cohomology(x, -1).mod));
        auto [sup, inf] = sup_inf(x);
        CHECK(sup == XInt(0));
        CHECK(inf == XInt(0));
    }
    SUBCASE("single free module in degree 3") {
        Complex x = module_one_term(free_module(r, 1), 3);
        auto [sup, inf] = sup_inf(x);
        CHECK(sup == XInt(3));
        CHECK(inf == XInt(3));
    }
    SUBCASE("zero differential") {
        Complex x = two_term(r, "0");
        CHECK_FALSE(module_is_zero(cohomology(x, 0).mod));
        CHECK_FALSE(module_is_zero(cohomology(x, -1).mod));
        CHECK(ideal_is_zero(annihilator(cohomology(x, -1).mod)));
    }
    SUBCASE("zero complex bounds") {
        Complex z;
        z.ring = r;
        auto [sup, inf] = sup_inf(z);
        CHECK(sup == XInt::neg_inf());
        CHECK(inf == XInt::pos_inf());
    }
}

TEST_CASE("shift") {
    Ring r = qq_x();
    Complex x = two_term(r, "x");
    SUBCASE("shift by zero is identity") {
        Complex y = shift(x, 0);
        CHECK(y.lo == x.lo);
        CHECK(pmat_eq(y.diff[0], x.diff[0]));
    }
    SUBCASE("module placed by negative shift") {
        Complex m = module_one_term(cyclic_module(I(r, {"x"})), 0);
        Complex s = shift(m, -3);
        auto [sup, inf] = sup_inf(s);
        CHECK(sup == XInt(3));
        CHECK(inf == XInt(3));
    }
    SUBCASE("sup bookkeeping") {
        auto [sup0, inf0] = sup_inf(x);
        Complex y = shift(x, 2);
        auto [sup2, inf2] = sup_inf(y);
        CHECK(sup2 == sup0 - 2);
        CHECK(inf2 == inf0 - 2);
        validate_complex(y);
    }
}

TEST_CASE("koszul complexes") {
    SUBCASE("K(x) over QQ[x]") {
        Ring r = qq_x();
        Complex k = koszul_complex(r, {parse_poly(r, "x")});
        CHECK(k.lo == -1);
        CHECK(k.hi() == 0);
        CHECK(ideal_equal(annihilator(cohomology(k, 0).mod), I(r, {"x"})));
        CHECK(module_is_zero(cohomology(k, -1).mod));
    }
    SUBCASE("K(0) has free cohomology in both spots") {
        Ring r = qq_x();
        Complex k = koszul_complex(r, {parse_poly(r, "0")});
        CHECK_FALSE(module_is_zero(cohomology(k, 0).mod));
        CHECK_FALSE(module_is_zero(cohomology(k, -1).mod));
    }
    SUBCASE("K(x, y): ranks 1,2,1 and cohomology only at 0") {
        Ring r = qq_xy();
        Complex k = koszul_complex(r, {parse_poly(r, "x"), parse_poly(r, "y")});
        CHECK(k.term(-2).rank == 1);
        CHECK(k.term(-1).rank == 2);
        CHECK(k.term(0).rank == 1);
        CHECK(ideal_equal(annihilator(cohomology(k, 0).mod), I(r, {"x", "y"})));
        CHECK(module_is_zero(cohomology(k, -1).mod));
        CHECK(module_is_zero(cohomology(k, -2).mod));
    }
}

TEST_CASE("tensor") {
    Ring r = qq_xy();
    SUBCASE("unit of tensor") {
        Complex one = module_one_term(free_module(r, 1), 0);
        Complex k = koszul_complex(r, {parse_poly(r, "x")});
        Complex t = tensor_complexes(one, k);
        CHECK(t.lo == -1);
        CHECK(t.term(0).rank == 1);
        CHECK(poly_to_string(r, t.diff[0].at(0, 0)) == "x");
    }
    SUBCASE("iterated tensor matches direct Koszul cohomology") {
        Complex kxy = koszul_complex(r, {parse_poly(r, "x"), parse_poly(r, "y")});
        Complex kx = koszul_complex(r, {parse_poly(r, "x")});
        Complex ky = koszul_complex(r, {parse_poly(r, "y")});
        Complex t = tensor_complexes(kx, ky);
        for (int i = -2; i <= 0; ++i) {
            CHECK(module_is_zero(cohomology(t, i).mod) ==
                  module_is_zero(cohomology(kxy, i).mod));
        }
        CHECK(ideal_equal(annihilator(cohomology(t, 0).mod), I(r, {"x", "y"})));
    }
    SUBCASE("X = R/x presentation tensored with K(x)") {
        Complex x = two_term(r, "x"); // free presentation of R/x
        KoszulTower tower = tensor_koszul(x, {parse_poly(r, "x")});
        const Complex& t = tower.stages.back();
        FgModule h0 = cohomology(t, 0).mod;
        FgModule hm1 = cohomology(t, -1).mod;
        CHECK(ideal_equal(annihilator(h0), I(r, {"x"})));
        CHECK(ideal_equal(annihilator(hm1), I(r, {"x"})));
    }
    SUBCASE("top cohomology right-exactness keeps sup") {
        Complex x = two_term(r, "x");
        KoszulTower tower = tensor_koszul(x, {parse_poly(r, "y")});
        auto [sup, inf] = sup_inf(tower.stages.back());
        CHECK(sup == XInt(0)); // H^0(X)/yH^0(X) = R/(x,y) != 0
    }
    SUBCASE("inclusion chain maps commute with differentials") {
        Complex x = two_term(r, "x");
        KoszulTower tower = tensor_koszul(x, {parse_poly(r, "y"), parse_poly(r, "x + y")});
        for (size_t s = 0; s < tower.inclusions.size(); ++s) {
            const Complex& a = tower.stages[s];
            const Complex& b = tower.stages[s + 1];
            const ChainMap& f = tower.inclusions[s];
            for (int i = a.lo; i < a.hi(); ++i) {
                PMat lhs = pmat_mul(r, b.diff_at(i), f.f[i - f.lo]);
                PMat rhs = pmat_mul(r, f.f[i + 1 - f.lo], a.diff_at(i));
                CHECK(pmat_eq(lhs, rhs));
            }
        }
    }
}

TEST_CASE("null homotopy solver") {
    Ring r = qq_x();
    SUBCASE("x on (R --x--> R): homotopy exists") {
        Complex x = two_term(r, "x");
        auto h = null_homotopy_mult(x, parse_poly(r, "x"));
        REQUIRE(h.has_value());
        CHECK(verify_homotopy(x, parse_poly(r, "x"), *h));
    }
    SUBCASE("x on (R --x^2--> R): no homotopy") {
        Complex x = two_term(r, "x^2");
        CHECK_FALSE(null_homotopy_mult(x, parse_poly(r, "x")).has_value());
    }
    SUBCASE("multiplication by zero") {
        Complex x = two_term(r, "x^2");
        auto h = null_homotopy_mult(x, parse_poly(r, "0"));
        REQUIRE(h.has_value());
        CHECK(verify_homotopy(x, parse_poly(r, "0"), *h));
    }
    SUBCASE("x^2 on (R --x^2--> R): homotopy exists") {
        Complex x = two_term(r, "x^2");
        auto h = null_homotopy_mult(x, parse_poly(r, "x^2"));
        CHECK(h.has_value());
    }
}

TEST_CASE("derived annihilator ideal") {
    SUBCASE("module in degree 0: ann recovered") {
        Ring r = qq_x();
        Complex x = two_term(r, "x");
        Ideal i = derived_annihilator_ideal(x);
        CHECK(ideal_equal(i, I(r, {"x"})));
    }
    SUBCASE("(R --x^2--> R): I = (x^2)") {
        Ring r = qq_x();
        Complex x = two_term(r, "x^2");
        Ideal i = derived_annihilator_ideal(x);
        CHECK(ideal_equal(i, I(r, {"x^2"})));
        // radical equality with ann H(X)
        CHECK(radical_contains(i, cohomology_annihilator(x)));
        CHECK(radical_contains(cohomology_annihilator(x), i));
    }
    SUBCASE("two cohomology degrees over the dual numbers: power needed") {
        Ring amb = qq_x();
        Ring r = make_quotient_ring(amb, {parse_poly(amb, "x^2")});
        PMat d(1, 1);
        d.at(0, 0) = parse_poly(r, "x");
        Complex x = make_complex(
            r, -2, {free_module(r, 1), free_module(r, 1), free_module(r, 1)}, {d, d});
        // x kills all cohomology but is not null-homotopic
        CHECK_FALSE(null_homotopy_mult(x, parse_poly(r, "x")).has_value());
        Ideal i = derived_annihilator_ideal(x);
        // x^2 = 0 in R, so the ideal collapses to 0 with V(0) = supp X
        CHECK(ideal_is_zero(i));
        CHECK(radical_contains(i, cohomology_annihilator(x)));
    }
}

TEST_CASE("truncation series") {
    Ring r = qq_x();
    SUBCASE("module in degree 0: single stage") {
        Complex x = two_term(r, "x");
        TruncationSeries ts = truncation_series(x);
        REQUIRE(ts.stages.size() == 1);
        CHECK(ts.stages[0].s == 0);
        CHECK(ts.tail_exact_verified);
        CHECK(ideal_equal(annihilator(ts.stages[0].head), I(r, {"x"})));
    }
    SUBCASE("cohomology in degrees 0 and 2: two stages") {
        PMat d0(1, 1), d1(1, 1);
        d0.at(0, 0) = parse_poly(r, "0");
        d1.at(0, 0) = parse_poly(r, "x");
        Complex x = make_complex(
            r, 0, {free_module(r, 1), free_module(r, 1), free_module(r, 1)}, {d0, d1});
        TruncationSeries ts = truncation_series(x);
        REQUIRE(ts.stages.size() == 2);
        CHECK(ts.stages[0].s == 2);
        CHECK(ts.stages[1].s == 0);
        CHECK(ts.tail_exact_verified);
        // stage cohomology agreement below the cut
        const auto& stage0 = ts.stages[0];
        const Complex& x1 = ts.stages[1].x;
        for (int j = x1.lo; j <= x1.hi(); ++j) {
            if (j > ts.stages[1].s) continue;
            CHECK(chain_map_iso_on_cohomology(stage0.incl_next, x1, stage0.x, j));
        }
    }
    SUBCASE("Koszul complex has a single stage") {
        Ring rxy = qq_xy();
        Complex k = koszul_complex(rxy, {parse_poly(rxy, "x"), parse_poly(rxy, "y")});
        TruncationSeries ts = truncation_series(k);
        CHECK(ts.stages.size() == 1);
        CHECK(ts.stages[0].s == 0);
        CHECK(ts.tail_exact_verified);
    }
}

TEST_CASE("hom total complex is a complex") {
    Ring r = qq_xy();
    Complex x = two_term(r, "x");
    FgModule k = cyclic_module(I(r, {"x", "y"}));
    Complex hom = hom_total_complex(k, 3, x);
    validate_complex(hom);
}

TEST_CASE("complex depth at primes") {
    Ring r = qq_xy();
    PrimeIdeal mm = make_prime(I(r, {"x", "y"}));
    PrimeIdeal py = make_prime(I(r, {"y"}));
    SUBCASE("depth of R at the maximal ideal is 2") {
        Complex x = module_one_term(free_module(r, 1), 0);
        CHECK(complex_depth_at_prime(x, mm) == XInt(2));
    }
    SUBCASE("shift identity") {
        Complex x = two_term(r, "x"); // R/x, depth 1 at m
        CHECK(complex_depth_at_prime(x, mm) == XInt(1));
        CHECK(complex_depth_at_prime(shift(x, 1), mm) == XInt(0));
        CHECK(complex_depth_at_prime(shift(x, -2), mm) == XInt(3));
    }
    SUBCASE("vanishing localization gives +inf") {
        Complex x = two_term(r, "x");
        CHECK(complex_depth_at_prime(x, py) == XInt::pos_inf());
    }
    SUBCASE("module route agrees with complex route") {
        FgModule m = cyclic_module(I(r, {"x"}));
        CHECK(local_depth(m, mm) == complex_depth_at_prime(two_term(r, "x"), mm));
    }
}

TEST_CASE("truncation bounds match sup and inf") {
    Ring r = qq_x();
    PMat d0(1, 1), d1(1, 1);
    d0.at(0, 0) = parse_poly(r, "0");
    d1.at(0, 0) = parse_poly(r, "x");
    Complex x = make_complex(
        r, 0, {free_module(r, 1), free_module(r, 1), free_module(r, 1)}, {d0, d1});
    auto [sup, inf] = sup_inf(x);
    TruncationSeries ts = truncation_series(x);
    REQUIRE(!ts.stages.empty());
    CHECK(XInt(ts.stages.front().s) == sup);
    CHECK(XInt(ts.stages.back().s) == inf);
    for (size_t k = 0; k + 1 < ts.stages.size(); ++k)
        CHECK(ts.stages[k].s > ts.stages[k + 1].s);
}
