#include <doctest.h>

#include "annwb/io.hpp"
#include "annwb/spfilt.hpp"

using namespace annwb;

namespace {

PosetPtr chain2() { return make_poset({"p", "q"}, {{0, 1}}); }
PosetPtr chain3() { return make_poset({"p", "q", "r"}, {{0, 1}, {1, 2}}); }
PosetPtr antichain2() { return make_poset({"p", "q"}, {}); }
PosetPtr diamond() { return make_poset({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }
PosetPtr point() { return make_poset({"p"}, {}); }
PosetPtr empty_poset() { return make_poset({}, {}); }

SpFiltration filt(PosetPtr P, int lo, std::vector<uint64_t> levels) {
    SpFiltration phi;
    phi.poset = P;
    phi.lo = lo;
    phi.hi = lo + (int)levels.size() - 1;
    phi.levels = std::move(levels);
    validate_spfiltration(phi);
    return phi;
}

} // namespace

TEST_CASE("poset basics") {
    auto P = diamond();
    CHECK(P->covers(0, 1));
    CHECK_FALSE(P->covers(0, 3));
    CHECK(P->le(0, 3));
    CHECK(P->height(0, 3) == 2);
    CHECK(P->cover_pairs().size() == 4);
    CHECK(P->upsets().size() == 6);
    CHECK_THROWS_AS(make_poset({"a", "b"}, {{0, 1}, {1, 0}}), SemanticError);
}

TEST_CASE("F map") {
    auto P = chain2();
    // phi: {p,q} for i <= 0, {q} at 1, empty for i >= 2
    SpFiltration phi = filt(P, 0, {0b11, 0b10, 0});
    TFunction f = F_map(phi);
    CHECK(f.values[0] == XInt(1));
    CHECK(f.values[1] == XInt(2));

    SpFiltration whole = filt(P, 0, {0b11});
    TFunction finf = F_map(whole);
    CHECK(finf.values[0] == XInt::pos_inf());
    CHECK(finf.values[1] == XInt::pos_inf());

    SpFiltration none = filt(P, 0, {0});
    TFunction fneg = F_map(none);
    CHECK(fneg.values[0] == XInt::neg_inf());
}

TEST_CASE("Phi map and round trips") {
    auto P = chain2();
    TFunction f;
    f.poset = P;
    f.values = {XInt(1), XInt(2)};
    SpFiltration phi = Phi_map(f, 0, 2);
    CHECK(phi.level(0) == 0b11);
    CHECK(phi.level(1) == 0b10);
    CHECK(phi.level(2) == 0);
    CHECK(tfunction_equal(F_map(phi), f));

    // Phi(F(phi)) = phi on the three F examples
    for (auto levels : {std::vector<uint64_t>{0b11, 0b10, 0}, std::vector<uint64_t>{0b11},
                        std::vector<uint64_t>{0}}) {
        SpFiltration p0 = filt(P, 0, levels);
        CHECK(spfiltration_equal(Phi_map(F_map(p0), p0.lo, p0.hi), p0));
    }
    // window too narrow
    TFunction g;
    g.poset = P;
    g.values = {XInt(5), XInt(5)};
    CHECK_THROWS_AS(Phi_map(g, 0, 2), SemanticError);
}

TEST_CASE("weak cousin check") {
    auto P = chain2();
    // q sits in every level but p never enters: cover violated
    SpFiltration bad = filt(P, 0, {0b10, 0b10});
    auto v = weak_cousin_check(bad);
    REQUIRE(v.has_value());
    CHECK(v->p == 0);
    CHECK(v->q == 1);

    SpFiltration whole = filt(P, 0, {0b11});
    CHECK_FALSE(weak_cousin_check(whole).has_value());
    SpFiltration none = filt(P, 0, {0});
    CHECK_FALSE(weak_cousin_check(none).has_value());

    // Phi of the height function is weak Cousin (Prop 18 forward direction)
    TFunction height_fn;
    height_fn.poset = P;
    height_fn.values = {XInt(0), XInt(1)};
    CHECK_FALSE(weak_cousin_check(Phi_map(height_fn, -1, 2)).has_value());
}

TEST_CASE("t-function check") {
    auto P = chain2();
    TFunction constant;
    constant.poset = P;
    constant.values = {XInt(1), XInt(1)};
    CHECK_FALSE(t_function_check(constant, TCheckMode::Full).has_value());
    CHECK_FALSE(t_function_check(constant, TCheckMode::Saturated).has_value());

    TFunction height_fn;
    height_fn.poset = P;
    height_fn.values = {XInt(0), XInt(1)};
    CHECK_FALSE(t_function_check(height_fn, TCheckMode::Full).has_value());

    TFunction jump;
    jump.poset = P;
    jump.values = {XInt(0), XInt(2)};
    CHECK(t_function_check(jump, TCheckMode::Full).has_value());
    CHECK(t_function_check(jump, TCheckMode::Saturated).has_value());
}

TEST_CASE("enumeration counts") {
    // pinned by hand: the point with window [0,0] gives exactly the maps into
    // {-inf, 0, 1, +inf}
    CHECK(enumerate_sp_filtrations(point(), 0, 0).size() == 4);
    CHECK(enumerate_order_preserving(point(), 0, 0).size() == 4);
    // antichain: counts multiply
    CHECK(enumerate_sp_filtrations(antichain2(), 0, 0).size() == 16);
    // empty poset: exactly one filtration
    CHECK(enumerate_sp_filtrations(empty_poset(), 0, 0).size() == 1);
    // chain of 3, window [0,2]: C(8,3) weakly decreasing level sequences
    CHECK(enumerate_sp_filtrations(chain3(), 0, 2).size() == 56);
    CHECK(enumerate_order_preserving(chain3(), 0, 2).size() == 56);
    // guard
    auto big = make_poset({"a", "b", "c"}, {});
    CHECK_THROWS_AS(enumerate_sp_filtrations(big, 0, 10), ResourceLimitError);
}

TEST_CASE("roundtrip verification is clean on the standard family") {
    for (auto P : {chain2(), chain3(), antichain2(), diamond(), point(), empty_poset()}) {
        RoundtripReport rep = roundtrip_verify(P, 0, 1);
        CHECK(rep.ok());
    }
    RoundtripReport rep = roundtrip_verify(chain3(), 0, 2);
    CHECK(rep.ok());
    CHECK(rep.filtration_count == 56);
}

TEST_CASE("ring-backed poset uses ring heights") {
    Ring r = make_poly_ring(BaseField(), {"x", "y"}, MonoOrder::grevlex(2));
    auto I = [&](std::initializer_list<const char*> gens) {
        std::vector<Poly> gs;
        for (const char* g : gens) gs.push_back(parse_poly(r, g));
        return make_ideal(r, gs);
    };
    std::vector<PrimeIdeal> primes = {make_prime(zero_ideal(r)), make_prime(I({"x"})),
                                      make_prime(I({"x", "y"}))};
    PosetPtr P = poset_from_primes(primes, {"p0", "px", "pm"});
    CHECK(P->le(0, 1));
    CHECK(P->le(1, 2));
    CHECK(P->height(0, 2) == 2);
    CHECK(P->covers(0, 1));
    CHECK(P->covers(1, 2));
    CHECK_FALSE(P->covers(0, 2));
}
