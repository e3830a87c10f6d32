#include "annwb/faltings.hpp"

#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

void validate_pair_list(const PrimePairList& pl) {
    for (size_t k = 0; k < pl.pairs.size(); ++k) {
        const auto& pr = pl.pairs[k];
        require_same_ring(pr.p.ideal.ring, pl.Y.ring, "pair list");
        if (!spc_contains_prime(pl.Z, pr.p))
            throw SemanticError("pair " + std::to_string(k) + ": p is not in Z");
        if (!ideal_contains(pr.p.ideal, pr.q.ideal))
            throw SemanticError("pair " + std::to_string(k) + ": q is not inside p");
        if (spc_contains_prime(pl.Y, pr.q))
            throw SemanticError("pair " + std::to_string(k) + ": q lies in Y");
    }
}

Condition1Result condition1_check(const Complex& x, int n, const PrimePairList& pairs) {
    validate_pair_list(pairs);
    Condition1Result res;
    for (size_t k = 0; k < pairs.pairs.size(); ++k) {
        const auto& pr = pairs.pairs[k];
        int h = height_between(pr.p, pr.q);
        XInt d = complex_depth_at_prime(x, pr.q);
        if (!(d + h >= XInt(n))) {
            res.holds = false;
            res.witness_index = (int)k;
            res.witness_height = h;
            res.witness_depth = d;
            return res;
        }
    }
    return res;
}

Condition2Verdict condition2_verify(const Complex& x, const SpcSubset& Y, const SpcSubset& Z,
                                    int n, const Ideal& b, const GradedWindow& win) {
    Condition2Verdict v;
    // leg (i): V(b) subseteq Y, i.e. defining(Y) subseteq sqrt(b)
    if (!radical_contains(b, Y.defining)) {
        v.kind = Condition2Verdict::FailsLegI;
        v.note = "V(b) is not contained in Y";
        return v;
    }
    // leg (ii)
    v.ann = annihilation_test(b, Z, x, n, win);
    switch (v.ann.kind) {
    case AnnihilationVerdict::HoldsCertified:
        v.kind = Condition2Verdict::Holds;
        break;
    case AnnihilationVerdict::HoldsOnWindow:
        v.kind = Condition2Verdict::HoldsWindow;
        break;
    case AnnihilationVerdict::Fails:
        v.kind = Condition2Verdict::FailsLegII;
        break;
    case AnnihilationVerdict::Inconclusive:
        v.kind = Condition2Verdict::Inconclusive;
        break;
    }
    return v;
}

ReductionTrace reduction_step(const Complex& x, const SpcSubset& Y) {
    require_same_ring(x.ring, Y.ring, "reduction_step");
    ReductionTrace red;
    red.I = derived_annihilator_ideal(x);
    red.J = ideal_saturation(red.I, Y.defining);
    if (!ideal_contains(red.J, red.I)) throw InternalError("reduction: I not inside J");
    // saturation stability doubles as the Gamma identity J/I = Gamma_{Y/I}(R/I)
    if (!ideal_contains(red.J, ideal_quotient(red.J, Y.defining)))
        throw InternalError("reduction: saturation not stable");
    red.trivial = ideal_is_unit(red.J);
    red.koszul_seq = display_basis(red.J);
    red.s = (int)red.koszul_seq.size();
    red.tower = tensor_koszul(x, red.koszul_seq);
    red.reduced = red.tower.stages.back();
    for (const auto& y : red.koszul_seq)
        red.transfer_quotients.push_back(ideal_quotient(red.I, y));
    // supp X' = V(J): radical equality of the cohomology annihilator with J
    Ideal annx = cohomology_annihilator(red.reduced);
    if (!radical_contains(annx, red.J) || !radical_contains(red.J, annx))
        throw InternalError("reduction: supp X' != V(J)");
    return red;
}

Ideal transfer_candidate(const ReductionTrace& red, const Ideal& c) {
    Ideal acc = c;
    for (const auto& q : red.transfer_quotients) acc = ideal_product(acc, q);
    return acc;
}

namespace {

struct SearchCtx {
    const SpcSubset& Y;
    const SpcSubset& Z;
    const GradedWindow& win;
    SearchOptions opt;
    int budget_left;
    std::vector<std::string> trace;

    void log(const std::string& s) { trace.push_back(s); }
};

bool has_cohomology(const Complex& x) {
    for (int i = x.lo; i <= x.hi(); ++i)
        if (!module_is_zero(cohomology(x, i).mod)) return true;
    return false;
}

std::optional<Ideal> search_rec(SearchCtx& ctx, const Complex& x, int n, int depth) {
    const Ring& ring = x.ring;
    if (!has_cohomology(x)) return unit_ideal(ring); // supp X empty

    auto bound = lc_vanishing_bound(ctx.Z, x);
    if (bound && *bound >= XInt(n)) return unit_ideal(ring); // nothing to annihilate

    if (depth > ctx.opt.max_depth || ctx.budget_left <= 0) return std::nullopt;

    ReductionTrace red = reduction_step(x, ctx.Y);
    {
        std::ostringstream os;
        os << "STEP " << depth << ": I=" << ideal_gens_to_string(ring, red.I.gens)
           << " J=" << ideal_gens_to_string(ring, red.J.gens) << " s=" << red.s;
        ctx.log(os.str());
    }

    // candidates for c with V(c) subseteq Y and c H^{<n-s}_Z(X') = 0
    std::vector<Ideal> cands;
    if (!has_cohomology(red.reduced)) {
        cands.push_back(unit_ideal(ring)); // trivial branch: X' vanishes
    } else {
        cands.push_back(red.J);
        cands.push_back(ctx.Y.defining);
        cands.push_back(ideal_sum(ctx.Y.defining, red.J));
    }
    for (const auto& c : cands) {
        if (ctx.budget_left-- <= 0) return std::nullopt;
        if (!radical_contains(c, ctx.Y.defining)) continue; // V(c) must sit inside Y
        bool c_ok = false;
        if (!has_cohomology(red.reduced)) {
            c_ok = true;
        } else {
            AnnihilationVerdict av = annihilation_test(c, ctx.Z, red.reduced, n - red.s, ctx.win);
            c_ok = av.kind == AnnihilationVerdict::HoldsCertified ||
                   av.kind == AnnihilationVerdict::HoldsOnWindow;
        }
        if (c_ok) return transfer_candidate(red, c);
    }

    // recursion through a strict support descent: b must kill the low H_Z of
    // X' (window evidence) and avoid sqrt(J)
    if (depth < ctx.opt.max_depth && has_cohomology(red.reduced) && ring->graded() &&
        red.reduced.free_termed()) {
        std::vector<Poly> pool;
        for (const auto& g : ctx.Z.defining.gens) pool.push_back(g);
        for (const auto& g : ctx.Y.defining.gens) pool.push_back(g);
        for (const auto& g : cohomology_annihilator(red.reduced).gens) pool.push_back(g);
        for (const auto& b_elt : pool) {
            if (ctx.budget_left <= 0) return std::nullopt;
            if (radical_member(red.J, b_elt)) continue; // no descent
            --ctx.budget_left;
            Ideal belt_ideal = make_ideal(ring, {b_elt});
            AnnihilationVerdict av =
                annihilation_test(belt_ideal, ctx.Z, red.reduced, n - red.s, ctx.win);
            if (!(av.kind == AnnihilationVerdict::HoldsCertified ||
                  av.kind == AnnihilationVerdict::HoldsOnWindow))
                continue;
            KoszulTower t2 = tensor_koszul(red.reduced, {b_elt});
            ctx.log("DESCEND " + std::to_string(depth) + ": b=" + poly_to_string(ring, b_elt));
            auto c2 = search_rec(ctx, t2.stages.back(), n - red.s - 1, depth + 1);
            if (c2) {
                // LES glue: c'' kills H^{<n-s-1}(X'') and b kills H^{<n-s}(X'),
                // so c'' kills H^{<n-s}(X')
                return transfer_candidate(red, *c2);
            }
        }
    }
    return std::nullopt;
}

} // namespace

SearchResult annihilator_search(const Complex& x, const SpcSubset& Y, const SpcSubset& Z, int n,
                                const GradedWindow& win, const SearchOptions& opt) {
    SearchResult res;
    SearchCtx ctx{Y, Z, win, opt, opt.budget, {}};
    auto b = search_rec(ctx, x, n, 0);
    res.trace = std::move(ctx.trace);
    if (!b) return res;
    res.final_verdict = condition2_verify(x, Y, Z, n, *b, win);
    if (res.final_verdict.holds()) {
        res.found = true;
        res.b = *b;
    }
    return res;
}

} // namespace annwb
