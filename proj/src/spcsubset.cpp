#include "annwb/spcsubset.hpp"

#include "annwb/errors.hpp"

namespace annwb {

SpcSubset spc_closed(const Ideal& a) { return SpcSubset{a.ring, a, std::nullopt}; }

SpcSubset spc_union(const SpcSubset& a, const SpcSubset& b) {
    require_same_ring(a.ring, b.ring, "spc_union");
    if (a.localized_at || b.localized_at)
        throw SemanticError("union of localized subsets is not supported");
    return spc_closed(ideal_intersection(a.defining, b.defining));
}

SpcSubset spc_localize(const SpcSubset& w, const PrimeIdeal& P) {
    require_same_ring(w.ring, P.ideal.ring, "spc_localize");
    if (w.localized_at) throw SemanticError("double localization is not supported");
    SpcSubset s = w;
    s.localized_at = P;
    return s;
}

SpcSubset spc_quotient(const SpcSubset& w, const Ideal& I) {
    require_same_ring(w.ring, I.ring, "spc_quotient");
    if (w.localized_at) throw SemanticError("quotient of a localized subset is not supported");
    if (ideal_is_unit(I)) throw SemanticError("W/I requires a proper ideal");
    Ring q = make_quotient_ring(w.ring, I.gens);
    std::vector<Poly> gens;
    for (const auto& g : w.defining.gens) {
        Poly r = ring_reduce(q, g);
        if (!r.is_zero()) gens.push_back(r);
    }
    return spc_closed(make_ideal(q, gens));
}

bool spc_is_empty(const SpcSubset& w) {
    if (w.localized_at) return !spc_contains_prime({w.ring, w.defining, std::nullopt},
                                                   *w.localized_at);
    return ideal_is_unit(w.defining);
}

bool spc_is_everything(const SpcSubset& w) {
    if (w.localized_at) return false;
    return ideal_is_zero(w.defining);
}

bool spc_contains_prime(const SpcSubset& w, const PrimeIdeal& p) {
    // p in V(a) iff a subseteq p
    bool in_closed = ideal_contains(p.ideal, w.defining);
    if (!w.localized_at) return in_closed;
    return in_closed && ideal_contains(w.localized_at->ideal, p.ideal);
}

bool spc_subset_of(const SpcSubset& a, const SpcSubset& b) {
    if (a.localized_at || b.localized_at)
        throw SemanticError("subset comparison of localized subsets is not supported");
    // V(A) subseteq V(B) iff B subseteq sqrt(A)
    return radical_contains(a.defining, b.defining);
}

bool spc_equal(const SpcSubset& a, const SpcSubset& b) {
    return spc_subset_of(a, b) && spc_subset_of(b, a);
}

} // namespace annwb
