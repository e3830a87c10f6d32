#include "annwb/tstruct.hpp"

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

void validate_ring_filtration(const RingFiltration& phi) {
    if (phi.levels.empty() || phi.hi - phi.lo + 1 != (int)phi.levels.size())
        throw SemanticError("ring filtration window does not match its levels");
    for (const auto& w : phi.levels) {
        require_same_ring(w.ring, phi.ring, "ring filtration level");
        if (w.localized_at)
            throw SemanticError("ring filtration levels must be closed-type subsets");
    }
    for (size_t k = 0; k + 1 < phi.levels.size(); ++k)
        if (!spc_subset_of(phi.levels[k + 1], phi.levels[k]))
            throw SemanticError("ring filtration levels must be antitone");
}

RingFiltration shift_filtration(const RingFiltration& phi, int k) {
    RingFiltration out = phi;
    out.lo = phi.lo - k;
    out.hi = phi.hi - k;
    return out;
}

AisleResult aisle_membership(const Complex& x, const RingFiltration& phi) {
    require_same_ring(x.ring, phi.ring, "aisle_membership");
    validate_ring_filtration(phi);
    AisleResult res;
    for (int i = x.lo; i <= x.hi(); ++i) {
        FgModule h = cohomology(x, i).mod;
        if (module_is_zero(h)) continue;
        Ideal ann = annihilator(h);
        const SpcSubset& lvl = phi.level(i);
        // V(ann) subseteq V(def) iff def subseteq sqrt(ann)
        for (const auto& g : lvl.defining.gens) {
            if (!radical_member(ann, g)) {
                res.member = false;
                res.violating_degree = i;
                res.witness = poly_to_string(x.ring, g);
                return res;
            }
        }
        if (lvl.defining.gens.empty()) continue; // level is all of Spec
    }
    // levels with unit defining ideal (empty subsets) force H^i = 0 there
    for (int i = x.lo; i <= x.hi(); ++i) {
        const SpcSubset& lvl = phi.level(i);
        if (!spc_is_empty(lvl)) continue;
        FgModule h = cohomology(x, i).mod;
        if (!module_is_zero(h)) {
            res.member = false;
            res.violating_degree = i;
            res.witness = "level is empty but H^i(X) != 0";
            return res;
        }
    }
    res.member = true;
    return res;
}

PsiReport psi_roundtrip_check(const RingFiltration& phi, const std::vector<PrimeIdeal>& primes,
                              int range_lo, int range_hi) {
    validate_ring_filtration(phi);
    PsiReport rep;
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        const PrimeIdeal& p = primes[pi];
        FgModule rp = cyclic_module(p.ideal);
        for (int i = range_lo; i <= range_hi; ++i) {
            Complex x = module_one_term(rp, i); // (R/p)[-i]
            bool member = aisle_membership(x, phi).member;
            bool expect = spc_contains_prime(phi.level(i), p);
            ++rep.checked;
            if (member != expect)
                rep.mismatches.push_back("prime #" + std::to_string(pi) + " at i=" +
                                         std::to_string(i) + ": member=" +
                                         (member ? "true" : "false") + " but phi says " +
                                         (expect ? "true" : "false"));
        }
    }
    return rep;
}

SpFiltration restrict_to_primes(const RingFiltration& phi, const std::vector<PrimeIdeal>& primes,
                                std::vector<std::string> names) {
    PosetPtr poset = poset_from_primes(primes, std::move(names));
    SpFiltration f;
    f.poset = poset;
    f.lo = phi.lo;
    f.hi = phi.hi;
    for (int i = phi.lo; i <= phi.hi; ++i) {
        uint64_t mask = 0;
        for (size_t e = 0; e < primes.size(); ++e)
            if (spc_contains_prime(phi.level(i), primes[e])) mask |= (1ULL << e);
        f.levels.push_back(mask);
    }
    validate_spfiltration(f);
    return f;
}

Lemma19Verdict lemma19_check(const RingFiltration& phi, const Complex& x, int n,
                             const GradedWindow& win) {
    validate_ring_filtration(phi);
    Lemma19Verdict v;

    // precondition: weak Cousin over the supplied primes
    if (!phi.sample_primes.empty()) {
        std::vector<std::string> names;
        for (size_t i = 0; i < phi.sample_primes.size(); ++i)
            names.push_back("p" + std::to_string(i));
        SpFiltration f = restrict_to_primes(phi, phi.sample_primes, names);
        if (auto viol = weak_cousin_check(f)) {
            v.kind = Lemma19Verdict::PreconditionFailed;
            v.failed_level = viol->i;
            v.note = "weak Cousin fails at (" + f.poset->names[viol->p] + ", " +
                     f.poset->names[viol->q] + ", i=" + std::to_string(viol->i) + ")";
            return v;
        }
    }

    // premise: H^{<=i}_{phi(i)}(X) = 0 for all i < n; the constant lower tail
    // is covered by its strongest representative i = min(n-1, lo)
    for (int i = std::min(n - 1, phi.lo); i <= n - 1; ++i) {
        auto bound = lc_vanishing_bound(phi.level(i), x);
        if (!bound) {
            v.kind = Lemma19Verdict::Inconclusive;
            v.note = "vanishing bound inconclusive at level " + std::to_string(i);
            return v;
        }
        if (!(*bound > XInt(i))) {
            v.kind = Lemma19Verdict::PremiseFailed;
            v.failed_level = i;
            return v;
        }
    }

    const SpcSubset& zn = phi.level(n);

    // vacuous certificate: nothing to annihilate up to n
    auto bound_n = lc_vanishing_bound(zn, x);
    if (bound_n && *bound_n > XInt(n)) {
        v.kind = Lemma19Verdict::Certified;
        v.certificate = unit_ideal(phi.ring);
        v.note = "vacuous: H^{<=n}_{phi(n)}(X) = 0";
        return v;
    }

    // derived annihilator certificate: kills every H_Z(X) by null-homotopy
    bool has_cohomology = false;
    for (int i = x.lo; i <= x.hi(); ++i)
        if (!module_is_zero(cohomology(x, i).mod)) has_cohomology = true;
    if (has_cohomology && x.free_termed()) {
        Ideal ider = derived_annihilator_ideal(x);
        if (radical_contains(ider, zn.defining)) { // V(ider) subseteq phi(n)
            v.kind = Lemma19Verdict::Certified;
            v.certificate = ider;
            v.note = "derived annihilator acts null-homotopically on X";
            return v;
        }
    }

    // window-backed candidates
    if (x.free_termed() && x.ring->graded() && !spc_is_empty(zn) && !ideal_is_zero(zn.defining)) {
        std::vector<Ideal> cands;
        cands.push_back(zn.defining);
        cands.push_back(ideal_product(zn.defining, zn.defining));
        for (const auto& cand : cands) {
            if (!radical_contains(cand, zn.defining)) continue;
            AnnihilationVerdict av = annihilation_test(cand, zn, x, n + 1, win);
            if (av.kind == AnnihilationVerdict::HoldsCertified) {
                v.kind = Lemma19Verdict::Certified;
                v.certificate = cand;
                v.note = av.note;
                return v;
            }
            if (av.kind == AnnihilationVerdict::HoldsOnWindow) {
                v.kind = Lemma19Verdict::WindowOnly;
                v.certificate = cand;
                v.note = "annihilation verified on the window only";
                return v;
            }
        }
    }

    v.kind = Lemma19Verdict::Inconclusive;
    v.note = "no certificate found";
    return v;
}

} // namespace annwb
