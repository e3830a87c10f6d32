#ifndef ANNWB_TSTRUCT_HPP
#define ANNWB_TSTRUCT_HPP

#include "annwb/localcoh.hpp"
#include "annwb/spfilt.hpp"

namespace annwb {

// sp-filtration of Spec R by closed-type subsets, with stable tails.
struct RingFiltration {
    Ring ring;
    int lo = 0, hi = 0;
    std::vector<SpcSubset> levels;
    std::vector<PrimeIdeal> sample_primes; // the Spec fragment used for cover checks

    const SpcSubset& level(int i) const {
        if (i < lo) return levels.front();
        if (i > hi) return levels.back();
        return levels[i - lo];
    }
};

void validate_ring_filtration(const RingFiltration& phi); // antitone by radical containment

RingFiltration shift_filtration(const RingFiltration& phi, int k); // phi[k](i) = phi(i+k)

struct AisleResult {
    bool member = false;
    int violating_degree = 0;
    std::string witness; // non-member direction: a generator of the level ideal
                         // missing from sqrt(ann H^i)
};

// X in A(phi): supp H^i(X) subseteq phi(i) for all i.
AisleResult aisle_membership(const Complex& x, const RingFiltration& phi);

struct PsiReport {
    int checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Psi(A(phi)) = phi on the sample: for each prime and i in [range_lo, range_hi],
// (R/p)[-i] in A(phi) iff p in phi(i).
PsiReport psi_roundtrip_check(const RingFiltration& phi, const std::vector<PrimeIdeal>& primes,
                              int range_lo, int range_hi);

struct Lemma19Verdict {
    enum Kind { Certified, WindowOnly, Inconclusive, PremiseFailed, PreconditionFailed } kind =
        Inconclusive;
    std::optional<Ideal> certificate;
    int failed_level = 0;
    std::string note;
};

// Premise: H^{<=i}_{phi(i)}(X) = 0 for all i < n; weak Cousin checked over the
// supplied primes. Searches for an ideal with V(I) subseteq phi(n) killing
// H^{<=n}_{phi(n)}(X); a Certified verdict is backed by a null-homotopy or by
// exact vanishing, WindowOnly by window evidence alone.
Lemma19Verdict lemma19_check(const RingFiltration& phi, const Complex& x, int n,
                             const GradedWindow& win);

// The filtration restricted to the sample primes as an abstract sp-filtration.
SpFiltration restrict_to_primes(const RingFiltration& phi, const std::vector<PrimeIdeal>& primes,
                                std::vector<std::string> names);

} // namespace annwb

#endif
