#ifndef ANNWB_SPCSUBSET_HPP
#define ANNWB_SPCSUBSET_HPP

#include <optional>

#include "annwb/ideal.hpp"

namespace annwb {

// Specialization-closed subset of Spec R, closed type: W = V(defining).
// All comparisons are radical-insensitive. A localized subset W_P keeps the
// defining ideal of W plus the localization prime; membership of p (as pR_P)
// then means p in W and p subseteq P.
struct SpcSubset {
    Ring ring;
    Ideal defining;
    std::optional<PrimeIdeal> localized_at;
};

SpcSubset spc_closed(const Ideal& a);
SpcSubset spc_union(const SpcSubset& a, const SpcSubset& b);
SpcSubset spc_localize(const SpcSubset& w, const PrimeIdeal& P);
// W/I over the quotient-ring presentation R/I; I must be proper.
SpcSubset spc_quotient(const SpcSubset& w, const Ideal& I);

bool spc_is_empty(const SpcSubset& w);
bool spc_is_everything(const SpcSubset& w);
bool spc_contains_prime(const SpcSubset& w, const PrimeIdeal& p);
// V(a.defining) subseteq V(b.defining)
bool spc_subset_of(const SpcSubset& a, const SpcSubset& b);
bool spc_equal(const SpcSubset& a, const SpcSubset& b);

} // namespace annwb

#endif
