#ifndef ANNWB_SPFILT_HPP
#define ANNWB_SPFILT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "annwb/ideal.hpp"
#include "annwb/xint.hpp"

namespace annwb {

// Finite poset standing in for (a fragment of) Spec R under inclusion.
// Ring-backed posets take heights from the ring; abstract ones use longest
// chains. Upward-closed subsets play the specialization-closed role.
struct FinPoset {
    std::vector<std::string> names;
    std::vector<std::vector<bool>> leq; // leq[i][j]: element i <= j
    std::optional<std::vector<std::vector<int>>> ring_heights; // height(j/i) when i <= j

    int size() const { return (int)names.size(); }
    bool le(int i, int j) const { return leq[i][j]; }
    int height(int i, int j) const; // requires le(i, j)
    bool covers(int i, int j) const;
    std::vector<std::pair<int, int>> cover_pairs() const;
    bool upward_closed(uint64_t set) const;
    std::vector<uint64_t> upsets() const; // all, ascending as masks
    int index_of(const std::string& name) const;
};

using PosetPtr = std::shared_ptr<const FinPoset>;

PosetPtr make_poset(std::vector<std::string> names,
                    const std::vector<std::pair<int, int>>& relations); // i < j entries
// Order and saturation certified by the ring: inclusion order, heights from
// the dimension formula, covers = height one.
PosetPtr poset_from_primes(const std::vector<PrimeIdeal>& primes,
                           std::vector<std::string> names);

// phi with stable tails: phi(i) = level(lo) below, = level(hi) above.
struct SpFiltration {
    PosetPtr poset;
    int lo = 0, hi = 0;
    std::vector<uint64_t> levels;

    uint64_t level(int i) const {
        if (i < lo) return levels.front();
        if (i > hi) return levels.back();
        return levels[i - lo];
    }
    bool member(int elt, int i) const { return (level(i) >> elt) & 1; }
};

void validate_spfiltration(const SpFiltration& phi); // upward-closed, antitone

struct TFunction {
    PosetPtr poset;
    std::vector<XInt> values;
};

void validate_order_preserving(const TFunction& f);

TFunction F_map(const SpFiltration& phi);
// pre: all finite values of f lie in (lo, hi]; levels stored on [lo, hi]
SpFiltration Phi_map(const TFunction& f, int lo, int hi);

struct CousinViolation {
    int p, q, i;
};
std::optional<CousinViolation> weak_cousin_check(const SpFiltration& phi);

struct TFunctionViolation {
    int p, q;
    std::string reason;
};
enum class TCheckMode { Full, Saturated };
std::optional<TFunctionViolation> t_function_check(const TFunction& f, TCheckMode mode);

// Exhaustive families over the window convention: filtration levels live on
// [lo-1, hi+1]; order-preserving maps take finite values in [lo, hi+1].
std::vector<SpFiltration> enumerate_sp_filtrations(const PosetPtr& poset, int lo, int hi);
std::vector<TFunction> enumerate_order_preserving(const PosetPtr& poset, int lo, int hi);

struct RoundtripReport {
    long filtration_count = 0;
    long map_count = 0;
    std::vector<std::string> discrepancies;
    bool ok() const { return discrepancies.empty() && filtration_count == map_count; }
};

// Prop 16 round-trips, Prop 17 mode agreement, Prop 18 equivalence, checked
// exhaustively over the enumerated families.
RoundtripReport roundtrip_verify(const PosetPtr& poset, int lo, int hi);

bool spfiltration_equal(const SpFiltration& a, const SpFiltration& b);
bool tfunction_equal(const TFunction& a, const TFunction& b);

} // namespace annwb

#endif
