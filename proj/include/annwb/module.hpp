#ifndef ANNWB_MODULE_HPP
#define ANNWB_MODULE_HPP

#include <optional>
#include <vector>

#include "annwb/modgb.hpp"
#include "annwb/spcsubset.hpp"
#include "annwb/xint.hpp"

namespace annwb {

// Finitely generated module presented as coker(rel : R^s -> R^rank).
struct FgModule {
    Ring ring;
    int rank = 0;
    PMat rel; // rank rows, one column per relation
    std::optional<std::vector<int>> degs; // generator degrees when graded

    bool graded() const { return degs.has_value(); }
};

FgModule free_module(const Ring& r, int rank, std::optional<std::vector<int>> degs = std::nullopt);
FgModule coker_module(const Ring& r, PMat rel, std::optional<std::vector<int>> degs = std::nullopt);
FgModule cyclic_module(const Ideal& I); // R/I, generator in degree 0
FgModule zero_module(const Ring& r);

// Validates matrix shape, entry reduction, homogeneity of relation columns.
void validate_module(const FgModule& m);

bool module_is_zero(const FgModule& m);
std::string module_to_string(const FgModule& m); // coker R^rank <- [[...]]

// Direct sum.
FgModule module_sum(const FgModule& a, const FgModule& b);

// Subquotient (num + denom)/denom of R^amb_rank presented on the columns of
// `num`; `embed` sends its generators to the ambient vectors.
struct Subquotient {
    FgModule mod;
    PMat embed;
};
Subquotient make_subquotient(const Ring& r, int amb_rank, const PMat& num, const PMat& denom,
                             const std::optional<std::vector<int>>& amb_degs = std::nullopt);

// H = ker(psi : P -> Q) / (im chi + relations of P); psi, chi act on generators.
Subquotient homology_at(const FgModule& P, const FgModule& Q, const PMat& psi, const PMat& chi);

struct FreeResolution {
    FgModule module;
    std::vector<PMat> d;                    // d[k] : F_{k+1} -> F_k, d[0] = relations
    std::vector<int> ranks;                 // ranks of F_0..F_L
    std::vector<std::vector<int>> gen_degs; // per step when graded
    int length() const { return (int)d.size(); }
};

FreeResolution resolve(const FgModule& m, int length);

FgModule ext_module(int i, const FgModule& M, const FgModule& N);

Ideal annihilator(const FgModule& m);
std::pair<Ideal, SpcSubset> annihilator_and_support(const FgModule& m);

XInt grade(const Ideal& a, const FgModule& m);      // finite or +inf
XInt local_depth(const FgModule& m, const PrimeIdeal& p);
bool mcm_test(const FgModule& m, const PrimeIdeal& p);

// Graded pieces: dim_k M_d; requires graded data.
int hilbert_function(const FgModule& m, int d);

// Monomials of weighted degree d not divisible by any quotient lead monomial.
std::vector<Exps> standard_monomials(const Ring& r, int d);

// Map existence utilities used by isomorphism certificates.
FgModule quotient_by_image(const FgModule& target, const PMat& image_cols); // coker of map into target
bool map_well_defined(const FgModule& P, const FgModule& Q, const PMat& phi);
bool map_is_injective(const FgModule& P, const FgModule& Q, const PMat& phi);
bool map_is_surjective(const FgModule& Q, const PMat& phi);

// Minimal generating columns (graded pruning; always drops zero columns).
PMat minimize_generators(const Ring& r, const PMat& cols, bool graded);

std::string module_hash_key(const FgModule& m);

} // namespace annwb

#endif
