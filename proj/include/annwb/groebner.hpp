#ifndef ANNWB_GROEBNER_HPP
#define ANNWB_GROEBNER_HPP

#include <vector>

#include "annwb/poly.hpp"

namespace annwb {

// Process-wide default for the S-pair/division step budget.
void set_default_gb_budget(long steps);
long default_gb_budget();

struct GBOptions {
    long step_budget = default_gb_budget();
};

// Full normal form of f against G (every term reduced). Reducer choice: first
// listed element whose lead monomial divides the current lead term.
Poly nf_full(const BaseField& F, const MonoOrder& ord, const Poly& f, const std::vector<Poly>& G,
             long* budget = nullptr);

// Buchberger with product and chain criteria, normal selection strategy.
// Returns the reduced Groebner basis: minimal, tail-reduced, monic, sorted
// ascending by lead monomial. Deterministic for fixed input.
std::vector<Poly> groebner(const BaseField& F, const MonoOrder& ord, std::vector<Poly> gens,
                           const GBOptions& opt = {});

// Inter-reduce an already-Groebner list into the reduced basis.
std::vector<Poly> reduce_basis(const BaseField& F, const MonoOrder& ord, std::vector<Poly> G,
                               long* budget = nullptr);

} // namespace annwb

#endif
