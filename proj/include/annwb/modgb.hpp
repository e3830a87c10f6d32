#ifndef ANNWB_MODGB_HPP
#define ANNWB_MODGB_HPP

#include <optional>

#include "annwb/pmat.hpp"

namespace annwb {

// Groebner engine over free modules R^n with a leading block of components.
// All computations run over the ambient polynomial ring with the quotient
// relations adjoined componentwise, so callers work directly over R.

// Syzygy matrix: columns generate Syz_R(columns of V) in R^{V.cols}.
PMat syzygy_matrix(const Ring& R, const PMat& V);

// Generators of {v in R^p : psi * v in im(target_rel)} for psi : R^p -> R^q.
// target_rel may be empty (0 columns) for a free target.
PMat kernel_preimage(const Ring& R, const PMat& psi, const PMat& target_rel);

// Precomputed basis of a submodule of R^rank for repeated queries.
class SubmoduleGB {
  public:
    SubmoduleGB(const Ring& R, const PMat& gens);

    bool contains(const VecPoly& v) const;
    // Coefficients expressing v over the generator columns (modulo the
    // quotient relations), or nullopt when v is not in the submodule.
    std::optional<VecPoly> express(const VecPoly& v) const;

    const Ring& ring() const { return ring_; }
    int rank() const { return rank_; }

  private:
    Ring ring_;
    int rank_;
    int n_tagged_;
    struct Ext; // extended GB data
    std::shared_ptr<const Ext> ext_;
};

bool submodule_contains(const Ring& R, const PMat& N, const VecPoly& v);

} // namespace annwb

#endif
