#ifndef ANNWB_LOCALCOH_HPP
#define ANNWB_LOCALCOH_HPP

#include <map>
#include <string>

#include "annwb/complex.hpp"

namespace annwb {

// Finite computation frame for graded local cohomology.
struct GradedWindow {
    int d_lo = -6, d_hi = 2;  // internal degrees
    int h_lo = 0, h_hi = 4;   // cohomological degrees
    int t_max = 12;           // stabilization exponent ceiling
};

// Gamma_W(M) as a submodule presentation with its inclusion map.
Subquotient torsion_submodule(const SpcSubset& w, const FgModule& m);

// Least i with H^i_Z(X) != 0 (exact, via the hyper-Ext characterization);
// +inf when the support misses Z; nullopt when the scan window is exhausted
// (reported as inconclusive, never silently wrong).
std::optional<XInt> lc_vanishing_bound(const SpcSubset& z, const FgModule& m);
std::optional<XInt> lc_vanishing_bound(const SpcSubset& z, const Complex& x);

// One graded piece report.
struct LcPiece {
    int d = 0;
    int dim = 0;
    bool stable = false;
    int level = 0; // certification base exponent
    std::vector<std::string> basis;
};

struct LcTable {
    int i = 0;
    std::vector<LcPiece> pieces; // one per degree in the window
};

// Degreewise H^i_Z(X) over the window via the finite-level Cech complexes
// (dual Koszul on t-th powers). Graded free-termed X required.
LcTable graded_local_cohomology(const SpcSubset& z, const Complex& x, int i,
                                const GradedWindow& win);

struct AnnihilationVerdict {
    enum Kind { HoldsCertified, HoldsOnWindow, Fails, Inconclusive } kind = Inconclusive;
    int witness_i = 0;
    int witness_d = 0;
    std::string witness_class;
    std::string witness_gen;
    std::string note;
    bool holds() const { return kind == HoldsCertified || kind == HoldsOnWindow; }
};

// Does every generator of b annihilate every computed graded piece of
// H^i_Z(X) for i < n across the window?  Certified when the generators act
// null-homotopically on X itself.
AnnihilationVerdict annihilation_test(const Ideal& b, const SpcSubset& z, const Complex& x, int n,
                                      const GradedWindow& win);

// Shared Cech machinery (exposed for the faltings search).
class CechFrame {
  public:
    CechFrame(const SpcSubset& z, const Complex& x, const GradedWindow& win);

    // stable piece data; nullopt when no stabilization within t_max
    struct StablePiece {
        int dim;
        int level;
        std::vector<std::string> basis;
    };
    std::optional<StablePiece> stable_piece(int i, int d);

    // Is class-killing by g certified for every stable class of H^i at degree d?
    // Returns: 1 kills, 0 fails (witness_out / witness_degree_out set to the
    // surviving class and the degree it lives in), -1 inconclusive.
    int kills_classes(const Poly& g, int i, int d, std::string* witness_out,
                      int* witness_degree_out = nullptr);

    const GradedWindow& window() const { return win_; }

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    GradedWindow win_;
};

} // namespace annwb

#endif
