#ifndef ANNWB_COMPLEX_HPP
#define ANNWB_COMPLEX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "annwb/module.hpp"

namespace annwb {

// Bounded cochain complex. Terms are presented modules; a complex built from
// koszul/tensor/session input has free terms (empty relations), truncation
// stages may carry presented terms.
struct Complex {
    Ring ring;
    int lo = 0;
    std::vector<FgModule> terms; // term(lo + k) = terms[k]; empty = zero complex
    std::vector<PMat> diff;      // diff[k] : term(lo+k) -> term(lo+k+1)

    bool is_zero_complex() const { return terms.empty(); }
    int hi() const { return lo + (int)terms.size() - 1; }
    bool in_range(int i) const { return !terms.empty() && i >= lo && i <= hi(); }
    const FgModule& term(int i) const;
    PMat diff_at(int i) const; // zero-shaped outside range
    bool free_termed() const;
};

Complex make_complex(const Ring& r, int lo, std::vector<FgModule> terms, std::vector<PMat> diff);
void validate_complex(const Complex& x); // shapes, d^2 = 0, well-definedness

// One presented term in a chosen degree.
Complex module_one_term(const FgModule& m, int degree);
// Free resolution of m of the given length, placed so H^degree = m. Over a
// ring of infinite global dimension the cutoff term carries junk cohomology
// at degree - length; consumers must stay inside the window above it.
Complex module_free_complex(const FgModule& m, int degree, int length);

Subquotient cohomology(const Complex& x, int i);
std::pair<XInt, XInt> sup_inf(const Complex& x); // (-inf, +inf) for the zero object

Complex shift(const Complex& x, int n); // X[n], differentials scaled by (-1)^n

Complex koszul_complex(const Ring& r, const std::vector<Poly>& ys);
Complex tensor_complexes(const Complex& x, const Complex& y); // free terms required

struct ChainMap {
    int lo = 0;
    std::vector<PMat> f; // f[k] : source term (lo+k) -> target term (lo+k)
};

// Iterated cones X (x) K(y_1) (x) ... (x) K(y_s) with the triangle data
// X_{i-1} --y_i--> X_{i-1} -> X_i exposed stage by stage.
struct KoszulTower {
    std::vector<Complex> stages; // stages[0] = X, stages[i] = X_{i-1} (x) K(y_i)
    std::vector<Poly> multipliers;
    std::vector<ChainMap> inclusions; // X_{i-1} -> X_i as the K^0 block
};

KoszulTower tensor_koszul(const Complex& x, const std::vector<Poly>& ys);

// Homotopy witness h^i : term(i) -> term(i-1) with f*id = d h + h d.
struct Homotopy {
    int lo = 0;               // h[k] : term(lo+k) -> term(lo+k-1)
    std::vector<PMat> h;
};
std::optional<Homotopy> null_homotopy_mult(const Complex& x, const Poly& f);
bool verify_homotopy(const Complex& x, const Poly& f, const Homotopy& h);

// Ideal I with V(I) = supp H(X), every generator null-homotopic on X.
Ideal derived_annihilator_ideal(const Complex& x);

Ideal cohomology_annihilator(const Complex& x); // ann H(X) = cap_i ann H^i(X)

// Remark-4 style soft truncation tower.
struct TruncationStage {
    Complex x;          // X_i
    int s;              // sup X_i
    FgModule head;      // H^{s_i}(X_i) = H^{s_i}(X)
    ChainMap incl_next; // X_{i+1} -> X_i (empty for the last stage)
};
struct TruncationSeries {
    std::vector<TruncationStage> stages;
    bool tail_exact_verified = false; // X_{n+1} has no cohomology
};
TruncationSeries truncation_series(const Complex& x);

XInt complex_depth_at_prime(const Complex& x, const PrimeIdeal& p);

// Matrix of H^j(f) : H^j(src) -> H^j(dst) on the subquotient presentations.
PMat induced_map_on_cohomology(const ChainMap& f, const Complex& src, const Complex& dst, int j,
                               Subquotient* hsrc_out = nullptr, Subquotient* hdst_out = nullptr);

// Certified isomorphism check for an induced cohomology map.
bool chain_map_iso_on_cohomology(const ChainMap& f, const Complex& src, const Complex& dst, int j);

// Hom total complex Hom(F(M0, length), X); terms presented. Used for
// hyper-Ext scans (depth, local-cohomology vanishing bounds).
Complex hom_total_complex(const FgModule& m0, int length, const Complex& x);

std::string complex_to_string(const Complex& x);

} // namespace annwb

#endif
