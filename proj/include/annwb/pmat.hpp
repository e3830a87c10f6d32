#ifndef ANNWB_PMAT_HPP
#define ANNWB_PMAT_HPP

#include <vector>

#include "annwb/ring.hpp"

namespace annwb {

using VecPoly = std::vector<Poly>;

// Dense polynomial matrix, row-major. Columns are the module-theoretic unit:
// a q x p matrix presents a map R^p -> R^q on generators.
struct PMat {
    int rows = 0, cols = 0;
    std::vector<Poly> e;

    PMat() = default;
    PMat(int r, int c) : rows(r), cols(c), e((size_t)r * c) {}

    Poly& at(int r, int c) { return e[(size_t)r * cols + c]; }
    const Poly& at(int r, int c) const { return e[(size_t)r * cols + c]; }

    VecPoly col(int c) const {
        VecPoly v(rows);
        for (int r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
    void set_col(int c, const VecPoly& v) {
        for (int r = 0; r < rows; ++r) at(r, c) = v[r];
    }
    bool is_zero() const {
        for (const auto& p : e)
            if (!p.is_zero()) return false;
        return true;
    }
};

PMat pmat_identity(const Ring& R, int n);
PMat pmat_zero(int rows, int cols);
PMat pmat_from_cols(int rows, const std::vector<VecPoly>& cols);
PMat pmat_hcat(const PMat& a, const PMat& b);
PMat pmat_transpose(const PMat& a);
PMat pmat_mul(const Ring& R, const PMat& a, const PMat& b); // entries ring-reduced
PMat pmat_add(const Ring& R, const PMat& a, const PMat& b);
PMat pmat_sub(const Ring& R, const PMat& a, const PMat& b);
PMat pmat_scale(const Ring& R, const Poly& c, const PMat& a);
PMat pmat_reduce(const Ring& R, const PMat& a);
bool pmat_eq(const PMat& a, const PMat& b);

VecPoly vp_zero(int n);
bool vp_is_zero(const VecPoly& v);
VecPoly vp_add(const Ring& R, const VecPoly& a, const VecPoly& b);
VecPoly vp_sub(const Ring& R, const VecPoly& a, const VecPoly& b);
VecPoly vp_scale(const Ring& R, const Poly& c, const VecPoly& a);
VecPoly vp_reduce(const Ring& R, const VecPoly& a);
VecPoly pmat_apply(const Ring& R, const PMat& m, const VecPoly& v);

std::string pmat_to_string(const Ring& R, const PMat& m); // [[row], [row]]

} // namespace annwb

#endif
