#ifndef ANNWB_FIELDMAT_HPP
#define ANNWB_FIELDMAT_HPP

#include <vector>

#include "annwb/field.hpp"

namespace annwb {

// Dense matrix over the coefficient field; exact arithmetic throughout.
struct FMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    FMat() = default;
    FMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Rat(0)) {}

    Rat& at(int r, int c) { return a[(size_t)r * cols + c]; }
    const Rat& at(int r, int c) const { return a[(size_t)r * cols + c]; }
};

FMat fmat_hcat(const FMat& x, const FMat& y);
FMat fmat_mul(const BaseField& F, const FMat& x, const FMat& y);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> fmat_rref(const BaseField& F, FMat& m);
int fmat_rank(const BaseField& F, FMat m);

// Columns spanning the kernel of m.
FMat fmat_nullspace(const BaseField& F, const FMat& m);

// Does b lie in the column space of A?
bool fmat_in_colspace(const BaseField& F, const FMat& A, const std::vector<Rat>& b);

// One solution of A x = b, if any.
bool fmat_solve(const BaseField& F, const FMat& A, const std::vector<Rat>& b,
                std::vector<Rat>& x_out);

} // namespace annwb

#endif
