#include "annwb/fieldmat.hpp"

#include "annwb/errors.hpp"

namespace annwb {

FMat fmat_hcat(const FMat& x, const FMat& y) {
    if (x.rows != y.rows) throw InternalError("fmat_hcat: row mismatch");
    FMat m(x.rows, x.cols + y.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int c = 0; c < x.cols; ++c) m.at(r, c) = x.at(r, c);
        for (int c = 0; c < y.cols; ++c) m.at(r, x.cols + c) = y.at(r, c);
    }
    return m;
}

FMat fmat_mul(const BaseField& F, const FMat& x, const FMat& y) {
    if (x.cols != y.rows) throw InternalError("fmat_mul: shape mismatch");
    FMat m(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < y.cols; ++c) {
            Rat s(0);
            for (int k = 0; k < x.cols; ++k) s = F.add(s, F.mul(x.at(r, k), y.at(k, c)));
            m.at(r, c) = s;
        }
    return m;
}

std::vector<int> fmat_rref(const BaseField& F, FMat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(row, c));
        Rat inv = F.inv(m.at(row, col));
        for (int c = 0; c < m.cols; ++c) m.at(row, c) = F.mul(m.at(row, c), inv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat f = m.at(r, col);
            for (int c = 0; c < m.cols; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(f, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int fmat_rank(const BaseField& F, FMat m) { return (int)fmat_rref(F, m).size(); }

FMat fmat_nullspace(const BaseField& F, const FMat& m) {
    FMat r = m;
    std::vector<int> pivots = fmat_rref(F, r);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FMat ns(m.cols, (int)free_cols.size());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        ns.at(fc, (int)k) = Rat(1);
        for (size_t prow = 0; prow < pivots.size(); ++prow)
            ns.at(pivots[prow], (int)k) = F.neg(r.at((int)prow, fc));
    }
    return ns;
}

bool fmat_in_colspace(const BaseField& F, const FMat& A, const std::vector<Rat>& b) {
    FMat bb(A.rows, 1);
    for (int r = 0; r < A.rows; ++r) bb.at(r, 0) = b[r];
    return fmat_rank(F, A) == fmat_rank(F, fmat_hcat(A, bb));
}

bool fmat_solve(const BaseField& F, const FMat& A, const std::vector<Rat>& b,
                std::vector<Rat>& x_out) {
    FMat bb(A.rows, 1);
    for (int r = 0; r < A.rows; ++r) bb.at(r, 0) = b[r];
    FMat aug = fmat_hcat(A, bb);
    std::vector<int> pivots = fmat_rref(F, aug);
    for (int c : pivots)
        if (c == A.cols) return false; // inconsistent
    x_out.assign(A.cols, Rat(0));
    for (size_t prow = 0; prow < pivots.size(); ++prow)
        x_out[pivots[prow]] = aug.at((int)prow, A.cols);
    return true;
}

} // namespace annwb
