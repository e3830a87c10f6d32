#include "annwb/pmat.hpp"

#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

PMat pmat_identity(const Ring& R, int n) {
    PMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = poly_const(R->field, 1, R->arity());
    return m;
}

PMat pmat_zero(int rows, int cols) { return PMat(rows, cols); }

PMat pmat_from_cols(int rows, const std::vector<VecPoly>& cols) {
    PMat m(rows, (int)cols.size());
    for (int c = 0; c < m.cols; ++c)
        for (int r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
    return m;
}

PMat pmat_hcat(const PMat& a, const PMat& b) {
    if (a.rows != b.rows) throw InternalError("pmat_hcat: row mismatch");
    PMat m(a.rows, a.cols + b.cols);
    for (int r = 0; r < a.rows; ++r) {
        for (int c = 0; c < a.cols; ++c) m.at(r, c) = a.at(r, c);
        for (int c = 0; c < b.cols; ++c) m.at(r, a.cols + c) = b.at(r, c);
    }
    return m;
}

PMat pmat_transpose(const PMat& a) {
    PMat m(a.cols, a.rows);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < a.cols; ++c) m.at(c, r) = a.at(r, c);
    return m;
}

PMat pmat_mul(const Ring& R, const PMat& a, const PMat& b) {
    if (a.cols != b.rows) throw InternalError("pmat_mul: shape mismatch");
    PMat m(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int c = 0; c < b.cols; ++c) {
            Poly s;
            for (int k = 0; k < a.cols; ++k)
                s = poly_add(R->field, R->order, s,
                             poly_mul(R->field, R->order, a.at(r, k), b.at(k, c)));
            m.at(r, c) = ring_reduce(R, s);
        }
    return m;
}

PMat pmat_add(const Ring& R, const PMat& a, const PMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw InternalError("pmat_add: shape mismatch");
    PMat m(a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i)
        m.e[i] = ring_reduce(R, poly_add(R->field, R->order, a.e[i], b.e[i]));
    return m;
}

PMat pmat_sub(const Ring& R, const PMat& a, const PMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw InternalError("pmat_sub: shape mismatch");
    PMat m(a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i)
        m.e[i] = ring_reduce(R, poly_sub(R->field, R->order, a.e[i], b.e[i]));
    return m;
}

PMat pmat_scale(const Ring& R, const Poly& c, const PMat& a) {
    PMat m(a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i)
        m.e[i] = ring_reduce(R, poly_mul(R->field, R->order, c, a.e[i]));
    return m;
}

PMat pmat_reduce(const Ring& R, const PMat& a) {
    PMat m(a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = ring_reduce(R, a.e[i]);
    return m;
}

bool pmat_eq(const PMat& a, const PMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!poly_eq(a.e[i], b.e[i])) return false;
    return true;
}

VecPoly vp_zero(int n) { return VecPoly(n); }

bool vp_is_zero(const VecPoly& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

VecPoly vp_add(const Ring& R, const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = poly_add(R->field, R->order, a[i], b[i]);
    return r;
}

VecPoly vp_sub(const Ring& R, const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = poly_sub(R->field, R->order, a[i], b[i]);
    return r;
}

VecPoly vp_scale(const Ring& R, const Poly& c, const VecPoly& a) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = ring_reduce(R, poly_mul(R->field, R->order, c, a[i]));
    return r;
}

VecPoly vp_reduce(const Ring& R, const VecPoly& a) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = ring_reduce(R, a[i]);
    return r;
}

VecPoly pmat_apply(const Ring& R, const PMat& m, const VecPoly& v) {
    if (m.cols != (int)v.size()) throw InternalError("pmat_apply: shape mismatch");
    VecPoly r(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        Poly s;
        for (int c = 0; c < m.cols; ++c)
            s = poly_add(R->field, R->order, s, poly_mul(R->field, R->order, m.at(i, c), v[c]));
        r[i] = ring_reduce(R, s);
    }
    return r;
}

std::string pmat_to_string(const Ring& R, const PMat& m) {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < m.rows; ++r) {
        if (r) os << ", ";
        os << "[";
        for (int c = 0; c < m.cols; ++c) {
            if (c) os << ", ";
            os << poly_to_string(R, m.at(r, c));
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace annwb
