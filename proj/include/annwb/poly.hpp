#ifndef ANNWB_POLY_HPP
#define ANNWB_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "annwb/field.hpp"
#include "annwb/monomial.hpp"

namespace annwb {

struct Term {
    Rat c;
    Exps m;
};

// Sparse polynomial; terms strictly descending in the owning ring's order,
// coefficients nonzero and field-reduced.
struct Poly {
    std::vector<Term> t;

    bool is_zero() const { return t.empty(); }
    const Term& lead() const { return t.front(); }
    int arity() const { return t.empty() ? -1 : (int)t.front().m.size(); }
};

inline Poly poly_zero() { return Poly{}; }

inline Poly poly_const(const BaseField& F, const Rat& c, int arity) {
    Rat r = F.reduce(c);
    if (r == 0) return poly_zero();
    return Poly{{Term{r, mono_one(arity)}}};
}

inline Poly poly_var(int arity, int i) {
    Exps m = mono_one(arity);
    m[i] = 1;
    return Poly{{Term{Rat(1), m}}};
}

inline Poly poly_term(const BaseField& F, const Rat& c, Exps m) {
    Rat r = F.reduce(c);
    if (r == 0) return poly_zero();
    return Poly{{Term{r, std::move(m)}}};
}

// Sort, merge equal monomials, drop zeros.
inline Poly poly_normalize(const BaseField& F, const MonoOrder& ord, std::vector<Term> ts) {
    for (auto& t : ts) t.c = F.reduce(t.c);
    std::sort(ts.begin(), ts.end(),
              [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
    Poly p;
    for (auto& t : ts) {
        if (!p.t.empty() && p.t.back().m == t.m) {
            p.t.back().c = F.add(p.t.back().c, t.c);
            if (p.t.back().c == 0) p.t.pop_back();
        } else if (t.c != 0) {
            p.t.push_back(std::move(t));
        }
    }
    return p;
}

inline Poly poly_add(const BaseField& F, const MonoOrder& ord, const Poly& a, const Poly& b) {
    Poly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        int c = ord.cmp(a.t[i].m, b.t[j].m);
        if (c > 0) {
            r.t.push_back(a.t[i++]);
        } else if (c < 0) {
            r.t.push_back(b.t[j++]);
        } else {
            Rat s = F.add(a.t[i].c, b.t[j].c);
            if (s != 0) r.t.push_back(Term{s, a.t[i].m});
            ++i, ++j;
        }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
    return r;
}

inline Poly poly_neg(const BaseField& F, const Poly& a) {
    Poly r = a;
    for (auto& t : r.t) t.c = F.neg(t.c);
    return r;
}

inline Poly poly_sub(const BaseField& F, const MonoOrder& ord, const Poly& a, const Poly& b) {
    return poly_add(F, ord, a, poly_neg(F, b));
}

inline Poly poly_scale(const BaseField& F, const Rat& c, const Poly& a) {
    Rat cc = F.reduce(c);
    if (cc == 0) return poly_zero();
    Poly r = a;
    for (auto& t : r.t) t.c = F.mul(t.c, cc);
    return r;
}

// c * x^m * a; preserves term order (multiplication by a monomial is order-preserving).
inline Poly term_mul(const BaseField& F, const Rat& c, const Exps& m, const Poly& a) {
    Rat cc = F.reduce(c);
    if (cc == 0) return poly_zero();
    Poly r;
    r.t.reserve(a.t.size());
    for (const auto& t : a.t) r.t.push_back(Term{F.mul(cc, t.c), mono_mul(m, t.m)});
    return r;
}

inline Poly poly_mul(const BaseField& F, const MonoOrder& ord, const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& t : a.t) r = poly_add(F, ord, r, term_mul(F, t.c, t.m, b));
    return r;
}

inline Poly poly_pow(const BaseField& F, const MonoOrder& ord, const Poly& a, int e) {
    Poly r = poly_const(F, 1, a.t.empty() ? 0 : (int)a.t[0].m.size());
    if (e == 0) return r;
    if (a.is_zero()) return poly_zero();
    r = poly_const(F, 1, a.arity());
    for (int k = 0; k < e; ++k) r = poly_mul(F, ord, r, a);
    return r;
}

inline Poly poly_monic(const BaseField& F, const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(F, F.inv(a.lead().c), a);
}

inline bool poly_eq(const Poly& a, const Poly& b) {
    if (a.t.size() != b.t.size()) return false;
    for (size_t i = 0; i < a.t.size(); ++i)
        if (a.t[i].c != b.t[i].c || a.t[i].m != b.t[i].m) return false;
    return true;
}

// Re-sort a polynomial for a different order (same arity).
inline Poly poly_reorder(const BaseField& F, const MonoOrder& ord, const Poly& a) {
    return poly_normalize(F, ord, a.t);
}

inline bool poly_is_constant(const Poly& a) {
    return a.is_zero() || (a.t.size() == 1 && mono_is_one(a.t[0].m));
}

inline int poly_weighted_degree(const Poly& a, const std::vector<int>& w) {
    int d = -1;
    for (const auto& t : a.t) {
        int td = 0;
        for (size_t i = 0; i < w.size(); ++i) td += w[i] * t.m[i];
        d = std::max(d, td);
    }
    return d; // -1 for the zero polynomial
}

// Homogeneous w.r.t. weights; zero counts as homogeneous of any degree.
inline bool poly_is_homogeneous(const Poly& a, const std::vector<int>& w, int* deg_out = nullptr) {
    if (a.is_zero()) {
        if (deg_out) *deg_out = 0;
        return true;
    }
    int d0 = -1;
    for (const auto& t : a.t) {
        int td = 0;
        for (size_t i = 0; i < w.size(); ++i) td += w[i] * t.m[i];
        if (d0 == -1) d0 = td;
        else if (td != d0) return false;
    }
    if (deg_out) *deg_out = d0;
    return true;
}

} // namespace annwb

#endif
