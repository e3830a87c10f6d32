#ifndef ANNWB_MONOMIAL_HPP
#define ANNWB_MONOMIAL_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "annwb/errors.hpp"

namespace annwb {

// Exponent vector; arity fixed by the ring.
using Exps = std::vector<int>;

inline Exps mono_one(int arity) { return Exps(arity, 0); }

inline bool mono_is_one(const Exps& a) {
    return std::all_of(a.begin(), a.end(), [](int e) { return e == 0; });
}

inline Exps mono_mul(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool mono_divides(const Exps& a, const Exps& b) { // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exps mono_div(const Exps& b, const Exps& a) { // b / a, requires a | b
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
    return r;
}

inline Exps mono_lcm(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline int mono_total_degree(const Exps& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline bool mono_coprime(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

// Monomial order descriptor. `perm` lists variable indices by priority
// (perm[0] most significant). The first `elim_count` entries of perm form an
// elimination block compared degree-first, making this an elimination order
// for those variables; elim_count == 0 gives a plain global order.
struct MonoOrder {
    enum class Kind { Lex, GRevLex };
    Kind kind = Kind::GRevLex;
    std::vector<int> perm;
    int elim_count = 0;

    static MonoOrder lex(int arity) {
        MonoOrder o;
        o.kind = Kind::Lex;
        o.perm.resize(arity);
        std::iota(o.perm.begin(), o.perm.end(), 0);
        return o;
    }
    static MonoOrder grevlex(int arity) {
        MonoOrder o;
        o.kind = Kind::GRevLex;
        o.perm.resize(arity);
        std::iota(o.perm.begin(), o.perm.end(), 0);
        return o;
    }

    bool operator==(const MonoOrder& o) const {
        return kind == o.kind && perm == o.perm && elim_count == o.elim_count;
    }

    // Compare within a priority slice [from, to) of perm. Returns -1/0/1.
    int cmp_slice(const Exps& a, const Exps& b, int from, int to) const {
        if (kind == Kind::Lex) {
            for (int k = from; k < to; ++k) {
                int i = perm[k];
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            }
            return 0;
        }
        int da = 0, db = 0;
        for (int k = from; k < to; ++k) {
            da += a[perm[k]];
            db += b[perm[k]];
        }
        if (da != db) return da > db ? 1 : -1;
        for (int k = to - 1; k >= from; --k) {
            int i = perm[k];
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        }
        return 0;
    }

    int cmp(const Exps& a, const Exps& b) const {
        if (elim_count > 0) {
            int da = 0, db = 0;
            for (int k = 0; k < elim_count; ++k) {
                da += a[perm[k]];
                db += b[perm[k]];
            }
            if (da != db) return da > db ? 1 : -1;
            int c = cmp_slice(a, b, 0, elim_count);
            if (c != 0) return c;
            return cmp_slice(a, b, elim_count, (int)perm.size());
        }
        return cmp_slice(a, b, 0, (int)perm.size());
    }

    bool gt(const Exps& a, const Exps& b) const { return cmp(a, b) > 0; }

    std::string to_string() const {
        std::string s = kind == Kind::Lex ? "lex" : "grevlex";
        return s;
    }
};

} // namespace annwb

#endif
