#ifndef ANNWB_XINT_HPP
#define ANNWB_XINT_HPP

#include <string>

#include "annwb/errors.hpp"

namespace annwb {

// Z together with -inf and +inf; the value lattice for sup/inf, depth, grade.
struct XInt {
    enum Kind { NegInf = -1, Finite = 0, PosInf = 1 };
    Kind kind = Finite;
    int v = 0;

    XInt() = default;
    XInt(int n) : kind(Finite), v(n) {}
    static XInt neg_inf() { return XInt(NegInf, 0); }
    static XInt pos_inf() { return XInt(PosInf, 0); }

    bool finite() const { return kind == Finite; }
    int value() const {
        if (!finite()) throw InternalError("XInt::value on infinity");
        return v;
    }

    friend bool operator==(const XInt& a, const XInt& b) {
        return a.kind == b.kind && (a.kind != Finite || a.v == b.v);
    }
    friend bool operator!=(const XInt& a, const XInt& b) { return !(a == b); }
    friend bool operator<(const XInt& a, const XInt& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.kind == Finite && a.v < b.v;
    }
    friend bool operator<=(const XInt& a, const XInt& b) { return a < b || a == b; }
    friend bool operator>(const XInt& a, const XInt& b) { return b < a; }
    friend bool operator>=(const XInt& a, const XInt& b) { return b <= a; }

    // shift by a finite integer; infinities absorb
    friend XInt operator+(const XInt& a, int n) {
        if (!a.finite()) return a;
        return XInt(a.v + n);
    }
    friend XInt operator-(const XInt& a, int n) { return a + (-n); }

    std::string to_string() const {
        if (kind == NegInf) return "-inf";
        if (kind == PosInf) return "+inf";
        return std::to_string(v);
    }

  private:
    XInt(Kind k, int n) : kind(k), v(n) {}
};

} // namespace annwb

#endif
