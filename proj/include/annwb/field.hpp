#ifndef ANNWB_FIELD_HPP
#define ANNWB_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "annwb/errors.hpp"

namespace annwb {

using Int = mpz_class;
using Rat = mpq_class;

// Coefficient field: QQ (characteristic 0) or a prime field F_p with p < 2^31.
// Prime-field elements are stored as integer rationals in [0, p).
struct BaseField {
    long characteristic = 0;

    BaseField() = default;
    explicit BaseField(long p) : characteristic(p) {
        if (p != 0 && !is_prime_long(p))
            throw SemanticError("field characteristic must be 0 or prime, got " + std::to_string(p));
        if (p < 0 || p > (1L << 31))
            throw SemanticError("prime-field characteristic out of range");
    }

    bool rationals() const { return characteristic == 0; }

    static bool is_prime_long(long p) {
        if (p < 2) return false;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    // Canonical representative of a rational in this field.
    Rat reduce(const Rat& a) const {
        if (rationals()) {
            Rat r = a;
            r.canonicalize();
            return r;
        }
        Int p(characteristic);
        Int num = a.get_num() % p;
        if (num < 0) num += p;
        Int den = a.get_den() % p;
        if (den < 0) den += p;
        if (den == 0) throw SemanticError("denominator divisible by field characteristic");
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw SemanticError("non-invertible denominator in prime field");
        Int v = (num * inv) % p;
        return Rat(v);
    }

    Rat add(const Rat& a, const Rat& b) const { return reduce(Rat(a + b)); }
    Rat sub(const Rat& a, const Rat& b) const { return reduce(Rat(a - b)); }
    Rat mul(const Rat& a, const Rat& b) const { return reduce(Rat(a * b)); }
    Rat neg(const Rat& a) const { return reduce(Rat(-a)); }
    Rat inv(const Rat& a) const {
        if (a == 0) throw InternalError("field inverse of zero");
        if (rationals()) return Rat(1) / a;
        Int p(characteristic);
        Int v = a.get_num() % p;
        if (v < 0) v += p;
        Int r;
        if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
            throw InternalError("non-invertible element in prime field");
        return Rat(r);
    }
    Rat div(const Rat& a, const Rat& b) const { return mul(a, inv(b)); }

    bool operator==(const BaseField& o) const { return characteristic == o.characteristic; }
    bool operator!=(const BaseField& o) const { return !(*this == o); }

    std::string to_string() const {
        return rationals() ? "QQ" : ("GF(" + std::to_string(characteristic) + ")");
    }
};

} // namespace annwb

#endif
