#include "annwb/io.hpp"

#include <cctype>
#include <sstream>

#include "annwb/errors.hpp"

namespace annwb {

std::string poly_to_string(const Ring& r, const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.t) {
        Rat c = t.c;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        Rat a = neg ? Rat(-c) : c;
        std::vector<std::string> factors;
        if (a != 1 || mono_is_one(t.m)) factors.push_back(a.get_str());
        for (int i = 0; i < r->arity(); ++i) {
            if (t.m[i] == 0) continue;
            if (t.m[i] == 1)
                factors.push_back(r->vars[i]);
            else
                factors.push_back(r->vars[i] + "^" + std::to_string(t.m[i]));
        }
        for (size_t k = 0; k < factors.size(); ++k) {
            if (k) os << "*";
            os << factors[k];
        }
    }
    return os.str();
}

namespace {

struct PolyParser {
    const Ring& ring;
    const std::string& s;
    size_t pos = 0;

    PolyParser(const Ring& r, const std::string& text) : ring(r), s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw SemanticError("polynomial syntax: " + msg + " in '" + s + "' at offset " +
                            std::to_string(pos));
    }

    Rat number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected number");
        std::string num = s.substr(start, pos - start);
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            size_t save = pos;
            ++pos;
            skip_ws();
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == dstart) {
                pos = save; // not a fraction; leave '/' for the caller
                return Rat(num);
            }
            std::string den = s.substr(dstart, pos - dstart);
            Rat q(num + "/" + den);
            q.canonicalize();
            return q;
        }
        return Rat(num);
    }

    int integer_exponent() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected exponent");
        return std::stoi(s.substr(start, pos - start));
    }

    Poly factor() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return power_suffix(p);
        }
        if (std::isdigit((unsigned char)c)) {
            Rat q = number();
            Poly p = poly_const(ring->field, q, ring->arity());
            return power_suffix(p);
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            int vi = var_index(ring, name);
            if (vi < 0) fail("unknown variable '" + name + "'");
            Poly p = poly_var(ring->arity(), vi);
            return power_suffix(p);
        }
        fail("unexpected character");
    }

    Poly power_suffix(Poly p) {
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            int e = integer_exponent();
            p = poly_pow(ring->field, ring->order, p, e);
        }
        return p;
    }

    Poly product() {
        Poly p = factor();
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                p = poly_mul(ring->field, ring->order, p, factor());
            } else if (pos < s.size() && s[pos] == '/') {
                // constant division: f / n
                ++pos;
                Rat q = number();
                if (q == 0) fail("division by zero");
                p = poly_scale(ring->field, ring->field.inv(ring->field.reduce(q)), p);
            } else {
                break;
            }
        }
        return p;
    }

    Poly expr() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly p = product();
        if (neg) p = poly_neg(ring->field, p);
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            if (s[pos] == '+') {
                ++pos;
                p = poly_add(ring->field, ring->order, p, product());
            } else if (s[pos] == '-') {
                ++pos;
                p = poly_sub(ring->field, ring->order, p, product());
            } else {
                break;
            }
        }
        return p;
    }
};

} // namespace

Poly parse_poly(const Ring& r, const std::string& text) {
    PolyParser pp(r, text);
    Poly p = pp.expr();
    pp.skip_ws();
    if (pp.pos != text.size()) pp.fail("trailing input");
    return ring_reduce(r, p);
}

std::string ideal_gens_to_string(const Ring& r, const std::vector<Poly>& gens) {
    std::ostringstream os;
    os << "<";
    if (gens.empty()) os << "0";
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ", ";
        os << poly_to_string(r, gens[i]);
    }
    os << ">";
    return os.str();
}

std::string ring_to_string(const Ring& r) {
    std::ostringstream os;
    os << r->field.to_string() << "[";
    for (int i = 0; i < r->arity(); ++i) {
        if (i) os << ",";
        os << r->vars[i];
    }
    os << "] " << r->order.to_string();
    if (r->is_quotient()) os << " / " << ideal_gens_to_string(ambient_ring(r), r->quotient);
    if (r->graded()) {
        os << " graded [";
        for (int i = 0; i < r->arity(); ++i) {
            if (i) os << ",";
            os << (*r->weights)[i];
        }
        os << "]";
    }
    return os.str();
}

} // namespace annwb
