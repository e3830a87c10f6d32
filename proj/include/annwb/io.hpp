#ifndef ANNWB_IO_HPP
#define ANNWB_IO_HPP

#include <string>
#include <vector>

#include "annwb/ring.hpp"

namespace annwb {

// Canonical textual form: terms in descending order, `*` between factors,
// `^` for powers, rational coefficients as `a` or `a/b`, e.g. 3*x^2*y - 1/2*z.
std::string poly_to_string(const Ring& r, const Poly& p);

// Parses the same syntax (plus parentheses and `-`/`+` chains). The result is
// reduced modulo the ring's quotient relations.
Poly parse_poly(const Ring& r, const std::string& text);

std::string ideal_gens_to_string(const Ring& r, const std::vector<Poly>& gens); // <g1, g2>

std::string ring_to_string(const Ring& r);

} // namespace annwb

#endif
