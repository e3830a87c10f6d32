#ifndef ANNWB_RING_HPP
#define ANNWB_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "annwb/groebner.hpp"
#include "annwb/poly.hpp"

namespace annwb {

// A presented ring k[x_1..x_n]/I_R with a fixed global monomial order.
// Quotient relations are stored as the reduced Groebner basis of I_R; an empty
// quotient means the polynomial ring itself. Values are immutable and shared.
struct RingData {
    BaseField field;
    std::vector<std::string> vars;
    MonoOrder order;
    std::optional<std::vector<int>> weights; // grading degrees, all positive
    std::vector<Poly> quotient;              // reduced GB of the defining ideal

    int arity() const { return (int)vars.size(); }
    bool graded() const { return weights.has_value(); }
    bool is_quotient() const { return !quotient.empty(); }

    int wdeg(const Exps& m) const {
        const auto& w = *weights;
        int d = 0;
        for (size_t i = 0; i < w.size(); ++i) d += w[i] * m[i];
        return d;
    }
};

using Ring = std::shared_ptr<const RingData>;

Ring make_poly_ring(BaseField field, std::vector<std::string> vars, MonoOrder order,
                    std::optional<std::vector<int>> weights = std::nullopt);

// Quotient of `base` by `gens` (in addition to any existing quotient).
// Validates homogeneity of the defining ideal when the ring is graded.
Ring make_quotient_ring(const Ring& base, const std::vector<Poly>& gens);

// The ambient polynomial ring of `r` (drops the quotient).
Ring ambient_ring(const Ring& r);

bool same_ring(const Ring& a, const Ring& b);
void require_same_ring(const Ring& a, const Ring& b, const char* where);

// Canonical representative modulo the quotient relations.
Poly ring_reduce(const Ring& r, const Poly& p);

int var_index(const Ring& r, const std::string& name); // -1 if absent

} // namespace annwb

#endif
