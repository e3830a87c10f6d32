#include "annwb/ring.hpp"

#include <algorithm>

#include "annwb/errors.hpp"

namespace annwb {

Ring make_poly_ring(BaseField field, std::vector<std::string> vars, MonoOrder order,
                    std::optional<std::vector<int>> weights) {
    auto rd = std::make_shared<RingData>();
    rd->field = field;
    {
        auto sorted = vars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw SemanticError("duplicate variable names in ring");
    }
    rd->vars = std::move(vars);
    if ((int)order.perm.size() != rd->arity())
        throw SemanticError("monomial order arity does not match ring");
    rd->order = std::move(order);
    if (weights) {
        if ((int)weights->size() != rd->arity())
            throw SemanticError("grading vector arity does not match ring");
        for (int w : *weights)
            if (w <= 0) throw SemanticError("grading degrees must be positive");
        rd->weights = std::move(weights);
    }
    return rd;
}

Ring make_quotient_ring(const Ring& base, const std::vector<Poly>& gens) {
    std::vector<Poly> all = base->quotient;
    for (const auto& g : gens)
        if (!g.is_zero()) all.push_back(g);
    std::vector<Poly> gb = groebner(base->field, base->order, all);
    if (!gb.empty() && poly_is_constant(gb.front()) && !gb.front().is_zero())
        throw SemanticError("quotient by the unit ideal");
    if (base->weights) {
        for (const auto& g : gb)
            if (!poly_is_homogeneous(g, *base->weights))
                throw SemanticError("quotient generators must be homogeneous in a graded ring");
    }
    auto rd = std::make_shared<RingData>(*base);
    rd->quotient = std::move(gb);
    return rd;
}

Ring ambient_ring(const Ring& r) {
    if (!r->is_quotient()) return r;
    auto rd = std::make_shared<RingData>(*r);
    rd->quotient.clear();
    return rd;
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a.get() == b.get()) return true;
    if (!(a->field == b->field) || a->vars != b->vars || !(a->order == b->order) ||
        a->weights != b->weights)
        return false;
    if (a->quotient.size() != b->quotient.size()) return false;
    for (size_t i = 0; i < a->quotient.size(); ++i)
        if (!poly_eq(a->quotient[i], b->quotient[i])) return false;
    return true;
}

void require_same_ring(const Ring& a, const Ring& b, const char* where) {
    if (!same_ring(a, b)) throw RingMismatchError(where);
}

Poly ring_reduce(const Ring& r, const Poly& p) {
    if (r->quotient.empty()) return p;
    return nf_full(r->field, r->order, p, r->quotient);
}

int var_index(const Ring& r, const std::string& name) {
    for (int i = 0; i < r->arity(); ++i)
        if (r->vars[i] == name) return i;
    return -1;
}

} // namespace annwb
