#include "annwb/ideal.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

namespace {

std::string g_cache_dir;

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cache_key(const Ring& r, const std::vector<Poly>& gens) {
    std::ostringstream os;
    os << ring_to_string(r) << "|";
    for (const auto& g : gens) os << poly_to_string(ambient_ring(r), g) << ";";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(os.str()));
    return buf;
}

bool cache_load(const Ring& r, const std::string& key, const std::vector<Poly>& gens,
                std::vector<Poly>& out) {
    if (g_cache_dir.empty()) return false;
    std::ifstream in(g_cache_dir + "/" + key + ".gb");
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "annwb-gbcache v1") return false;
    Ring amb = ambient_ring(r);
    std::vector<Poly> basis;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        basis.push_back(parse_poly(amb, line));
    }
    // sanity: the declared generators and quotient relations reduce to zero
    // against the cached basis; corrupt entries fall back to recomputation
    for (const auto& g : gens)
        if (!nf_full(amb->field, amb->order, g, basis).is_zero()) return false;
    for (const auto& q : r->quotient)
        if (!nf_full(amb->field, amb->order, q, basis).is_zero()) return false;
    out = std::move(basis);
    return true;
}

void cache_store(const Ring& r, const std::string& key, const std::vector<Poly>& basis) {
    if (g_cache_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(g_cache_dir, ec);
    std::ofstream out(g_cache_dir + "/" + key + ".gb");
    if (!out) return;
    out << "annwb-gbcache v1\n";
    Ring amb = ambient_ring(r);
    for (const auto& g : basis) out << poly_to_string(amb, g) << "\n";
}

} // namespace

void set_gb_cache_dir(const std::string& dir) { g_cache_dir = dir; }
std::string gb_cache_dir() { return g_cache_dir; }

Ideal make_ideal(const Ring& r, std::vector<Poly> gens) {
    Ideal I;
    I.ring = r;
    for (auto& g : gens) {
        Poly gg = ring_reduce(r, g);
        if (!gg.is_zero()) I.gens.push_back(std::move(gg));
    }
    return I;
}

Ideal zero_ideal(const Ring& r) { return make_ideal(r, {}); }

Ideal unit_ideal(const Ring& r) { return make_ideal(r, {poly_const(r->field, 1, r->arity())}); }

const std::vector<Poly>& groebner_basis(const Ideal& I) {
    return I.slot->get_or_compute([&]() {
        std::vector<Poly> all = I.gens;
        for (const auto& q : I.ring->quotient) all.push_back(q);
        std::string key;
        if (!g_cache_dir.empty()) {
            key = cache_key(I.ring, I.gens);
            std::vector<Poly> cached;
            if (cache_load(I.ring, key, I.gens, cached)) return cached;
        }
        auto gb = groebner(I.ring->field, I.ring->order, std::move(all));
        if (!g_cache_dir.empty()) cache_store(I.ring, key, gb);
        return gb;
    });
}

std::vector<Poly> display_basis(const Ideal& I) {
    const auto& gb = groebner_basis(I);
    if (!I.ring->is_quotient()) return gb;
    std::vector<Poly> out;
    for (const auto& g : gb) {
        Poly r = ring_reduce(I.ring, g);
        if (r.is_zero()) continue;
        r = poly_monic(I.ring->field, r);
        bool dup = false;
        for (const auto& h : out)
            if (poly_eq(h, r)) dup = true;
        if (!dup) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
        return I.ring->order.cmp(a.lead().m, b.lead().m) < 0;
    });
    return out;
}

Poly normal_form(const Poly& f, const Ideal& I) {
    if (!f.is_zero() && f.arity() != I.ring->arity())
        throw RingMismatchError("normal_form operand arity");
    return nf_full(I.ring->field, I.ring->order, f, groebner_basis(I));
}

bool ideal_member(const Poly& f, const Ideal& I) { return normal_form(f, I).is_zero(); }

bool ideal_is_unit(const Ideal& I) {
    const auto& gb = groebner_basis(I);
    return !gb.empty() && poly_is_constant(gb.front()) && !gb.front().is_zero();
}

bool ideal_is_zero(const Ideal& I) { return display_basis(I).empty(); }

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    require_same_ring(I.ring, J.ring, "ideal_sum");
    std::vector<Poly> gens = I.gens;
    gens.insert(gens.end(), J.gens.begin(), J.gens.end());
    return make_ideal(I.ring, std::move(gens));
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
    require_same_ring(I.ring, J.ring, "ideal_product");
    std::vector<Poly> gens;
    for (const auto& a : I.gens)
        for (const auto& b : J.gens)
            gens.push_back(poly_mul(I.ring->field, I.ring->order, a, b));
    return make_ideal(I.ring, std::move(gens));
}

Ideal ideal_power(const Ideal& I, int e) {
    Ideal r = unit_ideal(I.ring);
    for (int k = 0; k < e; ++k) r = ideal_product(r, I);
    return r;
}

ExtRing extend_ring(const Ring& ambient, int n_aux) {
    if (ambient->is_quotient()) throw InternalError("extend_ring expects an ambient ring");
    RingData rd = *ambient;
    int n = rd.arity();
    for (int k = 0; k < n_aux; ++k) rd.vars.push_back("t#" + std::to_string(k));
    MonoOrder ord;
    ord.kind = ambient->order.kind;
    ord.elim_count = n_aux;
    for (int k = 0; k < n_aux; ++k) ord.perm.push_back(n + k);
    for (int i : ambient->order.perm) ord.perm.push_back(i);
    rd.order = std::move(ord);
    rd.weights.reset();
    rd.quotient.clear();
    return ExtRing{std::make_shared<RingData>(std::move(rd)), n};
}

Poly lift_to_ext(const ExtRing& e, const Poly& p) {
    Poly r = p;
    int total = e.ext->arity();
    for (auto& t : r.t) t.m.resize(total, 0);
    return r;
}

bool ext_free_of_aux(const ExtRing& e, const Poly& p) {
    for (const auto& t : p.t)
        for (int k = e.orig_arity; k < e.ext->arity(); ++k)
            if (t.m[k] > 0) return false;
    return true;
}

Poly restrict_from_ext(const ExtRing& e, const Poly& p) {
    Poly r = p;
    for (auto& t : r.t) t.m.resize(e.orig_arity);
    return r;
}

Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
    require_same_ring(I.ring, J.ring, "ideal_intersection");
    const Ring& R = I.ring;
    ExtRing e = extend_ring(ambient_ring(R), 1);
    Poly t = poly_var(e.ext->arity(), e.orig_arity);
    Poly one_minus_t =
        poly_sub(e.ext->field, e.ext->order, poly_const(e.ext->field, 1, e.ext->arity()), t);
    std::vector<Poly> gens;
    auto add_scaled = [&](const std::vector<Poly>& src, const Poly& scale) {
        for (const auto& g : src)
            gens.push_back(poly_mul(e.ext->field, e.ext->order, scale, lift_to_ext(e, g)));
    };
    add_scaled(I.gens, t);
    for (const auto& q : R->quotient) gens.push_back(lift_to_ext(e, q)); // preimage contains I_R
    add_scaled(J.gens, one_minus_t);
    auto gb = groebner(e.ext->field, e.ext->order, std::move(gens));
    std::vector<Poly> out;
    for (const auto& g : gb)
        if (ext_free_of_aux(e, g)) out.push_back(restrict_from_ext(e, g));
    return make_ideal(R, std::move(out));
}

namespace {

// g / f for a single divisor with zero remainder expected.
Poly poly_divide_exact(const BaseField& F, const MonoOrder& ord, Poly g, const Poly& f) {
    Poly q;
    while (!g.is_zero()) {
        if (!mono_divides(f.lead().m, g.lead().m))
            throw InternalError("poly_divide_exact: not divisible");
        Rat c = F.div(g.lead().c, f.lead().c);
        Exps m = mono_div(g.lead().m, f.lead().m);
        q.t.push_back(Term{c, m});
        g = poly_sub(F, ord, g, term_mul(F, c, m, f));
    }
    return poly_normalize(F, ord, q.t);
}

} // namespace

Ideal ideal_quotient(const Ideal& I, const Poly& f) {
    const Ring& R = I.ring;
    Poly ff = ring_reduce(R, f);
    if (ff.is_zero()) return unit_ideal(R);
    // (I :_R f) lifts to (Itilde :_A f) = (1/f) * (Itilde cap fA), computed in
    // the ambient ring A; the f-side stays the principal ideal fA so that the
    // intersection elements are genuinely divisible by f.
    Ring amb = ambient_ring(R);
    ExtRing e = extend_ring(amb, 1);
    Poly t = poly_var(e.ext->arity(), e.orig_arity);
    Poly one_minus_t =
        poly_sub(e.ext->field, e.ext->order, poly_const(e.ext->field, 1, e.ext->arity()), t);
    std::vector<Poly> gens;
    for (const auto& g : I.gens)
        gens.push_back(poly_mul(e.ext->field, e.ext->order, t, lift_to_ext(e, g)));
    for (const auto& q : R->quotient)
        gens.push_back(poly_mul(e.ext->field, e.ext->order, t, lift_to_ext(e, q)));
    gens.push_back(poly_mul(e.ext->field, e.ext->order, one_minus_t, lift_to_ext(e, ff)));
    auto gb = groebner(e.ext->field, e.ext->order, std::move(gens));
    std::vector<Poly> out;
    for (const auto& g : gb)
        if (ext_free_of_aux(e, g))
            out.push_back(poly_divide_exact(amb->field, amb->order, restrict_from_ext(e, g), ff));
    return make_ideal(R, std::move(out));
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
    require_same_ring(I.ring, J.ring, "ideal_quotient");
    if (J.gens.empty()) return unit_ideal(I.ring);
    Ideal acc = ideal_quotient(I, J.gens[0]);
    for (size_t k = 1; k < J.gens.size(); ++k)
        acc = ideal_intersection(acc, ideal_quotient(I, J.gens[k]));
    return acc;
}

Ideal ideal_saturation(const Ideal& I, const Poly& f) {
    Ideal cur = I;
    for (int guard = 0; guard < 256; ++guard) {
        Ideal nxt = ideal_quotient(cur, f);
        if (ideal_contains(cur, nxt)) return cur; // (cur : f) = cur, stable
        cur = nxt;
    }
    throw ResourceLimitError("saturation did not stabilize");
}

Ideal ideal_saturation(const Ideal& I, const Ideal& J) {
    Ideal cur = I;
    for (int guard = 0; guard < 256; ++guard) {
        Ideal nxt = ideal_quotient(cur, J);
        if (ideal_contains(cur, nxt)) return cur;
        cur = nxt;
    }
    throw ResourceLimitError("saturation did not stabilize");
}

Ideal ideal_eliminate(const Ideal& I, const std::vector<int>& var_indices) {
    const Ring& R = I.ring;
    Ring amb = ambient_ring(R);
    RingData rd = *amb;
    MonoOrder ord;
    ord.kind = MonoOrder::Kind::GRevLex;
    ord.elim_count = (int)var_indices.size();
    std::vector<bool> in_block(amb->arity(), false);
    for (int i : var_indices) {
        if (i < 0 || i >= amb->arity()) throw SemanticError("eliminate: bad variable index");
        if (in_block[i]) throw SemanticError("eliminate: repeated variable");
        in_block[i] = true;
        ord.perm.push_back(i);
    }
    for (int i : amb->order.perm)
        if (!in_block[i]) ord.perm.push_back(i);
    rd.order = ord;
    Ring elim_ring = std::make_shared<RingData>(std::move(rd));

    std::vector<Poly> gens;
    for (const auto& g : I.gens) gens.push_back(poly_reorder(elim_ring->field, elim_ring->order, g));
    for (const auto& q : R->quotient)
        gens.push_back(poly_reorder(elim_ring->field, elim_ring->order, q));
    auto gb = groebner(elim_ring->field, elim_ring->order, std::move(gens));
    std::vector<Poly> out;
    for (const auto& g : gb) {
        bool uses = false;
        for (const auto& t : g.t)
            for (int i : var_indices)
                if (t.m[i] > 0) uses = true;
        if (!uses) out.push_back(poly_reorder(R->field, R->order, g));
    }
    return make_ideal(R, std::move(out));
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
    require_same_ring(I.ring, J.ring, "ideal_contains");
    for (const auto& g : J.gens)
        if (!ideal_member(g, I)) return false;
    return true;
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
    return ideal_contains(I, J) && ideal_contains(J, I);
}

bool radical_member(const Ideal& I, const Poly& f) {
    const Ring& R = I.ring;
    Poly ff = ring_reduce(R, f);
    if (ff.is_zero()) return true;
    ExtRing e = extend_ring(ambient_ring(R), 1);
    Poly t = poly_var(e.ext->arity(), e.orig_arity);
    std::vector<Poly> gens;
    for (const auto& g : I.gens) gens.push_back(lift_to_ext(e, g));
    for (const auto& q : R->quotient) gens.push_back(lift_to_ext(e, q));
    Poly tf = poly_mul(e.ext->field, e.ext->order, t, lift_to_ext(e, ff));
    gens.push_back(poly_sub(e.ext->field, e.ext->order,
                            poly_const(e.ext->field, 1, e.ext->arity()), tf));
    auto gb = groebner(e.ext->field, e.ext->order, std::move(gens));
    return !gb.empty() && poly_is_constant(gb.front()) && !gb.front().is_zero();
}

bool radical_contains(const Ideal& I, const Ideal& J) {
    require_same_ring(I.ring, J.ring, "radical_contains");
    for (const auto& g : J.gens)
        if (!radical_member(I, g)) return false;
    return true;
}

int dimension(const Ideal& I) {
    const auto& gb = groebner_basis(I);
    if (!gb.empty() && poly_is_constant(gb.front()) && !gb.front().is_zero())
        return dim_neg_infinity();
    int n = I.ring->arity();
    if (n > 24) throw ResourceLimitError("dimension: too many variables for subset scan");
    std::vector<Exps> leads;
    for (const auto& g : gb) leads.push_back(g.lead().m);
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& lm : leads) {
            bool supported = true; // support of lm inside the subset?
            for (int i = 0; i < n; ++i)
                if (lm[i] > 0 && !(mask & (1u << i))) supported = false;
            if (supported) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

int ring_dimension(const Ring& r) { return dimension(zero_ideal(r)); }

PrimeIdeal make_prime(const Ideal& I, bool asserted) {
    if (ideal_is_unit(I)) throw SemanticError("prime ideal must be proper");
    PrimeIdeal p;
    p.ideal = I;
    if (!I.ring->is_quotient()) {
        bool all_vars = true;
        for (const auto& g : display_basis(I)) {
            if (!(g.t.size() == 1 && g.t[0].c == 1 && mono_total_degree(g.t[0].m) == 1))
                all_vars = false;
        }
        p.variable_generated = all_vars;
    }
    if (!p.variable_generated && !asserted)
        throw SemanticError("primality not certifiable by inspection; declare the prime as asserted");
    return p;
}

int height_between(const PrimeIdeal& p, const PrimeIdeal& q) {
    require_same_ring(p.ideal.ring, q.ideal.ring, "height_between");
    if (!ideal_contains(p.ideal, q.ideal))
        throw SemanticError("height p/q requires q subseteq p");
    int dq = dimension(q.ideal);
    int dp = dimension(p.ideal);
    return dq - dp;
}

int prime_height(const PrimeIdeal& p) {
    return ring_dimension(p.ideal.ring) - dimension(p.ideal);
}

Poly prime_avoid(const Ideal& a, const std::vector<PrimeIdeal>& primes) {
    const Ring& R = a.ring;
    for (const auto& P : primes) {
        require_same_ring(R, P.ideal.ring, "prime_avoid");
        if (ideal_contains(P.ideal, a))
            throw Error("prime_avoid: the ideal is contained in a listed prime");
    }
    const auto& gens = a.gens;
    if (gens.empty()) throw Error("prime_avoid: zero ideal");
    int k = (int)gens.size();
    auto outside_all = [&](const Poly& cand) {
        if (cand.is_zero()) return false;
        for (const auto& P : primes)
            if (ideal_member(cand, P.ideal)) return false;
        return true;
    };
    // Enumerate coefficient vectors over N^k by total sum, then lexicographic.
    for (int s = 1; s <= 64; ++s) {
        std::vector<int> c(k, 0);
        // first composition: (s, 0, .., 0); iterate lexicographically descending
        c[0] = s;
        while (true) {
            Poly cand;
            for (int i = 0; i < k; ++i)
                if (c[i] != 0)
                    cand = poly_add(R->field, R->order, cand,
                                    poly_scale(R->field, Rat(c[i]), gens[i]));
            cand = ring_reduce(R, cand);
            if (outside_all(cand)) return cand;
            // next composition of s into k parts
            int i = k - 2;
            while (i >= 0 && c[i] == 0) --i;
            if (i < 0) break;
            --c[i];
            int rest = s;
            for (int j = 0; j <= i; ++j) rest -= c[j];
            c[i + 1] = rest;
            for (int j = i + 2; j < k; ++j) c[j] = 0;
        }
    }
    throw InternalError("prime_avoid enumeration exhausted");
}

} // namespace annwb
