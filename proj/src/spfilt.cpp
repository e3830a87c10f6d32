#include "annwb/spfilt.hpp"

#include <algorithm>

#include "annwb/errors.hpp"

namespace annwb {

int FinPoset::height(int i, int j) const {
    if (!le(i, j)) throw SemanticError("height of incomparable pair");
    if (ring_heights) return (*ring_heights)[i][j];
    // longest chain from i to j
    if (i == j) return 0;
    int best = 0;
    for (int k = 0; k < size(); ++k) {
        if (k == i || !le(i, k) || !le(k, j)) continue;
        if (k == j) {
            best = std::max(best, 1);
            continue;
        }
        best = std::max(best, 1 + height(k, j));
    }
    return best;
}

bool FinPoset::covers(int i, int j) const {
    if (i == j || !le(i, j)) return false;
    if (ring_heights) return (*ring_heights)[i][j] == 1;
    for (int k = 0; k < size(); ++k)
        if (k != i && k != j && le(i, k) && le(k, j)) return false;
    return true;
}

std::vector<std::pair<int, int>> FinPoset::cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (covers(i, j)) out.emplace_back(i, j);
    return out;
}

bool FinPoset::upward_closed(uint64_t set) const {
    for (int i = 0; i < size(); ++i) {
        if (!((set >> i) & 1)) continue;
        for (int j = 0; j < size(); ++j)
            if (le(i, j) && !((set >> j) & 1)) return false;
    }
    return true;
}

std::vector<uint64_t> FinPoset::upsets() const {
    if (size() > 20) throw ResourceLimitError("upset enumeration too large");
    std::vector<uint64_t> out;
    for (uint64_t m = 0; m < (1ULL << size()); ++m)
        if (upward_closed(m)) out.push_back(m);
    return out;
}

int FinPoset::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    return -1;
}

PosetPtr make_poset(std::vector<std::string> names,
                    const std::vector<std::pair<int, int>>& relations) {
    auto p = std::make_shared<FinPoset>();
    int n = (int)names.size();
    p->names = std::move(names);
    p->leq.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) p->leq[i][i] = true;
    for (auto [a, b] : relations) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw SemanticError("poset relation out of range");
        p->leq[a][b] = true;
    }
    // transitive closure
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (p->leq[i][k] && p->leq[k][j]) p->leq[i][j] = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && p->leq[i][j] && p->leq[j][i])
                throw SemanticError("poset relation is not antisymmetric");
    return p;
}

PosetPtr poset_from_primes(const std::vector<PrimeIdeal>& primes, std::vector<std::string> names) {
    auto p = std::make_shared<FinPoset>();
    int n = (int)primes.size();
    if ((int)names.size() != n) throw SemanticError("poset_from_primes: name count mismatch");
    p->names = std::move(names);
    p->leq.assign(n, std::vector<bool>(n, false));
    std::vector<std::vector<int>> h(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) require_same_ring(primes[i].ideal.ring, primes[j].ideal.ring,
                                          "poset_from_primes");
            // i <= j means p_i subseteq p_j (specialization order)
            p->leq[i][j] = ideal_contains(primes[j].ideal, primes[i].ideal);
            if (p->leq[i][j]) h[i][j] = height_between(primes[j], primes[i]);
        }
    p->ring_heights = std::move(h);
    return p;
}

void validate_spfiltration(const SpFiltration& phi) {
    if (phi.levels.empty() || phi.hi - phi.lo + 1 != (int)phi.levels.size())
        throw SemanticError("sp-filtration window does not match its levels");
    for (const auto& lv : phi.levels)
        if (!phi.poset->upward_closed(lv))
            throw SemanticError("sp-filtration level is not specialization-closed");
    for (size_t k = 0; k + 1 < phi.levels.size(); ++k)
        if ((phi.levels[k] | phi.levels[k + 1]) != phi.levels[k])
            throw SemanticError("sp-filtration levels must be antitone");
}

void validate_order_preserving(const TFunction& f) {
    int n = f.poset->size();
    if ((int)f.values.size() != n) throw SemanticError("t-function value count mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (f.poset->le(i, j) && !(f.values[i] <= f.values[j]))
                throw SemanticError("map is not order-preserving");
}

TFunction F_map(const SpFiltration& phi) {
    validate_spfiltration(phi);
    TFunction f;
    f.poset = phi.poset;
    for (int e = 0; e < phi.poset->size(); ++e) {
        if (phi.member(e, phi.hi)) {
            f.values.push_back(XInt::pos_inf());
        } else if (!phi.member(e, phi.lo)) {
            f.values.push_back(XInt::neg_inf());
        } else {
            int best = phi.lo;
            for (int i = phi.lo; i <= phi.hi; ++i)
                if (phi.member(e, i)) best = i;
            f.values.push_back(XInt(best + 1));
        }
    }
    validate_order_preserving(f);
    return f;
}

SpFiltration Phi_map(const TFunction& f, int lo, int hi) {
    validate_order_preserving(f);
    for (const auto& v : f.values)
        if (v.finite() && !(lo < v.value() && v.value() <= hi))
            throw SemanticError("Phi window too narrow for the finite values of f");
    SpFiltration phi;
    phi.poset = f.poset;
    phi.lo = lo;
    phi.hi = hi;
    for (int i = lo; i <= hi; ++i) {
        uint64_t lv = 0;
        for (int e = 0; e < f.poset->size(); ++e)
            if (f.values[e] > XInt(i)) lv |= (1ULL << e);
        phi.levels.push_back(lv);
    }
    validate_spfiltration(phi);
    return phi;
}

std::optional<CousinViolation> weak_cousin_check(const SpFiltration& phi) {
    validate_spfiltration(phi);
    for (auto [p, q] : phi.poset->cover_pairs()) {
        // tails make levels outside [lo, hi+1] repeats of the boundary checks
        for (int i = phi.lo; i <= phi.hi + 1; ++i)
            if (phi.member(q, i) && !phi.member(p, i - 1)) return CousinViolation{p, q, i};
    }
    return std::nullopt;
}

std::optional<TFunctionViolation> t_function_check(const TFunction& f, TCheckMode mode) {
    validate_order_preserving(f);
    const FinPoset& P = *f.poset;
    auto check_pair = [&](int p, int q, int bound) -> std::optional<TFunctionViolation> {
        // f(p) <= f(q) <= f(p) + bound
        if (!(f.values[p] <= f.values[q]))
            return TFunctionViolation{p, q, "not order-preserving"};
        if (!(f.values[q] <= f.values[p] + bound))
            return TFunctionViolation{p, q,
                                      "jump exceeds height bound " + std::to_string(bound)};
        return std::nullopt;
    };
    if (mode == TCheckMode::Saturated) {
        for (auto [p, q] : P.cover_pairs())
            if (auto v = check_pair(p, q, 1)) return v;
        return std::nullopt;
    }
    for (int p = 0; p < P.size(); ++p)
        for (int q = 0; q < P.size(); ++q) {
            if (p == q || !P.le(p, q)) continue;
            if (auto v = check_pair(p, q, P.height(p, q))) return v;
        }
    return std::nullopt;
}

namespace {

void enumeration_guard(const PosetPtr& poset, int lo, int hi) {
    if (poset->size() > 10 || hi - lo > 4)
        throw ResourceLimitError("enumeration guard exceeded (<= 10 elements, window span <= 4)");
    if (hi < lo) throw SemanticError("empty enumeration window");
}

} // namespace

std::vector<SpFiltration> enumerate_sp_filtrations(const PosetPtr& poset, int lo, int hi) {
    enumeration_guard(poset, lo, hi);
    // level storage on [lo-1, hi+1] per the window convention: the F-image
    // takes finite values in [lo, hi+1]
    int Lo = lo - 1, Hi = hi + 1;
    std::vector<uint64_t> ups = poset->upsets();
    std::vector<SpFiltration> out;
    std::vector<uint64_t> cur;
    auto rec = [&](auto&& self) -> void {
        if ((int)cur.size() == Hi - Lo + 1) {
            SpFiltration phi;
            phi.poset = poset;
            phi.lo = Lo;
            phi.hi = Hi;
            phi.levels = cur;
            out.push_back(std::move(phi));
            return;
        }
        for (uint64_t u : ups) {
            if (!cur.empty() && (cur.back() | u) != cur.back()) continue; // antitone
            cur.push_back(u);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

std::vector<TFunction> enumerate_order_preserving(const PosetPtr& poset, int lo, int hi) {
    enumeration_guard(poset, lo, hi);
    std::vector<XInt> values;
    values.push_back(XInt::neg_inf());
    for (int v = lo; v <= hi + 1; ++v) values.push_back(XInt(v));
    values.push_back(XInt::pos_inf());

    int n = poset->size();
    std::vector<TFunction> out;
    std::vector<XInt> cur(n, XInt(0));
    auto rec = [&](auto&& self, int e) -> void {
        if (e == n) {
            TFunction f;
            f.poset = poset;
            f.values = cur;
            out.push_back(std::move(f));
            return;
        }
        for (const XInt& v : values) {
            bool ok = true;
            for (int d = 0; d < e && ok; ++d) {
                if (poset->le(d, e) && !(cur[d] <= v)) ok = false;
                if (poset->le(e, d) && !(v <= cur[d])) ok = false;
            }
            if (!ok) continue;
            cur[e] = v;
            self(self, e + 1);
        }
    };
    rec(rec, 0);
    return out;
}

bool spfiltration_equal(const SpFiltration& a, const SpFiltration& b) {
    if (a.poset != b.poset) return false;
    int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    for (int i = lo; i <= hi; ++i)
        if (a.level(i) != b.level(i)) return false;
    return true;
}

bool tfunction_equal(const TFunction& a, const TFunction& b) {
    return a.poset == b.poset && a.values.size() == b.values.size() &&
           std::equal(a.values.begin(), a.values.end(), b.values.begin());
}

RoundtripReport roundtrip_verify(const PosetPtr& poset, int lo, int hi) {
    RoundtripReport rep;
    auto filts = enumerate_sp_filtrations(poset, lo, hi);
    auto maps = enumerate_order_preserving(poset, lo, hi);
    rep.filtration_count = (long)filts.size();
    rep.map_count = (long)maps.size();
    if (rep.filtration_count != rep.map_count)
        rep.discrepancies.push_back("family sizes differ: " + std::to_string(rep.filtration_count) +
                                    " filtrations vs " + std::to_string(rep.map_count) + " maps");
    for (const auto& phi : filts) {
        TFunction f = F_map(phi);
        SpFiltration back = Phi_map(f, phi.lo, phi.hi);
        if (!spfiltration_equal(back, phi))
            rep.discrepancies.push_back("Phi(F(phi)) != phi");
        bool cousin = !weak_cousin_check(phi).has_value();
        bool tfun = !t_function_check(f, TCheckMode::Full).has_value();
        if (cousin != tfun)
            rep.discrepancies.push_back("weak Cousin <-> t-function mismatch");
    }
    for (const auto& f : maps) {
        SpFiltration phi = Phi_map(f, lo - 1, hi + 1);
        TFunction back = F_map(phi);
        if (!tfunction_equal(back, f)) rep.discrepancies.push_back("F(Phi(f)) != f");
        bool full = !t_function_check(f, TCheckMode::Full).has_value();
        bool sat = !t_function_check(f, TCheckMode::Saturated).has_value();
        if (full != sat) rep.discrepancies.push_back("full/saturated t-check mismatch");
    }
    return rep;
}

} // namespace annwb
