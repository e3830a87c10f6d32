#include "annwb/modgb.hpp"

#include <algorithm>
#include <set>

#include "annwb/errors.hpp"

namespace annwb {

namespace {

// Term order on module terms (comp, mono): components < split form the
// leading block; within a block the base order decides, lower component
// breaking ties.
int mod_cmp(const MonoOrder& base, int split, int c1, const Exps& m1, int c2, const Exps& m2) {
    bool b1 = c1 < split, b2 = c2 < split;
    if (b1 != b2) return b1 ? 1 : -1;
    int mc = base.cmp(m1, m2);
    if (mc != 0) return mc;
    if (c1 != c2) return c1 < c2 ? 1 : -1;
    return 0;
}

struct MLead {
    int comp = -1;
    Exps m;
    Rat c;
    bool valid() const { return comp >= 0; }
};

MLead find_lead(const MonoOrder& base, int split, const VecPoly& v, int comp_limit = -1) {
    MLead best;
    int n = comp_limit < 0 ? (int)v.size() : comp_limit;
    for (int c = 0; c < n; ++c) {
        if (v[c].is_zero()) continue;
        const Term& t = v[c].lead();
        if (!best.valid() || mod_cmp(base, split, c, t.m, best.comp, best.m) > 0)
            best = MLead{c, t.m, t.c};
    }
    return best;
}

VecPoly vterm_mul(const BaseField& F, const Rat& c, const Exps& m, const VecPoly& v) {
    VecPoly r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = term_mul(F, c, m, v[i]);
    return r;
}

VecPoly mv_sub(const BaseField& F, const MonoOrder& ord, const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = poly_sub(F, ord, a[i], b[i]);
    return r;
}

struct GBElem {
    VecPoly v;
    MLead lead;
};

void spend(long& budget, long n) {
    budget -= n;
    if (budget < 0) throw ResourceLimitError("module Groebner budget exhausted");
}

// Full normal form over all components.
VecPoly module_nf(const BaseField& F, const MonoOrder& ord, int split, VecPoly work,
                  const std::vector<GBElem>& G, long& budget) {
    VecPoly rem(work.size());
    while (true) {
        MLead lt = find_lead(ord, split, work);
        if (!lt.valid()) break;
        bool reduced = false;
        for (const auto& g : G) {
            if (g.lead.comp == lt.comp && mono_divides(g.lead.m, lt.m)) {
                Rat c = F.div(lt.c, g.lead.c);
                Exps m = mono_div(lt.m, g.lead.m);
                work = mv_sub(F, ord, work, vterm_mul(F, c, m, g.v));
                spend(budget, 1);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem[lt.comp].t.push_back(work[lt.comp].t.front());
            work[lt.comp].t.erase(work[lt.comp].t.begin());
        }
    }
    return rem;
}

std::vector<GBElem> module_groebner(const BaseField& F, const MonoOrder& ord, int split,
                                    std::vector<VecPoly> inputs, long& budget) {
    std::vector<GBElem> G;
    for (auto& v : inputs) {
        MLead l = find_lead(ord, split, v);
        if (!l.valid()) continue;
        // monic
        Rat inv = F.inv(l.c);
        for (auto& p : v)
            for (auto& t : p.t) t.c = F.mul(t.c, inv);
        l.c = 1;
        G.push_back(GBElem{std::move(v), std::move(l)});
    }
    std::sort(G.begin(), G.end(), [&](const GBElem& a, const GBElem& b) {
        int c = mod_cmp(ord, split, a.lead.comp, a.lead.m, b.lead.comp, b.lead.m);
        return c < 0;
    });

    struct Pair {
        Exps lcm;
        int comp;
        int i, j;
    };
    std::vector<Pair> pairs;
    std::set<std::pair<int, int>> done;
    auto push_pairs_for = [&](int k) {
        for (int i = 0; i < k; ++i)
            if (G[i].lead.comp == G[k].lead.comp)
                pairs.push_back(Pair{mono_lcm(G[i].lead.m, G[k].lead.m), G[i].lead.comp, i, k});
    };
    for (int k = 1; k < (int)G.size(); ++k) push_pairs_for(k);

    auto pair_less = [&](const Pair& a, const Pair& b) {
        int c = ord.cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.comp != b.comp) return a.comp < b.comp;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
        Pair p = *it;
        pairs.erase(it);
        done.insert({p.i, p.j});
        // Chain criterion (same leading component required throughout).
        bool skip = false;
        for (int k = 0; k < (int)G.size() && !skip; ++k) {
            if (k == p.i || k == p.j) continue;
            if (G[k].lead.comp != p.comp || !mono_divides(G[k].lead.m, p.lcm)) continue;
            auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (done.count(key(p.i, k)) && done.count(key(p.j, k))) skip = true;
        }
        if (skip) continue;

        const GBElem &gi = G[p.i], &gj = G[p.j];
        Exps mi = mono_div(p.lcm, gi.lead.m);
        Exps mj = mono_div(p.lcm, gj.lead.m);
        VecPoly s = mv_sub(F, ord, vterm_mul(F, Rat(1), mi, gi.v), vterm_mul(F, Rat(1), mj, gj.v));
        spend(budget, 1);
        VecPoly r = module_nf(F, ord, split, std::move(s), G, budget);
        MLead l = find_lead(ord, split, r);
        if (l.valid()) {
            Rat inv = F.inv(l.c);
            for (auto& q : r)
                for (auto& t : q.t) t.c = F.mul(t.c, inv);
            l.c = 1;
            G.push_back(GBElem{std::move(r), std::move(l)});
            push_pairs_for((int)G.size() - 1);
        }
    }
    return G;
}

// Extended data: inputs (v_j || e_j) in R^{n + k (+ untracked quotient tags)}.
struct ExtGB {
    Ring ring;
    int n;        // module rank (leading block)
    int k;        // tracked tag count
    int total;    // n + k
    std::vector<GBElem> G;
};

ExtGB build_ext_gb(const Ring& R, const PMat& V) {
    ExtGB ext;
    ext.ring = R;
    ext.n = V.rows;
    ext.k = V.cols;
    int total = V.rows + V.cols; // quotient vectors stay untagged
    ext.total = total;
    std::vector<VecPoly> inputs;
    for (int j = 0; j < V.cols; ++j) {
        VecPoly w(total);
        for (int r = 0; r < V.rows; ++r) w[r] = V.at(r, j);
        w[V.rows + j] = poly_const(R->field, 1, R->arity());
        inputs.push_back(std::move(w));
    }
    for (const auto& q : R->quotient) {
        for (int r = 0; r < V.rows; ++r) {
            VecPoly w(total);
            w[r] = q;
            inputs.push_back(std::move(w));
        }
    }
    long budget = 50'000'000;
    ext.G = module_groebner(R->field, R->order, V.rows, std::move(inputs), budget);
    return ext;
}

} // namespace

PMat syzygy_matrix(const Ring& R, const PMat& V) {
    if (V.cols == 0) return PMat(0, 0);
    ExtGB ext = build_ext_gb(R, V);
    std::vector<VecPoly> syz_cols;
    for (const auto& g : ext.G) {
        bool vpart_zero = true;
        for (int c = 0; c < ext.n; ++c)
            if (!g.v[c].is_zero()) vpart_zero = false;
        if (!vpart_zero) continue;
        VecPoly tag(ext.k);
        bool nonzero = false;
        for (int j = 0; j < ext.k; ++j) {
            tag[j] = ring_reduce(R, g.v[ext.n + j]);
            if (!tag[j].is_zero()) nonzero = true;
        }
        if (nonzero) syz_cols.push_back(std::move(tag));
    }
    // canonical order
    std::sort(syz_cols.begin(), syz_cols.end(), [&](const VecPoly& a, const VecPoly& b) {
        MLead la = find_lead(R->order, 0, a), lb = find_lead(R->order, 0, b);
        return mod_cmp(R->order, 0, la.comp, la.m, lb.comp, lb.m) < 0;
    });
    return pmat_from_cols(ext.k, syz_cols);
}

PMat kernel_preimage(const Ring& R, const PMat& psi, const PMat& target_rel) {
    if (psi.cols == 0) return PMat(0, 0);
    PMat combined = target_rel.cols > 0 ? pmat_hcat(psi, target_rel) : psi;
    PMat syz = syzygy_matrix(R, combined);
    std::vector<VecPoly> cols;
    for (int j = 0; j < syz.cols; ++j) {
        VecPoly v(psi.cols);
        bool nonzero = false;
        for (int r = 0; r < psi.cols; ++r) {
            v[r] = syz.at(r, j);
            if (!v[r].is_zero()) nonzero = true;
        }
        if (nonzero) cols.push_back(std::move(v));
    }
    return pmat_from_cols(psi.cols, cols);
}

struct SubmoduleGB::Ext {
    ExtGB gb;
};

SubmoduleGB::SubmoduleGB(const Ring& R, const PMat& gens) : ring_(R), rank_(gens.rows) {
    n_tagged_ = gens.cols;
    auto e = std::make_shared<Ext>();
    e->gb = build_ext_gb(R, gens);
    ext_ = std::move(e);
}

// Reduce the module part only; accumulate tag bookkeeping.
static bool reduce_tracking(const ExtGB& ext, VecPoly work, VecPoly* tags_out) {
    const Ring& R = ext.ring;
    long budget = 50'000'000;
    work.resize(ext.total);
    for (int j = ext.n; j < ext.total; ++j) work[j] = Poly{};
    VecPoly rem(ext.n);
    while (true) {
        MLead lt = find_lead(R->order, ext.n, work, ext.n);
        if (!lt.valid()) break;
        bool reduced = false;
        for (const auto& g : ext.G) {
            if (g.lead.comp == lt.comp && g.lead.comp < ext.n && mono_divides(g.lead.m, lt.m)) {
                Rat c = R->field.div(lt.c, g.lead.c);
                Exps m = mono_div(lt.m, g.lead.m);
                work = mv_sub(R->field, R->order, work, vterm_mul(R->field, c, m, g.v));
                spend(budget, 1);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem[lt.comp].t.push_back(work[lt.comp].t.front());
            work[lt.comp].t.erase(work[lt.comp].t.begin());
        }
    }
    bool member = vp_is_zero(rem);
    if (member && tags_out) {
        VecPoly tags(ext.k);
        for (int j = 0; j < ext.k; ++j)
            tags[j] = ring_reduce(R, poly_neg(R->field, work[ext.n + j]));
        *tags_out = std::move(tags);
    }
    return member;
}

bool SubmoduleGB::contains(const VecPoly& v) const {
    if ((int)v.size() != rank_) throw InternalError("SubmoduleGB::contains rank mismatch");
    return reduce_tracking(ext_->gb, v, nullptr);
}

std::optional<VecPoly> SubmoduleGB::express(const VecPoly& v) const {
    if ((int)v.size() != rank_) throw InternalError("SubmoduleGB::express rank mismatch");
    VecPoly tags;
    if (!reduce_tracking(ext_->gb, v, &tags)) return std::nullopt;
    return tags;
}

bool submodule_contains(const Ring& R, const PMat& N, const VecPoly& v) {
    if (vp_is_zero(vp_reduce(R, v))) return true;
    if (N.cols == 0 && R->quotient.empty()) return false;
    SubmoduleGB gb(R, N);
    return gb.contains(v);
}

} // namespace annwb
