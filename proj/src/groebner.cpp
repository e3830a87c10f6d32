#include "annwb/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "annwb/errors.hpp"

namespace annwb {

namespace {

std::atomic<long> g_gb_budget{2'000'000}; // generous desk-scale guard

} // namespace

void set_default_gb_budget(long steps) { g_gb_budget.store(steps > 0 ? steps : 1); }
long default_gb_budget() { return g_gb_budget.load(); }

namespace {

void spend(long* budget, long amount) {
    if (!budget) return;
    *budget -= amount;
    if (*budget < 0) throw ResourceLimitError("Groebner step budget exhausted");
}

} // namespace

Poly nf_full(const BaseField& F, const MonoOrder& ord, const Poly& f, const std::vector<Poly>& G,
             long* budget) {
    Poly rem;
    Poly work = f;
    while (!work.is_zero()) {
        const Term& lt = work.lead();
        bool reduced = false;
        for (const Poly& g : G) {
            if (g.is_zero()) continue;
            if (mono_divides(g.lead().m, lt.m)) {
                Rat c = F.div(lt.c, g.lead().c);
                Exps m = mono_div(lt.m, g.lead().m);
                work = poly_sub(F, ord, work, term_mul(F, c, m, g));
                spend(budget, 1);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.t.push_back(work.t.front());
            work.t.erase(work.t.begin());
        }
    }
    return rem;
}

std::vector<Poly> reduce_basis(const BaseField& F, const MonoOrder& ord, std::vector<Poly> G,
                               long* budget) {
    // Drop zero elements and elements whose lead is divisible by another lead.
    std::vector<Poly> H;
    for (auto& g : G)
        if (!g.is_zero()) H.push_back(std::move(g));
    std::sort(H.begin(), H.end(),
              [&](const Poly& a, const Poly& b) { return ord.cmp(a.lead().m, b.lead().m) < 0; });
    std::vector<Poly> minimal;
    for (size_t i = 0; i < H.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < H.size() && !redundant; ++j) {
            if (i == j) continue;
            if (mono_divides(H[j].lead().m, H[i].lead().m)) {
                // Break ties (equal leads) by keeping the earlier element.
                if (H[j].lead().m == H[i].lead().m)
                    redundant = j < i;
                else
                    redundant = true;
            }
        }
        if (!redundant) minimal.push_back(H[i]);
    }
    // Tail-reduce each element against the others and make monic.
    std::vector<Poly> out;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = nf_full(F, ord, minimal[i], others, budget);
        if (!r.is_zero()) out.push_back(poly_monic(F, r));
    }
    std::sort(out.begin(), out.end(),
              [&](const Poly& a, const Poly& b) { return ord.cmp(a.lead().m, b.lead().m) < 0; });
    return out;
}

std::vector<Poly> groebner(const BaseField& F, const MonoOrder& ord, std::vector<Poly> gens,
                           const GBOptions& opt) {
    long budget = opt.step_budget;
    std::vector<Poly> G;
    for (auto& g : gens)
        if (!g.is_zero()) G.push_back(poly_monic(F, g));
    if (G.empty()) return {};
    // Deterministic starting order.
    std::sort(G.begin(), G.end(), [&](const Poly& a, const Poly& b) {
        int c = ord.cmp(a.lead().m, b.lead().m);
        if (c != 0) return c < 0;
        return a.t.size() < b.t.size();
    });

    struct Pair {
        Exps lcm;
        int i, j;
    };
    auto pair_less = [&](const Pair& a, const Pair& b) {
        int c = ord.cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0; // normal strategy: smallest lcm first
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<Pair> pairs;
    std::set<std::pair<int, int>> done;
    auto push_pairs_for = [&](int k) {
        for (int i = 0; i < k; ++i)
            pairs.push_back(Pair{mono_lcm(G[i].lead().m, G[k].lead().m), i, k});
    };
    for (int k = 1; k < (int)G.size(); ++k) push_pairs_for(k);

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
        Pair p = *it;
        pairs.erase(it);
        done.insert({p.i, p.j});

        const Poly &fi = G[p.i], &fj = G[p.j];
        // Product criterion.
        if (mono_coprime(fi.lead().m, fj.lead().m)) continue;
        // Chain criterion: some k with lm(k) | lcm(i,j) and both (i,k), (j,k) handled.
        bool skip = false;
        for (int k = 0; k < (int)G.size() && !skip; ++k) {
            if (k == p.i || k == p.j) continue;
            if (!mono_divides(G[k].lead().m, p.lcm)) continue;
            auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (done.count(key(p.i, k)) && done.count(key(p.j, k))) skip = true;
        }
        if (skip) continue;

        Exps mi = mono_div(p.lcm, fi.lead().m);
        Exps mj = mono_div(p.lcm, fj.lead().m);
        Poly s = poly_sub(F, ord, term_mul(F, F.inv(fi.lead().c), mi, fi),
                          term_mul(F, F.inv(fj.lead().c), mj, fj));
        spend(&budget, 1);
        Poly r = nf_full(F, ord, s, G, &budget);
        if (!r.is_zero()) {
            G.push_back(poly_monic(F, r));
            push_pairs_for((int)G.size() - 1);
        }
    }
    return reduce_basis(F, ord, std::move(G), &budget);
}

} // namespace annwb
