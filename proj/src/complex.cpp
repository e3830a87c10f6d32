#include "annwb/complex.hpp"

#include <algorithm>
#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

namespace {

FgModule zero_term(const Ring& r) { return free_module(r, 0); }

} // namespace

const FgModule& Complex::term(int i) const {
    static thread_local FgModule zero;
    if (!in_range(i)) {
        zero = zero_term(ring);
        return zero;
    }
    return terms[i - lo];
}

PMat Complex::diff_at(int i) const {
    if (!terms.empty() && i >= lo && i < hi()) return diff[i - lo];
    int src = in_range(i) ? terms[i - lo].rank : 0;
    int dst = in_range(i + 1) ? terms[i + 1 - lo].rank : 0;
    return PMat(dst, src);
}

bool Complex::free_termed() const {
    for (const auto& t : terms)
        if (t.rel.cols != 0) return false;
    return true;
}

Complex make_complex(const Ring& r, int lo, std::vector<FgModule> terms, std::vector<PMat> diff) {
    Complex x;
    x.ring = r;
    x.lo = lo;
    x.terms = std::move(terms);
    x.diff = std::move(diff);
    for (auto& d : x.diff) d = pmat_reduce(r, d);
    validate_complex(x);
    return x;
}

void validate_complex(const Complex& x) {
    if (x.terms.empty()) return;
    if (x.diff.size() + 1 != x.terms.size())
        throw SemanticError("complex: differential count must be term count - 1");
    for (size_t k = 0; k < x.diff.size(); ++k) {
        if (x.diff[k].rows != x.terms[k + 1].rank || x.diff[k].cols != x.terms[k].rank)
            throw SemanticError("complex: differential shape mismatch at degree " +
                                std::to_string(x.lo + (int)k));
    }
    for (size_t k = 0; k + 1 < x.diff.size(); ++k) {
        PMat comp = pmat_mul(x.ring, x.diff[k + 1], x.diff[k]);
        const FgModule& target = x.terms[k + 2];
        if (target.rel.cols == 0) {
            if (!comp.is_zero())
                throw SemanticError("complex: d^2 != 0 at degree " + std::to_string(x.lo + (int)k));
        } else {
            SubmoduleGB gb(x.ring, target.rel);
            for (int c = 0; c < comp.cols; ++c)
                if (!gb.contains(comp.col(c)))
                    throw SemanticError("complex: d^2 != 0 at degree " +
                                        std::to_string(x.lo + (int)k));
        }
    }
    for (size_t k = 0; k < x.diff.size(); ++k)
        if (!map_well_defined(x.terms[k], x.terms[k + 1], x.diff[k]))
            throw SemanticError("complex: differential does not respect relations at degree " +
                                std::to_string(x.lo + (int)k));
}

Complex module_one_term(const FgModule& m, int degree) {
    Complex x;
    x.ring = m.ring;
    x.lo = degree;
    x.terms = {m};
    return x;
}

Complex module_free_complex(const FgModule& m, int degree, int length) {
    FreeResolution res = resolve(m, length);
    Complex x;
    x.ring = m.ring;
    x.lo = degree - length;
    // F_length -> ... -> F_0 in cohomological degrees [degree-length, degree]
    for (int k = length; k >= 0; --k) {
        std::optional<std::vector<int>> degs;
        if (!res.gen_degs.empty()) degs = res.gen_degs[k];
        x.terms.push_back(free_module(m.ring, res.ranks[k], degs));
    }
    for (int k = length; k >= 1; --k) x.diff.push_back(res.d[k - 1]);
    // trim zero tail at the left end
    while (!x.terms.empty() && x.terms.front().rank == 0) {
        x.terms.erase(x.terms.begin());
        if (!x.diff.empty()) x.diff.erase(x.diff.begin());
        ++x.lo;
    }
    return x;
}

Subquotient cohomology(const Complex& x, int i) {
    if (!x.in_range(i)) {
        Subquotient sq;
        sq.mod = zero_term(x.ring);
        sq.embed = PMat(0, 0);
        return sq;
    }
    return homology_at(x.term(i), x.term(i + 1), x.diff_at(i), x.diff_at(i - 1));
}

std::pair<XInt, XInt> sup_inf(const Complex& x) {
    XInt sup = XInt::neg_inf(), inf = XInt::pos_inf();
    if (x.is_zero_complex()) return {sup, inf};
    for (int i = x.hi(); i >= x.lo; --i)
        if (!module_is_zero(cohomology(x, i).mod)) {
            sup = XInt(i);
            break;
        }
    for (int i = x.lo; i <= x.hi(); ++i)
        if (!module_is_zero(cohomology(x, i).mod)) {
            inf = XInt(i);
            break;
        }
    return {sup, inf};
}

Complex shift(const Complex& x, int n) {
    Complex y;
    y.ring = x.ring;
    y.lo = x.lo - n;
    y.terms = x.terms;
    y.diff = x.diff;
    if (n % 2 != 0) {
        Poly minus_one = poly_const(x.ring->field, -1, x.ring->arity());
        for (auto& d : y.diff) d = pmat_scale(x.ring, minus_one, d);
    }
    return y;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int s, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == j) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < s; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace

Complex koszul_complex(const Ring& r, const std::vector<Poly>& ys) {
    int s = (int)ys.size();
    if (s < 1) throw SemanticError("koszul complex needs at least one element");
    std::vector<Poly> y;
    for (const auto& p : ys) y.push_back(ring_reduce(r, p));
    bool graded = r->graded();
    std::vector<int> ydeg(s, 0);
    if (graded) {
        for (int i = 0; i < s; ++i)
            if (!poly_is_homogeneous(y[i], *r->weights, &ydeg[i])) graded = false;
    }

    Complex x;
    x.ring = r;
    x.lo = -s;
    std::vector<std::vector<std::vector<int>>> bases(s + 1);
    for (int j = 0; j <= s; ++j) bases[j] = subsets_of_size(s, j);
    // term at degree -j has basis = j-subsets
    for (int j = s; j >= 0; --j) {
        std::optional<std::vector<int>> degs;
        if (graded) {
            std::vector<int> ds;
            for (const auto& S : bases[j]) {
                int d = 0;
                for (int i : S) d += ydeg[i];
                ds.push_back(d);
            }
            degs = std::move(ds);
        }
        x.terms.push_back(free_module(r, (int)bases[j].size(), degs));
    }
    // d : degree -j -> -j+1, e_S |-> sum_t (-1)^{t-1} y_{i_t} e_{S minus i_t}
    for (int j = s; j >= 1; --j) {
        const auto& src = bases[j];
        const auto& dst = bases[j - 1];
        auto dst_index = [&](const std::vector<int>& S) {
            for (size_t k = 0; k < dst.size(); ++k)
                if (dst[k] == S) return (int)k;
            throw InternalError("koszul: subset index");
        };
        PMat d((int)dst.size(), (int)src.size());
        for (size_t c = 0; c < src.size(); ++c) {
            for (size_t t = 0; t < src[c].size(); ++t) {
                std::vector<int> rest = src[c];
                int var = rest[t];
                rest.erase(rest.begin() + (long)t);
                Poly coef = poly_scale(r->field, Rat((t % 2 == 0) ? 1 : -1), y[var]);
                int rr = dst_index(rest);
                d.at(rr, (int)c) = poly_add(r->field, r->order, d.at(rr, (int)c), coef);
            }
        }
        x.diff.push_back(d);
    }
    validate_complex(x);
    return x;
}

Complex tensor_complexes(const Complex& x, const Complex& y) {
    require_same_ring(x.ring, y.ring, "tensor");
    if (!x.free_termed() || !y.free_termed())
        throw SemanticError("tensor requires free-termed complexes");
    if (x.is_zero_complex() || y.is_zero_complex()) {
        Complex z;
        z.ring = x.ring;
        return z;
    }
    const Ring& r = x.ring;
    int lo = x.lo + y.lo, hi = x.hi() + y.hi();

    // block layout per total degree: pairs (p, q = n - p), p ascending
    struct Block {
        int p, q, offset, xr, yr;
    };
    std::vector<std::vector<Block>> layout(hi - lo + 1);
    std::vector<int> ranks(hi - lo + 1, 0);
    for (int n = lo; n <= hi; ++n) {
        int off = 0;
        for (int p = x.lo; p <= x.hi(); ++p) {
            int q = n - p;
            if (!y.in_range(q)) continue;
            int xr = x.term(p).rank, yr = y.term(q).rank;
            if (xr == 0 || yr == 0) continue;
            layout[n - lo].push_back(Block{p, q, off, xr, yr});
            off += xr * yr;
        }
        ranks[n - lo] = off;
    }

    bool graded = true;
    for (const auto& t : x.terms)
        if (!t.graded()) graded = false;
    for (const auto& t : y.terms)
        if (!t.graded()) graded = false;
    if (!r->graded()) graded = false;

    Complex z;
    z.ring = r;
    z.lo = lo;
    for (int n = lo; n <= hi; ++n) {
        std::optional<std::vector<int>> degs;
        if (graded) {
            std::vector<int> ds(ranks[n - lo]);
            for (const auto& b : layout[n - lo])
                for (int i = 0; i < b.xr; ++i)
                    for (int j = 0; j < b.yr; ++j)
                        ds[b.offset + i * b.yr + j] =
                            (*x.term(b.p).degs)[i] + (*y.term(b.q).degs)[j];
            degs = std::move(ds);
        }
        z.terms.push_back(free_module(r, ranks[n - lo], degs));
    }
    for (int n = lo; n < hi; ++n) {
        PMat d(ranks[n + 1 - lo], ranks[n - lo]);
        for (const auto& src : layout[n - lo]) {
            // d_X (x) 1 : (p, q) -> (p+1, q)
            for (const auto& dst : layout[n + 1 - lo]) {
                if (dst.p == src.p + 1 && dst.q == src.q) {
                    PMat dx = x.diff_at(src.p);
                    for (int v = 0; v < dst.xr; ++v)
                        for (int i = 0; i < src.xr; ++i) {
                            if (dx.at(v, i).is_zero()) continue;
                            for (int j = 0; j < src.yr; ++j)
                                d.at(dst.offset + v * dst.yr + j, src.offset + i * src.yr + j) =
                                    dx.at(v, i);
                        }
                }
                // (-1)^p 1 (x) d_Y : (p, q) -> (p, q+1)
                if (dst.p == src.p && dst.q == src.q + 1) {
                    PMat dy = y.diff_at(src.q);
                    Rat sgn((src.p % 2 == 0) ? 1 : -1);
                    for (int i = 0; i < src.xr; ++i)
                        for (int w = 0; w < dst.yr; ++w)
                            for (int j = 0; j < src.yr; ++j) {
                                if (dy.at(w, j).is_zero()) continue;
                                d.at(dst.offset + i * dst.yr + w, src.offset + i * src.yr + j) =
                                    poly_scale(r->field, sgn, dy.at(w, j));
                            }
                }
            }
        }
        z.diff.push_back(d);
    }
    validate_complex(z);
    return z;
}

KoszulTower tensor_koszul(const Complex& x, const std::vector<Poly>& ys) {
    if (ys.empty()) throw SemanticError("tensor_koszul needs at least one element");
    KoszulTower tower;
    tower.stages.push_back(x);
    for (const auto& yraw : ys) {
        Poly yy = ring_reduce(x.ring, yraw);
        tower.multipliers.push_back(yy);
        const Complex& prev = tower.stages.back();
        Complex next = tensor_complexes(prev, koszul_complex(x.ring, {yy}));
        // inclusion as the K^0 block: with blocks ordered p ascending, the
        // (p = n, q = 0) block sits before (p = n+1, q = -1)
        ChainMap incl;
        incl.lo = prev.lo;
        for (int n = prev.lo; n <= prev.hi(); ++n) {
            int pr = prev.term(n).rank;
            int nr = next.in_range(n) ? next.term(n).rank : 0;
            PMat f(nr, pr);
            for (int i = 0; i < pr && i < nr; ++i)
                f.at(i, i) = poly_const(x.ring->field, 1, x.ring->arity());
            incl.f.push_back(f);
        }
        tower.inclusions.push_back(std::move(incl));
        tower.stages.push_back(std::move(next));
    }
    return tower;
}

std::optional<Homotopy> null_homotopy_mult(const Complex& x, const Poly& f) {
    if (!x.free_termed()) throw SemanticError("null_homotopy_mult requires free terms");
    const Ring& r = x.ring;
    Poly ff = ring_reduce(r, f);
    if (x.is_zero_complex()) return Homotopy{x.lo + 1, {}};

    // unknowns: entries of h^i : term(i) -> term(i-1), i in [lo+1, hi]
    struct Unknown {
        int i, a, b; // a < rank(i-1), b < rank(i)
    };
    std::vector<Unknown> unknowns;
    for (int i = x.lo + 1; i <= x.hi(); ++i) {
        int ra = x.term(i - 1).rank, rb = x.term(i).rank;
        for (int a = 0; a < ra; ++a)
            for (int b = 0; b < rb; ++b) unknowns.push_back(Unknown{i, a, b});
    }
    // equations: per degree i, entries (c, b) of f*I - d^{i-1} h^i - h^{i+1} d^i = 0
    std::vector<int> eq_offset;
    int total_eq = 0;
    for (int i = x.lo; i <= x.hi(); ++i) {
        eq_offset.push_back(total_eq);
        total_eq += x.term(i).rank * x.term(i).rank;
    }
    auto eq_index = [&](int i, int c, int b) {
        return eq_offset[i - x.lo] + c * x.term(i).rank + b;
    };

    std::vector<VecPoly> cols;
    for (const auto& u : unknowns) {
        VecPoly col(total_eq);
        // d^{i-1} h^i contributes at equations (i, c, u.b) with coefficient d^{i-1}[c][a]
        PMat dprev = x.diff_at(u.i - 1);
        for (int c = 0; c < x.term(u.i).rank; ++c)
            if (!dprev.at(c, u.a).is_zero()) col[eq_index(u.i, c, u.b)] = dprev.at(c, u.a);
        // h^i d^{i-1} contributes at equations (i-1, u.a, e) with coefficient d^{i-1}[u.b][e]
        for (int e = 0; e < x.term(u.i - 1).rank; ++e)
            if (!dprev.at(u.b, e).is_zero()) {
                int idx = eq_index(u.i - 1, u.a, e);
                col[idx] = poly_add(r->field, r->order, col[idx], dprev.at(u.b, e));
            }
        cols.push_back(std::move(col));
    }
    VecPoly target(total_eq);
    for (int i = x.lo; i <= x.hi(); ++i)
        for (int c = 0; c < x.term(i).rank; ++c) target[eq_index(i, c, c)] = ff;

    PMat sys = pmat_from_cols(total_eq, cols);
    SubmoduleGB gb(r, sys);
    auto coeffs = gb.express(target);
    if (!coeffs) return std::nullopt;

    Homotopy h;
    h.lo = x.lo + 1;
    for (int i = x.lo + 1; i <= x.hi(); ++i)
        h.h.push_back(PMat(x.term(i - 1).rank, x.term(i).rank));
    for (size_t k = 0; k < unknowns.size(); ++k) {
        const auto& u = unknowns[k];
        h.h[u.i - h.lo].at(u.a, u.b) = (*coeffs)[k];
    }
    if (!verify_homotopy(x, ff, h)) throw InternalError("null homotopy witness failed to verify");
    return h;
}

bool verify_homotopy(const Complex& x, const Poly& f, const Homotopy& h) {
    const Ring& r = x.ring;
    Poly ff = ring_reduce(r, f);
    auto h_at = [&](int i) -> PMat {
        int k = i - h.lo;
        if (k < 0 || k >= (int)h.h.size()) return PMat(x.term(i - 1).rank, x.term(i).rank);
        return h.h[k];
    };
    for (int i = x.lo; i <= x.hi(); ++i) {
        int ri = x.term(i).rank;
        PMat want = pmat_scale(r, ff, pmat_identity(r, ri));
        PMat got = pmat_add(r, pmat_mul(r, x.diff_at(i - 1), h_at(i)),
                            pmat_mul(r, h_at(i + 1), x.diff_at(i)));
        if (!pmat_eq(pmat_reduce(r, want), pmat_reduce(r, got))) return false;
    }
    return true;
}

Ideal cohomology_annihilator(const Complex& x) {
    std::optional<Ideal> acc;
    for (int i = x.lo; i <= x.hi(); ++i) {
        FgModule h = cohomology(x, i).mod;
        if (module_is_zero(h)) continue;
        Ideal a = annihilator(h);
        acc = acc ? ideal_intersection(*acc, a) : a;
    }
    if (!acc) return unit_ideal(x.ring);
    return *acc;
}

Ideal derived_annihilator_ideal(const Complex& x) {
    const Ring& r = x.ring;
    int nonzero_degrees = 0;
    for (int i = x.lo; i <= x.hi(); ++i)
        if (!module_is_zero(cohomology(x, i).mod)) ++nonzero_degrees;
    if (nonzero_degrees == 0) throw SemanticError("derived annihilator of a zero object");

    Ideal ann = cohomology_annihilator(x);
    std::vector<Poly> result;
    for (const auto& g : ann.gens) {
        bool found = false;
        for (int e = 1; e <= nonzero_degrees && !found; ++e) {
            Poly ge = ring_reduce(r, poly_pow(r->field, r->order, g, e));
            if (null_homotopy_mult(x, ge)) {
                result.push_back(ge);
                found = true;
            }
        }
        if (!found)
            throw InternalError("derived annihilator: power bound failed (ghost lemma violated)");
    }
    return make_ideal(r, result);
}

TruncationSeries truncation_series(const Complex& x) {
    TruncationSeries ts;
    auto bounds = sup_inf(x);
    if (!bounds.first.finite()) throw SemanticError("truncation series of a zero object");
    const Ring& r = x.ring;

    Complex cur = x;
    while (true) {
        // sup of current stage
        int s = INT_MIN;
        for (int i = cur.hi(); i >= cur.lo; --i)
            if (!module_is_zero(cohomology(cur, i).mod)) {
                s = i;
                break;
            }
        if (s == INT_MIN) {
            // exhausted: previous stage had s = inf X; verify exactness of tail
            ts.tail_exact_verified = true;
            break;
        }
        TruncationStage stage;
        stage.x = cur;
        stage.s = s;
        stage.head = cohomology(cur, s).mod;
        ts.stages.push_back(stage);

        // next stage: degrees [lo, s-1], kernel subobject at s-1
        Complex next;
        next.ring = r;
        next.lo = cur.lo;
        if (s - 1 < cur.lo) {
            // nothing below: next is the zero complex
            ts.stages.back().incl_next = ChainMap{cur.lo, {}};
            ts.tail_exact_verified = true;
            break;
        }
        for (int i = cur.lo; i <= s - 2; ++i) next.terms.push_back(cur.term(i));
        // kernel of d^{s-1} as a subobject of term(s-1)
        const FgModule& top = cur.term(s - 1);
        PMat K = kernel_preimage(r, cur.diff_at(s - 1), cur.term(s).rel);
        // keep only nonzero columns; abstract presentation
        Subquotient ksub = make_subquotient(r, top.rank, K, top.rel, top.degs);
        next.terms.push_back(ksub.mod);
        for (int i = cur.lo; i <= s - 3; ++i) next.diff.push_back(cur.diff_at(i));
        if (s - 2 >= cur.lo) {
            // express d^{s-2} through the kernel generators
            PMat d = cur.diff_at(s - 2);
            PMat gens_and_rel =
                top.rel.cols > 0 ? pmat_hcat(ksub.embed, top.rel) : ksub.embed;
            SubmoduleGB gb(r, gens_and_rel);
            PMat dd(ksub.mod.rank, d.cols);
            for (int c = 0; c < d.cols; ++c) {
                auto w = gb.express(d.col(c));
                if (!w) throw InternalError("truncation: differential does not land in kernel");
                for (int t = 0; t < ksub.mod.rank; ++t) dd.at(t, c) = (*w)[t];
            }
            next.diff.push_back(dd);
        }
        // inclusion chain map X_{i+1} -> X_i
        ChainMap incl;
        incl.lo = next.lo;
        for (int i = next.lo; i <= next.hi(); ++i) {
            if (i <= s - 2)
                incl.f.push_back(pmat_identity(r, next.term(i).rank));
            else
                incl.f.push_back(ksub.embed);
        }
        ts.stages.back().incl_next = incl;

        cur = next;
        if (cur.terms.empty()) {
            ts.tail_exact_verified = true;
            break;
        }
    }
    return ts;
}

Complex hom_total_complex(const FgModule& m0, int length, const Complex& x) {
    const Ring& r = x.ring;
    FreeResolution res = resolve(m0, length);
    if (x.is_zero_complex()) {
        Complex z;
        z.ring = r;
        return z;
    }
    int lo = x.lo, hi = x.hi() + length;
    struct Block {
        int a, b, offset, ra, xr; // Hom(F_a, X^b) at degree a + b
    };
    std::vector<std::vector<Block>> layout(hi - lo + 1);
    std::vector<int> ranks(hi - lo + 1, 0);
    for (int n = lo; n <= hi; ++n) {
        int off = 0;
        for (int a = 0; a <= length; ++a) {
            int b = n - a;
            if (!x.in_range(b)) continue;
            int ra = res.ranks[a], xr = x.term(b).rank;
            if (ra == 0 || xr == 0) continue;
            layout[n - lo].push_back(Block{a, b, off, ra, xr});
            off += ra * xr;
        }
        ranks[n - lo] = off;
    }

    Complex z;
    z.ring = r;
    z.lo = lo;
    // terms: direct sums of (X^b)^{r_a} with relations inherited from X^b
    for (int n = lo; n <= hi; ++n) {
        FgModule t;
        t.ring = r;
        t.rank = ranks[n - lo];
        int relcols = 0;
        for (const auto& blk : layout[n - lo]) relcols += blk.ra * x.term(blk.b).rel.cols;
        t.rel = PMat(t.rank, relcols);
        int rc = 0;
        for (const auto& blk : layout[n - lo]) {
            const PMat& xrel = x.term(blk.b).rel;
            for (int j = 0; j < blk.ra; ++j)
                for (int c = 0; c < xrel.cols; ++c) {
                    for (int u = 0; u < blk.xr; ++u)
                        t.rel.at(blk.offset + j * blk.xr + u, rc) = xrel.at(u, c);
                    ++rc;
                }
        }
        z.terms.push_back(std::move(t));
    }
    // differentials: (a,b) -> (a,b+1) via d_X, and (a,b) -> (a+1,b) via
    // -(-1)^{a+b} (pre-composition with d_{a+1})
    for (int n = lo; n < hi; ++n) {
        PMat d(ranks[n + 1 - lo], ranks[n - lo]);
        for (const auto& src : layout[n - lo]) {
            for (const auto& dst : layout[n + 1 - lo]) {
                if (dst.a == src.a && dst.b == src.b + 1) {
                    PMat dx = x.diff_at(src.b);
                    for (int j = 0; j < src.ra; ++j)
                        for (int v = 0; v < dst.xr; ++v)
                            for (int u = 0; u < src.xr; ++u) {
                                if (dx.at(v, u).is_zero()) continue;
                                d.at(dst.offset + j * dst.xr + v, src.offset + j * src.xr + u) =
                                    dx.at(v, u);
                            }
                }
                if (dst.a == src.a + 1 && dst.b == src.b) {
                    const PMat& da = res.d[src.a]; // F_{a+1} -> F_a, ra x ra1
                    Rat sgn(((src.a + src.b) % 2 == 0) ? -1 : 1);
                    for (int l = 0; l < dst.ra; ++l)
                        for (int j = 0; j < src.ra; ++j) {
                            if (da.at(j, l).is_zero()) continue;
                            Poly coef = poly_scale(r->field, sgn, da.at(j, l));
                            for (int u = 0; u < src.xr; ++u)
                                d.at(dst.offset + l * dst.xr + u, src.offset + j * src.xr + u) =
                                    coef;
                        }
                }
            }
        }
        z.diff.push_back(d);
    }
    return z;
}

XInt complex_depth_at_prime(const Complex& x, const PrimeIdeal& p) {
    require_same_ring(x.ring, p.ideal.ring, "complex_depth_at_prime");
    if (x.is_zero_complex()) return XInt::pos_inf();
    // X_p = 0 iff no cohomology survives localization at p
    bool survives = false;
    for (int i = x.lo; i <= x.hi(); ++i) {
        FgModule h = cohomology(x, i).mod;
        if (module_is_zero(h)) continue;
        if (ideal_contains(p.ideal, annihilator(h))) {
            survives = true;
            break;
        }
    }
    if (!survives) return XInt::pos_inf();

    int dim = std::max(ring_dimension(x.ring), 0);
    int length = dim + (x.hi() - x.lo) + 1;
    FgModule Rp = cyclic_module(p.ideal);
    Complex hom = hom_total_complex(Rp, length, x);
    auto bounds = sup_inf(x);
    int scan_hi = (bounds.first.finite() ? bounds.first.value() : x.hi()) + dim;
    for (int i = hom.lo; i <= std::min(hom.hi(), scan_hi); ++i) {
        FgModule h = cohomology(hom, i).mod;
        if (module_is_zero(h)) continue;
        if (ideal_contains(p.ideal, annihilator(h))) return XInt(i);
    }
    throw InternalError("complex depth scan exceeded its ceiling");
}

PMat induced_map_on_cohomology(const ChainMap& f, const Complex& src, const Complex& dst, int j,
                               Subquotient* hsrc_out, Subquotient* hdst_out) {
    const Ring& r = src.ring;
    Subquotient hs = cohomology(src, j);
    Subquotient hd = cohomology(dst, j);
    if (hsrc_out) *hsrc_out = hs;
    if (hdst_out) *hdst_out = hd;
    if (hs.mod.rank == 0) return PMat(hd.mod.rank, 0);
    int k = j - f.lo;
    PMat fj = (k >= 0 && k < (int)f.f.size()) ? f.f[k]
                                              : PMat(dst.term(j).rank, src.term(j).rank);
    PMat mapped = pmat_mul(r, fj, hs.embed); // cycle representatives in dst ambient
    PMat denom = pmat_hcat(dst.diff_at(j - 1), dst.term(j).rel);
    PMat basis = hd.embed.cols > 0 ? pmat_hcat(hd.embed, denom) : denom;
    SubmoduleGB gb(r, basis);
    PMat out(hd.mod.rank, mapped.cols);
    for (int c = 0; c < mapped.cols; ++c) {
        auto w = gb.express(mapped.col(c));
        if (!w) throw InternalError("induced cohomology map: image is not a cycle class");
        for (int t = 0; t < hd.mod.rank; ++t) out.at(t, c) = (*w)[t];
    }
    return out;
}

bool chain_map_iso_on_cohomology(const ChainMap& f, const Complex& src, const Complex& dst,
                                 int j) {
    Subquotient hs, hd;
    PMat psi = induced_map_on_cohomology(f, src, dst, j, &hs, &hd);
    return map_well_defined(hs.mod, hd.mod, psi) && map_is_surjective(hd.mod, psi) &&
           map_is_injective(hs.mod, hd.mod, psi);
}

std::string complex_to_string(const Complex& x) {
    std::ostringstream os;
    os << "complex{";
    for (int i = x.lo; i <= x.hi(); ++i) {
        if (i > x.lo) os << "; ";
        os << i << ": rank " << x.term(i).rank;
        if (x.term(i).rel.cols > 0) os << " (+" << x.term(i).rel.cols << " rel)";
    }
    os << "}";
    return os.str();
}

} // namespace annwb
