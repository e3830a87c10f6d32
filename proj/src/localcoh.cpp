#include "annwb/localcoh.hpp"

#include <sstream>
#include <tuple>

#include "annwb/errors.hpp"
#include "annwb/fieldmat.hpp"
#include "annwb/io.hpp"

namespace annwb {

Subquotient torsion_submodule(const SpcSubset& w, const FgModule& m) {
    require_same_ring(w.ring, m.ring, "torsion_submodule");
    if (w.localized_at) throw SemanticError("torsion over a localized subset is not supported");
    const Ring& r = m.ring;
    const auto& gens = w.defining.gens;
    if (gens.empty()) {
        // W = Spec R: everything is torsion
        return make_subquotient(r, m.rank, pmat_identity(r, m.rank), m.rel, m.degs);
    }
    int q = m.rank;
    // iterate N_{t+1} = (N_t : J) inside R^q until stable; N_0 = im rel
    PMat cur = m.rel; // generators of the submodule N_t + im rel
    for (int guard = 0; guard < 64; ++guard) {
        // next = {v : g v in im(cur) + im(rel) for all gens g}
        int k = (int)gens.size();
        PMat psi(k * q, q);
        for (int gi = 0; gi < k; ++gi)
            for (int j = 0; j < q; ++j) psi.at(gi * q + j, j) = gens[gi];
        PMat target_rel(k * q, k * (cur.cols + m.rel.cols));
        int col = 0;
        for (int gi = 0; gi < k; ++gi) {
            for (int c = 0; c < cur.cols; ++c) {
                for (int j = 0; j < q; ++j) target_rel.at(gi * q + j, col) = cur.at(j, c);
                ++col;
            }
            for (int c = 0; c < m.rel.cols; ++c) {
                for (int j = 0; j < q; ++j) target_rel.at(gi * q + j, col) = m.rel.at(j, c);
                ++col;
            }
        }
        PMat next = kernel_preimage(r, psi, target_rel);
        // stable when next subseteq cur + rel
        PMat span = m.rel.cols > 0 ? pmat_hcat(cur, m.rel) : cur;
        SubmoduleGB gb(r, span);
        bool stable = true;
        for (int c = 0; c < next.cols && stable; ++c)
            if (!gb.contains(next.col(c))) stable = false;
        if (stable) {
            return make_subquotient(r, q, cur.cols > 0 ? cur : PMat(q, 0), m.rel, m.degs);
        }
        cur = next;
    }
    throw ResourceLimitError("torsion submodule did not stabilize");
}

std::optional<XInt> lc_vanishing_bound(const SpcSubset& z, const FgModule& m) {
    require_same_ring(z.ring, m.ring, "lc_vanishing_bound");
    if (z.localized_at) throw SemanticError("vanishing bound over a localized subset");
    return grade(z.defining, m);
}

std::optional<XInt> lc_vanishing_bound(const SpcSubset& z, const Complex& x) {
    require_same_ring(z.ring, x.ring, "lc_vanishing_bound");
    if (z.localized_at) throw SemanticError("vanishing bound over a localized subset");
    if (x.is_zero_complex()) return XInt::pos_inf();
    // Gamma-trivial when supp H(X) misses V(b).
    bool meets = false;
    XInt sup = XInt::neg_inf();
    for (int j = x.lo; j <= x.hi(); ++j) {
        FgModule h = cohomology(x, j).mod;
        if (module_is_zero(h)) continue;
        sup = XInt(j);
        Ideal both = ideal_sum(annihilator(h), z.defining);
        if (!ideal_is_unit(both)) meets = true;
    }
    if (!meets) return XInt::pos_inf();

    int dim = std::max(ring_dimension(x.ring), 0);
    int length = dim + (x.hi() - x.lo) + 1;
    FgModule rb = cyclic_module(z.defining);
    Complex hom = hom_total_complex(rb, length, x);
    int scan_hi = sup.value() + dim;
    for (int i = hom.lo; i <= std::min(hom.hi(), scan_hi); ++i)
        if (!module_is_zero(cohomology(hom, i).mod)) return XInt(i);
    return std::nullopt; // window exhausted; reported as inconclusive, never silently wrong
}

// ---------------------------------------------------------------------------
// Graded Cech machinery
// ---------------------------------------------------------------------------

namespace {

std::string mask_denominator(const Ring& r, const std::vector<Poly>& bgens, unsigned mask, int t) {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < bgens.size(); ++j) {
        if (!(mask & (1u << j))) continue;
        if (!first) os << "*";
        first = false;
        os << "(" << poly_to_string(r, bgens[j]) << ")^" << t;
    }
    if (first) os << "1";
    return os.str();
}

} // namespace

struct CechFrame::Impl {
    Ring ring;
    Complex x;
    std::vector<Poly> bgens;
    std::vector<int> bdeg;
    GradedWindow win;
    int m = 0;

    struct BasisElt {
        int p;
        unsigned mask;
        int gen;
        Exps mono;
    };
    struct Piece {
        std::vector<BasisElt> basis;
        std::map<std::tuple<int, unsigned, int, Exps>, int> index;
    };
    std::map<std::tuple<int, int, int>, Piece> pieces;
    std::map<std::pair<int, int>, Poly> bpow; // (j, t) -> b_j^t
    std::map<std::pair<unsigned, int>, Poly> maskprod; // (mask, e) -> (prod b_j)^e

    struct HData {
        FMat out;   // piece(i,d,t) -> piece(i+1,d,t)
        FMat bmat;  // in-map matrix, columns span the boundaries
        FMat Z;     // cocycle basis columns
        int hdim = 0;
    };
    std::map<std::tuple<int, int, int>, HData> hcache;
    std::map<std::pair<int, int>, std::optional<int>> stable_cache;

    const Poly& power(int j, int t) {
        auto key = std::make_pair(j, t);
        auto it = bpow.find(key);
        if (it != bpow.end()) return it->second;
        Poly p = ring_reduce(ring, poly_pow(ring->field, ring->order, bgens[j], t));
        return bpow.emplace(key, std::move(p)).first->second;
    }
    const Poly& mask_product(unsigned mask, int e) {
        auto key = std::make_pair(mask, e);
        auto it = maskprod.find(key);
        if (it != maskprod.end()) return it->second;
        Poly p = poly_const(ring->field, 1, ring->arity());
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) p = poly_mul(ring->field, ring->order, p, bgens[j]);
        p = ring_reduce(ring, poly_pow(ring->field, ring->order, p, e));
        return maskprod.emplace(key, std::move(p)).first->second;
    }

    int mask_degree(unsigned mask) const {
        int d = 0;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) d += bdeg[j];
        return d;
    }

    const Piece& piece(int i, int d, int t) {
        auto key = std::make_tuple(i, d, t);
        auto it = pieces.find(key);
        if (it != pieces.end()) return it->second;
        Piece pc;
        for (int p = x.lo; p <= x.hi(); ++p) {
            int q = i - p;
            if (q < 0 || q > m) continue;
            const FgModule& term = x.term(p);
            if (term.rank == 0) continue;
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                if (__builtin_popcount(mask) != q) continue;
                int gdeg = mask_degree(mask);
                for (int g = 0; g < term.rank; ++g) {
                    int want = d - (*term.degs)[g] + t * gdeg;
                    for (const auto& mono : standard_monomials(ring, want)) {
                        pc.index[{p, mask, g, mono}] = (int)pc.basis.size();
                        pc.basis.push_back(BasisElt{p, mask, g, mono});
                    }
                }
            }
        }
        return pieces.emplace(key, std::move(pc)).first->second;
    }

    // scatter coeff * poly expansion into a column of dst
    void scatter(const Piece& target, int p, unsigned mask, int gen, const Poly& poly,
                 const Rat& coeff, FMat& dst, int col) {
        for (const auto& term : poly.t) {
            auto it = target.index.find({p, mask, gen, term.m});
            if (it == target.index.end())
                throw InternalError("cech: expansion left the graded frame");
            dst.at(it->second, col) =
                ring->field.add(dst.at(it->second, col), ring->field.mul(coeff, term.c));
        }
    }

    // total differential piece(i, d, t) -> piece(i+1, d, t)
    FMat out_map(int i, int d, int t) {
        const Piece& src = piece(i, d, t);
        const Piece& dst = piece(i + 1, d, t);
        FMat f((int)dst.basis.size(), (int)src.basis.size());
        for (size_t c = 0; c < src.basis.size(); ++c) {
            const BasisElt& e = src.basis[c];
            // d_X (x) 1
            if (x.in_range(e.p + 1)) {
                PMat dx = x.diff_at(e.p);
                for (int v = 0; v < x.term(e.p + 1).rank; ++v) {
                    if (dx.at(v, e.gen).is_zero()) continue;
                    Poly prod = ring_reduce(
                        ring, term_mul(ring->field, Rat(1), e.mono, dx.at(v, e.gen)));
                    scatter(dst, e.p + 1, e.mask, v, prod, Rat(1), f, (int)c);
                }
            }
            // (-1)^p 1 (x) cech
            Rat psign((e.p % 2 == 0) ? 1 : -1);
            for (int j = 0; j < m; ++j) {
                if (e.mask & (1u << j)) continue;
                int before = 0;
                for (int l = 0; l < j; ++l)
                    if (e.mask & (1u << l)) ++before;
                Rat sgn = (before % 2 == 0) ? psign : ring->field.neg(psign);
                Poly prod =
                    ring_reduce(ring, term_mul(ring->field, Rat(1), e.mono, power(j, t)));
                scatter(dst, e.p, e.mask | (1u << j), e.gen, prod, sgn, f, (int)c);
            }
        }
        return f;
    }

    // comparison piece(i, d, t) -> piece(i, d, t+1), numerator times prod(b_S)
    FMat theta(int i, int d, int t) {
        const Piece& src = piece(i, d, t);
        const Piece& dst = piece(i, d, t + 1);
        FMat f((int)dst.basis.size(), (int)src.basis.size());
        for (size_t c = 0; c < src.basis.size(); ++c) {
            const BasisElt& e = src.basis[c];
            Poly prod =
                ring_reduce(ring, term_mul(ring->field, Rat(1), e.mono, mask_product(e.mask, 1)));
            scatter(dst, e.p, e.mask, e.gen, prod, Rat(1), f, (int)c);
        }
        return f;
    }

    // multiplication by homogeneous g: piece(i, d, t) -> piece(i, d + deg g, t)
    FMat mult_map(const Poly& g, int gdeg, int i, int d, int t) {
        const Piece& src = piece(i, d, t);
        const Piece& dst = piece(i, d + gdeg, t);
        FMat f((int)dst.basis.size(), (int)src.basis.size());
        for (size_t c = 0; c < src.basis.size(); ++c) {
            const BasisElt& e = src.basis[c];
            Poly prod = ring_reduce(ring, term_mul(ring->field, Rat(1), e.mono, g));
            scatter(dst, e.p, e.mask, e.gen, prod, Rat(1), f, (int)c);
        }
        return f;
    }

    const HData& hdata(int i, int d, int t) {
        auto key = std::make_tuple(i, d, t);
        auto it = hcache.find(key);
        if (it != hcache.end()) return it->second;
        HData h;
        h.out = out_map(i, d, t);
        h.bmat = out_map(i - 1, d, t);
        h.Z = fmat_nullspace(ring->field, h.out);
        h.hdim = h.Z.cols - fmat_rank(ring->field, h.bmat);
        return hcache.emplace(key, std::move(h)).first->second;
    }

    bool induced_bijective(int i, int d, int t) {
        const HData& a = hdata(i, d, t);
        const HData& b = hdata(i, d, t + 1);
        if (a.hdim != b.hdim) return false;
        if (a.hdim == 0) return true;
        FMat th = theta(i, d, t);
        FMat thz = fmat_mul(ring->field, th, a.Z);
        FMat lhs = fmat_hcat(thz, b.bmat);
        int r1 = fmat_rank(ring->field, lhs);
        int r2 = fmat_rank(ring->field, fmat_hcat(lhs, b.Z));
        return r1 == r2; // theta(Z_t) + B covers Z_{t+1}: surjective, hence bijective
    }

    // Smallest exponent from which every block around cohomological index i
    // can contribute numerators of internal degree d; certifying earlier risks
    // declaring trivially-empty levels stable.
    int active_level(int i, int d) {
        int t0 = 1;
        for (int ii = i - 1; ii <= i + 1; ++ii) {
            for (int p = x.lo; p <= x.hi(); ++p) {
                int q = ii - p;
                if (q < 1 || q > m) continue; // mask-free blocks are t-independent
                const FgModule& term = x.term(p);
                for (unsigned mask = 0; mask < (1u << m); ++mask) {
                    if (__builtin_popcount(mask) != q) continue;
                    int gdeg = mask_degree(mask);
                    if (gdeg <= 0) continue;
                    for (int g = 0; g < term.rank; ++g) {
                        int deficit = (*term.degs)[g] - d;
                        if (deficit > 0) t0 = std::max(t0, (deficit + gdeg - 1) / gdeg);
                    }
                }
            }
        }
        return t0;
    }

    std::optional<int> stable_base(int i, int d) {
        auto key = std::make_pair(i, d);
        auto it = stable_cache.find(key);
        if (it != stable_cache.end()) return it->second;
        std::optional<int> res;
        for (int t = active_level(i, d); t + 2 <= win.t_max; ++t) {
            if (induced_bijective(i, d, t) && induced_bijective(i, d, t + 1)) {
                res = t;
                break;
            }
        }
        stable_cache[key] = res;
        return res;
    }

    // class representatives at level t: columns of Z extending the boundary span
    std::vector<std::vector<Rat>> class_reps(int i, int d, int t) {
        const HData& h = hdata(i, d, t);
        std::vector<std::vector<Rat>> reps;
        FMat acc = h.bmat;
        int base_rank = fmat_rank(ring->field, acc);
        for (int c = 0; c < h.Z.cols; ++c) {
            FMat cand(acc.rows, acc.cols + 1);
            for (int r = 0; r < acc.rows; ++r) {
                for (int cc = 0; cc < acc.cols; ++cc) cand.at(r, cc) = acc.at(r, cc);
                cand.at(r, acc.cols) = h.Z.at(r, c);
            }
            int nr = fmat_rank(ring->field, cand);
            if (nr > base_rank) {
                std::vector<Rat> v(h.Z.rows);
                for (int r = 0; r < h.Z.rows; ++r) v[r] = h.Z.at(r, c);
                reps.push_back(std::move(v));
                acc = cand;
                base_rank = nr;
            }
        }
        return reps;
    }

    std::string vector_to_string(const std::vector<Rat>& v, int i, int d, int t) {
        const Piece& pc = piece(i, d, t);
        std::ostringstream os;
        bool first = true;
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0) continue;
            const BasisElt& e = pc.basis[k];
            if (!first) os << " + ";
            first = false;
            if (v[k] != 1) os << v[k].get_str() << "*";
            Poly mono = poly_term(ring->field, Rat(1), e.mono);
            os << poly_to_string(ring, mono) << "/" << mask_denominator(ring, bgens, e.mask, t)
               << " e[p=" << e.p << ",g=" << e.gen << "]";
        }
        if (first) os << "0";
        return os.str();
    }
};

CechFrame::CechFrame(const SpcSubset& z, const Complex& x, const GradedWindow& win) : win_(win) {
    if (win.d_lo > win.d_hi || win.h_lo > win.h_hi || win.t_max < 1)
        throw SemanticError("graded window is empty or has t_max < 1");
    require_same_ring(z.ring, x.ring, "cech frame");
    if (z.localized_at) throw SemanticError("cech over a localized subset");
    if (!x.ring->graded()) throw SemanticError("graded local cohomology needs a graded ring");
    if (!x.free_termed()) throw SemanticError("graded local cohomology needs free terms");
    for (const auto& t : x.terms)
        if (t.rank > 0 && !t.graded())
            throw SemanticError("graded local cohomology needs graded terms");
    auto impl = std::make_shared<Impl>();
    impl->ring = x.ring;
    impl->x = x;
    impl->win = win;
    impl->bgens = display_basis(z.defining);
    if (impl->bgens.empty())
        throw SemanticError("cech frame over the zero ideal is not supported; Gamma is identity");
    for (const auto& g : impl->bgens) {
        int d = 0;
        if (!poly_is_homogeneous(g, *x.ring->weights, &d))
            throw SemanticError("defining ideal of Z must be homogeneous");
        impl->bdeg.push_back(d);
    }
    impl->m = (int)impl->bgens.size();
    if (impl->m > 20) throw ResourceLimitError("too many Cech generators");
    impl_ = std::move(impl);
}

std::optional<CechFrame::StablePiece> CechFrame::stable_piece(int i, int d) {
    auto base = impl_->stable_base(i, d);
    if (!base) return std::nullopt;
    StablePiece sp;
    sp.level = *base;
    sp.dim = impl_->hdata(i, d, *base).hdim;
    auto reps = impl_->class_reps(i, d, *base);
    for (const auto& v : reps) sp.basis.push_back(impl_->vector_to_string(v, i, d, *base));
    return sp;
}

int CechFrame::kills_classes(const Poly& g, int i, int d, std::string* witness_out,
                             int* witness_degree_out) {
    Impl& im = *impl_;
    Poly gg = ring_reduce(im.ring, g);
    if (gg.is_zero()) return 1;
    int gdeg = 0;
    if (!poly_is_homogeneous(gg, *im.ring->weights, &gdeg))
        throw SemanticError("annihilation test needs homogeneous generators");
    auto base = im.stable_base(i, d);
    if (!base) return -1;
    int t0 = *base;
    if (im.hdata(i, d, t0).hdim == 0) return 1;
    auto reps = im.class_reps(i, d, t0);
    int d2 = d + gdeg;
    auto target_base = im.stable_base(i, d2);
    for (const auto& z : reps) {
        FMat zz((int)z.size(), 1);
        for (size_t r = 0; r < z.size(); ++r) zz.at((int)r, 0) = z[r];
        FMat w = fmat_mul(im.ring->field, im.mult_map(gg, gdeg, i, d, t0), zz);
        bool resolved = false;
        for (int lvl = t0; lvl < im.win.t_max && !resolved; ++lvl) {
            const auto& h = im.hdata(i, d2, lvl);
            std::vector<Rat> wv(w.rows);
            for (int r = 0; r < w.rows; ++r) wv[r] = w.at(r, 0);
            if (fmat_in_colspace(im.ring->field, h.bmat, wv)) {
                resolved = true; // dies at this level, hence in the colimit
                break;
            }
            if (target_base && lvl >= *target_base) {
                if (witness_out)
                    *witness_out = im.vector_to_string(
                        std::vector<Rat>(w.a.begin(), w.a.end()), i, d2, lvl);
                if (witness_degree_out) *witness_degree_out = d2;
                return 0;
            }
            w = fmat_mul(im.ring->field, im.theta(i, d2, lvl), w);
        }
        if (!resolved) return -1;
    }
    return 1;
}

LcTable graded_local_cohomology(const SpcSubset& z, const Complex& x, int i,
                                const GradedWindow& win) {
    CechFrame frame(z, x, win);
    LcTable table;
    table.i = i;
    for (int d = win.d_lo; d <= win.d_hi; ++d) {
        auto sp = frame.stable_piece(i, d);
        LcPiece piece;
        piece.d = d;
        if (sp) {
            piece.dim = sp->dim;
            piece.stable = true;
            piece.level = sp->level;
            piece.basis = sp->basis;
        } else {
            piece.stable = false;
            piece.level = win.t_max;
            piece.dim = -1; // unknown
        }
        table.pieces.push_back(std::move(piece));
    }
    return table;
}

AnnihilationVerdict annihilation_test(const Ideal& b, const SpcSubset& z, const Complex& x, int n,
                                      const GradedWindow& win) {
    require_same_ring(b.ring, x.ring, "annihilation_test");
    AnnihilationVerdict v;

    // nothing to annihilate: exact vanishing certificate
    auto bound = lc_vanishing_bound(z, x);
    if (bound && *bound >= XInt(n)) {
        v.kind = AnnihilationVerdict::HoldsCertified;
        v.note = "vacuous: H^{<n}_Z(X) = 0";
        return v;
    }

    // certified upgrade: b acts null-homotopically on X, killing every H_Z
    if (x.free_termed() && !b.gens.empty()) {
        bool all = true;
        for (const auto& g : b.gens)
            if (!null_homotopy_mult(x, g)) {
                all = false;
                break;
            }
        if (all) {
            v.kind = AnnihilationVerdict::HoldsCertified;
            v.note = "generators act null-homotopically on X";
            return v;
        }
    }
    if (b.gens.empty()) {
        // zero ideal annihilates everything
        v.kind = AnnihilationVerdict::HoldsCertified;
        v.note = "zero ideal";
        return v;
    }

    CechFrame frame(z, x, win);
    bool any_inconclusive = false;
    for (int i = win.h_lo; i <= std::min(n - 1, win.h_hi); ++i) {
        for (int d = win.d_hi; d >= win.d_lo; --d) {
            for (const auto& g : b.gens) {
                std::string witness;
                int wd = d;
                int res = frame.kills_classes(g, i, d, &witness, &wd);
                if (res == 0) {
                    v.kind = AnnihilationVerdict::Fails;
                    v.witness_i = i;
                    v.witness_d = wd;
                    v.witness_class = witness;
                    v.witness_gen = poly_to_string(x.ring, g);
                    return v;
                }
                if (res < 0) any_inconclusive = true;
            }
        }
    }
    v.kind = any_inconclusive ? AnnihilationVerdict::Inconclusive
                              : AnnihilationVerdict::HoldsOnWindow;
    return v;
}

} // namespace annwb
