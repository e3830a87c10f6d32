#include "annwb/module.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/fieldmat.hpp"
#include "annwb/io.hpp"

namespace annwb {

namespace {

// Degree of a homogeneous column of R^{degs}; nullopt for inhomogeneous data.
std::optional<int> column_degree(const Ring& r, const VecPoly& col, const std::vector<int>& degs) {
    std::optional<int> d;
    for (size_t i = 0; i < col.size(); ++i) {
        if (col[i].is_zero()) continue;
        int ed = 0;
        if (!poly_is_homogeneous(col[i], *r->weights, &ed)) return std::nullopt;
        int total = ed + degs[i];
        if (!d)
            d = total;
        else if (*d != total)
            return std::nullopt;
    }
    return d ? d : std::optional<int>(0);
}

std::optional<std::vector<int>> columns_degrees(const Ring& r, const PMat& m,
                                                const std::vector<int>& degs) {
    std::vector<int> out;
    for (int c = 0; c < m.cols; ++c) {
        auto d = column_degree(r, m.col(c), degs);
        if (!d) return std::nullopt;
        out.push_back(*d);
    }
    return out;
}

} // namespace

FgModule free_module(const Ring& r, int rank, std::optional<std::vector<int>> degs) {
    FgModule m;
    m.ring = r;
    m.rank = rank;
    m.rel = PMat(rank, 0);
    if (degs) {
        if ((int)degs->size() != rank) throw SemanticError("degree vector does not match rank");
        m.degs = std::move(degs);
    } else if (r->graded()) {
        m.degs = std::vector<int>(rank, 0);
    }
    return m;
}

FgModule coker_module(const Ring& r, PMat rel, std::optional<std::vector<int>> degs) {
    FgModule m;
    m.ring = r;
    m.rank = rel.rows;
    m.rel = pmat_reduce(r, rel);
    if (degs) {
        if ((int)degs->size() != m.rank) throw SemanticError("degree vector does not match rank");
        m.degs = std::move(degs);
    } else if (r->graded()) {
        std::vector<int> zero(m.rank, 0);
        if (columns_degrees(r, m.rel, zero))
            m.degs = zero; // homogeneous presentation over the standard grading
    }
    validate_module(m);
    return m;
}

FgModule cyclic_module(const Ideal& I) {
    PMat rel(1, (int)I.gens.size());
    for (size_t j = 0; j < I.gens.size(); ++j) rel.at(0, (int)j) = I.gens[j];
    return coker_module(I.ring, rel);
}

FgModule zero_module(const Ring& r) { return free_module(r, 0); }

void validate_module(const FgModule& m) {
    if (m.rel.rows != m.rank) throw SemanticError("relation matrix row count must equal rank");
    if (m.degs) {
        if (!m.ring->graded()) throw SemanticError("graded module over ungraded ring");
        if ((int)m.degs->size() != m.rank) throw SemanticError("degree vector does not match rank");
        if (!columns_degrees(m.ring, m.rel, *m.degs))
            throw SemanticError("relation columns must be homogeneous in a graded module");
    }
}

bool module_is_zero(const FgModule& m) {
    if (m.rank == 0) return true;
    SubmoduleGB gb(m.ring, m.rel);
    for (int j = 0; j < m.rank; ++j) {
        VecPoly e(m.rank);
        e[j] = poly_const(m.ring->field, 1, m.ring->arity());
        if (!gb.contains(e)) return false;
    }
    return true;
}

std::string module_to_string(const FgModule& m) {
    std::ostringstream os;
    os << "coker R^" << m.rank << " <- " << pmat_to_string(m.ring, m.rel);
    if (m.degs) {
        os << " graded [";
        for (int i = 0; i < m.rank; ++i) {
            if (i) os << ", ";
            os << (*m.degs)[i];
        }
        os << "]";
    }
    return os.str();
}

FgModule module_sum(const FgModule& a, const FgModule& b) {
    require_same_ring(a.ring, b.ring, "module_sum");
    FgModule m;
    m.ring = a.ring;
    m.rank = a.rank + b.rank;
    m.rel = PMat(m.rank, a.rel.cols + b.rel.cols);
    for (int r = 0; r < a.rank; ++r)
        for (int c = 0; c < a.rel.cols; ++c) m.rel.at(r, c) = a.rel.at(r, c);
    for (int r = 0; r < b.rank; ++r)
        for (int c = 0; c < b.rel.cols; ++c) m.rel.at(a.rank + r, a.rel.cols + c) = b.rel.at(r, c);
    if (a.degs && b.degs) {
        std::vector<int> d = *a.degs;
        d.insert(d.end(), b.degs->begin(), b.degs->end());
        m.degs = std::move(d);
    }
    return m;
}

PMat minimize_generators(const Ring& r, const PMat& cols, bool graded) {
    std::vector<VecPoly> kept;
    for (int c = 0; c < cols.cols; ++c) {
        VecPoly v = vp_reduce(r, cols.col(c));
        if (!vp_is_zero(v)) kept.push_back(std::move(v));
    }
    if (graded) {
        bool changed = true;
        while (changed && kept.size() > 1) {
            changed = false;
            // test highest-degree-last: drop any column in the span of the others
            for (size_t t = kept.size(); t-- > 0;) {
                std::vector<VecPoly> others;
                for (size_t j = 0; j < kept.size(); ++j)
                    if (j != t) others.push_back(kept[j]);
                PMat om = pmat_from_cols(cols.rows, others);
                if (submodule_contains(r, om, kept[t])) {
                    kept.erase(kept.begin() + (long)t);
                    changed = true;
                    break;
                }
            }
        }
        if (kept.size() == 1) {
            if (vp_is_zero(kept[0])) kept.clear();
        }
    }
    return pmat_from_cols(cols.rows, kept);
}

Subquotient make_subquotient(const Ring& r, int amb_rank, const PMat& num, const PMat& denom,
                             const std::optional<std::vector<int>>& amb_degs) {
    std::vector<VecPoly> gens;
    for (int c = 0; c < num.cols; ++c) {
        VecPoly v = vp_reduce(r, num.col(c));
        if (!vp_is_zero(v)) gens.push_back(std::move(v));
    }
    PMat ng = pmat_from_cols(amb_rank, gens);
    Subquotient sq;
    sq.embed = ng;
    sq.mod.ring = r;
    sq.mod.rank = ng.cols;
    sq.mod.rel = kernel_preimage(r, ng, denom);
    if (amb_degs && r->graded()) {
        auto ds = columns_degrees(r, ng, *amb_degs);
        if (ds) sq.mod.degs = std::move(ds);
    }
    return sq;
}

Subquotient homology_at(const FgModule& P, const FgModule& Q, const PMat& psi, const PMat& chi) {
    const Ring& r = P.ring;
    if (psi.rows != Q.rank || psi.cols != P.rank) throw InternalError("homology_at: psi shape");
    if (chi.rows != P.rank) throw InternalError("homology_at: chi shape");
    PMat K = kernel_preimage(r, psi, Q.rel);
    PMat denom = pmat_hcat(chi, P.rel);
    return make_subquotient(r, P.rank, K, denom, P.degs);
}

namespace {

std::mutex g_res_mutex;
std::map<std::string, FreeResolution> g_res_cache;

} // namespace

std::string module_hash_key(const FgModule& m) {
    std::ostringstream os;
    os << ring_to_string(m.ring) << "#" << m.rank << "#" << pmat_to_string(m.ring, m.rel);
    if (m.degs) {
        os << "#[";
        for (int d : *m.degs) os << d << ",";
        os << "]";
    }
    return os.str();
}

FreeResolution resolve(const FgModule& m, int length) {
    if (length < 1) throw SemanticError("resolution length must be >= 1");
    validate_module(m);
    std::string key = module_hash_key(m);
    {
        std::lock_guard<std::mutex> lk(g_res_mutex);
        auto it = g_res_cache.find(key);
        if (it != g_res_cache.end() && it->second.length() >= length) {
            FreeResolution res = it->second;
            res.d.resize(length);
            res.ranks.resize(length + 1);
            if (!res.gen_degs.empty()) res.gen_degs.resize(length + 1);
            return res;
        }
    }

    bool graded = m.graded();
    FreeResolution res;
    res.module = m;
    res.ranks.push_back(m.rank);
    if (graded) res.gen_degs.push_back(*m.degs);

    PMat d1 = minimize_generators(m.ring, m.rel, graded);
    res.d.push_back(d1);
    res.ranks.push_back(d1.cols);
    if (graded) {
        auto ds = columns_degrees(m.ring, d1, *m.degs);
        if (!ds) throw InternalError("graded resolution: inhomogeneous relations");
        res.gen_degs.push_back(*ds);
    }

    while (res.length() < length) {
        const PMat& prev = res.d.back();
        PMat next = prev.cols == 0 ? PMat(0, 0) : syzygy_matrix(m.ring, prev);
        next = minimize_generators(m.ring, next, graded);
        if (next.rows != res.ranks.back()) {
            // normalize shape for empty steps
            PMat fixed(res.ranks.back(), next.cols);
            for (int rr = 0; rr < std::min(next.rows, fixed.rows); ++rr)
                for (int cc = 0; cc < next.cols; ++cc) fixed.at(rr, cc) = next.at(rr, cc);
            next = fixed;
        }
        res.d.push_back(next);
        res.ranks.push_back(next.cols);
        if (graded) {
            auto ds = columns_degrees(m.ring, next, res.gen_degs.back());
            if (!ds) throw InternalError("graded resolution: inhomogeneous syzygies");
            res.gen_degs.push_back(*ds);
        }
    }

    {
        std::lock_guard<std::mutex> lk(g_res_mutex);
        auto it = g_res_cache.find(key);
        if (it == g_res_cache.end() || it->second.length() < res.length()) g_res_cache[key] = res;
    }
    return res;
}

FgModule ext_module(int i, const FgModule& M, const FgModule& N) {
    require_same_ring(M.ring, N.ring, "ext");
    if (i < 0) throw SemanticError("ext: negative index");
    const Ring& r = M.ring;
    FreeResolution res = resolve(M, i + 1);
    int q = N.rank;
    bool graded = !res.gen_degs.empty() && N.graded();

    // Hom(F_k, N) = N^{r_k}, generators indexed (j, a) -> j*q + a.
    auto hom_module = [&](int k) {
        int rk = res.ranks[k];
        FgModule H;
        H.ring = r;
        H.rank = rk * q;
        H.rel = PMat(H.rank, rk * N.rel.cols);
        for (int j = 0; j < rk; ++j)
            for (int c = 0; c < N.rel.cols; ++c)
                for (int a = 0; a < q; ++a)
                    H.rel.at(j * q + a, j * N.rel.cols + c) = N.rel.at(a, c);
        if (graded) {
            std::vector<int> ds(H.rank);
            for (int j = 0; j < rk; ++j)
                for (int a = 0; a < q; ++a) ds[j * q + a] = (*N.degs)[a] - res.gen_degs[k][j];
            H.degs = std::move(ds);
        }
        return H;
    };

    // Hom(F_k, N) -> Hom(F_{k+1}, N), f |-> f . d_{k+1}.
    auto hom_map = [&](int k) {
        int rk = res.ranks[k], rk1 = res.ranks[k + 1];
        const PMat& d = res.d[k]; // F_{k+1} -> F_k, rk x rk1
        PMat h(rk1 * q, rk * q);
        for (int l = 0; l < rk1; ++l)
            for (int j = 0; j < rk; ++j)
                for (int a = 0; a < q; ++a) h.at(l * q + a, j * q + a) = d.at(j, l);
        return h;
    };

    FgModule P = hom_module(i);
    FgModule Q = hom_module(i + 1);
    PMat psi = hom_map(i);
    PMat chi = i == 0 ? PMat(P.rank, 0) : hom_map(i - 1);
    return homology_at(P, Q, psi, chi).mod;
}

namespace {

Ideal submodule_transporter(const Ring& r, const PMat& N, const VecPoly& v) {
    // (im N : v) = first coordinates of syzygies of [v | N]
    PMat vm = pmat_from_cols((int)v.size(), {v});
    PMat both = N.cols > 0 ? pmat_hcat(vm, N) : vm;
    PMat syz = syzygy_matrix(r, both);
    std::vector<Poly> gens;
    for (int c = 0; c < syz.cols; ++c)
        if (!syz.at(0, c).is_zero()) gens.push_back(syz.at(0, c));
    return make_ideal(r, gens);
}

} // namespace

Ideal annihilator(const FgModule& m) {
    if (m.rank == 0) return unit_ideal(m.ring);
    std::optional<Ideal> acc;
    for (int j = 0; j < m.rank; ++j) {
        VecPoly e(m.rank);
        e[j] = poly_const(m.ring->field, 1, m.ring->arity());
        Ideal t = submodule_transporter(m.ring, m.rel, e);
        acc = acc ? ideal_intersection(*acc, t) : t;
    }
    return *acc;
}

std::pair<Ideal, SpcSubset> annihilator_and_support(const FgModule& m) {
    Ideal ann = annihilator(m);
    return {ann, spc_closed(ann)};
}

XInt grade(const Ideal& a, const FgModule& m) {
    require_same_ring(a.ring, m.ring, "grade");
    // M/aM = 0 detects grade infinity up front.
    PMat maM = m.rel;
    for (const auto& g : a.gens) {
        PMat gI = pmat_scale(m.ring, g, pmat_identity(m.ring, m.rank));
        maM = pmat_hcat(maM, gI);
    }
    FgModule quot;
    quot.ring = m.ring;
    quot.rank = m.rank;
    quot.rel = maM;
    if (module_is_zero(quot)) return XInt::pos_inf();

    FgModule Ra = cyclic_module(a);
    int ceiling = std::max(ring_dimension(m.ring), 0);
    for (int i = 0; i <= ceiling; ++i) {
        if (!module_is_zero(ext_module(i, Ra, m))) return XInt(i);
    }
    throw InternalError("grade scan exceeded the dimension ceiling");
}

XInt local_depth(const FgModule& m, const PrimeIdeal& p) {
    require_same_ring(m.ring, p.ideal.ring, "local_depth");
    Ideal ann = annihilator(m);
    if (!ideal_contains(p.ideal, ann)) return XInt::pos_inf(); // M_p = 0
    FgModule Rp = cyclic_module(p.ideal);
    int ceiling = std::max(ring_dimension(m.ring), 0);
    for (int i = 0; i <= ceiling; ++i) {
        FgModule e = ext_module(i, Rp, m);
        if (module_is_zero(e)) continue;
        Ideal anne = annihilator(e);
        if (ideal_contains(p.ideal, anne)) return XInt(i); // Ext^i localizes nonzero at p
    }
    throw InternalError("local_depth scan exceeded the dimension ceiling");
}

bool mcm_test(const FgModule& m, const PrimeIdeal& p) {
    XInt d = local_depth(m, p);
    return d >= XInt(prime_height(p));
}

std::vector<Exps> standard_monomials(const Ring& r, int d) {
    std::vector<Exps> out;
    if (d < 0) return out;
    if (!r->graded()) throw SemanticError("standard_monomials requires a graded ring");
    const auto& w = *r->weights;
    int n = r->arity();
    Exps cur(n, 0);
    std::vector<Exps> quotient_leads;
    for (const auto& q : r->quotient) quotient_leads.push_back(q.lead().m);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == n) {
            if (remaining != 0) return;
            for (const auto& lm : quotient_leads)
                if (mono_divides(lm, cur)) return;
            out.push_back(cur);
            return;
        }
        for (int e = 0; e * w[var] <= remaining; ++e) {
            cur[var] = e;
            self(self, var + 1, remaining - e * w[var]);
        }
        cur[var] = 0;
    };
    rec(rec, 0, d);
    return out;
}

int hilbert_function(const FgModule& m, int d) {
    const Ring& r = m.ring;
    if (!m.graded()) throw SemanticError("hilbert_function requires graded data");
    const auto& degs = *m.degs;
    // frame: per generator j, standard monomials of degree d - degs[j]
    std::vector<std::vector<Exps>> frame(m.rank);
    std::map<std::pair<int, Exps>, int> index;
    int total = 0;
    for (int j = 0; j < m.rank; ++j) {
        frame[j] = standard_monomials(r, d - degs[j]);
        for (const auto& mm : frame[j]) index[{j, mm}] = total++;
    }
    if (total == 0) return 0;

    auto expand = [&](const VecPoly& v, FMat& dst, int col) {
        for (int j = 0; j < m.rank; ++j)
            for (const auto& t : v[j].t) {
                auto it = index.find({j, t.m});
                if (it == index.end()) throw InternalError("hilbert: monomial outside frame");
                dst.at(it->second, col) = t.c;
            }
    };

    // relation multiples spanning im(rel)_d
    std::vector<VecPoly> cols;
    for (int c = 0; c < m.rel.cols; ++c) {
        VecPoly col = m.rel.col(c);
        auto cd = column_degree(r, col, degs);
        if (!cd) throw InternalError("hilbert: inhomogeneous relation");
        for (const auto& mm : standard_monomials(r, d - *cd)) {
            VecPoly shifted(m.rank);
            for (int j = 0; j < m.rank; ++j)
                shifted[j] = ring_reduce(r, term_mul(r->field, Rat(1), mm, col[j]));
            cols.push_back(std::move(shifted));
        }
    }
    FMat mat(total, (int)cols.size());
    for (size_t c = 0; c < cols.size(); ++c) expand(cols[c], mat, (int)c);
    return total - fmat_rank(r->field, mat);
}

FgModule quotient_by_image(const FgModule& target, const PMat& image_cols) {
    FgModule q;
    q.ring = target.ring;
    q.rank = target.rank;
    q.rel = image_cols.cols > 0 ? pmat_hcat(target.rel, image_cols) : target.rel;
    return q;
}

bool map_well_defined(const FgModule& P, const FgModule& Q, const PMat& phi) {
    if (P.rel.cols == 0) return true;
    PMat img = pmat_mul(P.ring, phi, P.rel);
    SubmoduleGB gb(Q.ring, Q.rel);
    for (int c = 0; c < img.cols; ++c)
        if (!gb.contains(img.col(c))) return false;
    return true;
}

bool map_is_injective(const FgModule& P, const FgModule& Q, const PMat& phi) {
    PMat K = kernel_preimage(P.ring, phi, Q.rel);
    if (K.cols == 0) return true;
    SubmoduleGB gb(P.ring, P.rel);
    for (int c = 0; c < K.cols; ++c)
        if (!gb.contains(K.col(c))) return false;
    return true;
}

bool map_is_surjective(const FgModule& Q, const PMat& phi) {
    return module_is_zero(quotient_by_image(Q, phi));
}

} // namespace annwb
