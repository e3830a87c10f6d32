#include "annwb/runner.hpp"

#include <functional>
#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

namespace {

std::vector<std::string> split_list_token(const std::string& tok) {
    // "[a, b, c]" -> names
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
        throw SemanticError("expected a bracketed list, got '" + tok + "'");
    std::vector<std::string> out;
    std::string inner = tok.substr(1, tok.size() - 2);
    std::string cur;
    for (char c : inner) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int parse_int_token(const std::string& tok) {
    size_t idx = 0;
    int v = std::stoi(tok, &idx);
    if (idx != tok.size()) throw SemanticError("expected an integer, got '" + tok + "'");
    return v;
}

std::pair<int, int> parse_range_token(const std::string& tok) {
    size_t dots = tok.find("..");
    if (dots == std::string::npos) throw SemanticError("expected a..b range, got '" + tok + "'");
    return {std::stoi(tok.substr(0, dots)), std::stoi(tok.substr(dots + 2))};
}

struct Checker {
    const Session& s;
    const std::vector<std::string>& raw;
    size_t pos = 0;
    std::vector<std::string> canon;

    std::string next(const char* what) {
        if (pos >= raw.size()) throw SemanticError(std::string("missing argument: ") + what);
        return raw[pos++];
    }
    void done() {
        if (pos != raw.size()) throw SemanticError("trailing command arguments");
    }
    void word(const std::string& w) {
        std::string t = next(w.c_str());
        if (t != w) throw SemanticError("expected '" + w + "', got '" + t + "'");
        canon.push_back(w);
    }
    std::string any_word(const char* what) {
        std::string t = next(what);
        canon.push_back(t);
        return t;
    }
    int integer(const char* what) {
        std::string t = next(what);
        int v = parse_int_token(t);
        canon.push_back(std::to_string(v));
        return v;
    }
    Ideal ideal() {
        std::string t = next("ideal");
        if (!t.empty() && t.front() == '<') {
            // inline literal, parsed in the most recently declared ring
            if (s.rings.empty()) throw SemanticError("inline ideal literal needs a ring");
            const Ring& r = s.rings.back().second;
            Ideal id = make_ideal(r, [&] {
                std::string inner = t.substr(1, t.size() - 2);
                std::vector<Poly> gens;
                std::string cur;
                int depth = 0;
                for (char ch : inner) {
                    if (ch == '(') ++depth;
                    if (ch == ')') --depth;
                    if (ch == ',' && depth == 0) {
                        gens.push_back(parse_poly(r, cur));
                        cur.clear();
                    } else {
                        cur += ch;
                    }
                }
                if (cur.find_first_not_of(" \t") != std::string::npos)
                    gens.push_back(parse_poly(r, cur));
                return gens;
            }());
            canon.push_back(ideal_gens_to_string(r, id.gens));
            return id;
        }
        const Ideal* p = s.find_ideal(t);
        if (!p) throw SemanticError("unknown ideal '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const PrimeIdeal& prime() {
        std::string t = next("prime");
        const PrimeIdeal* p = s.find_prime(t);
        if (!p) throw SemanticError("unknown prime '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const FgModule& module() {
        std::string t = next("module");
        const FgModule* p = s.find_module(t);
        if (!p) throw SemanticError("unknown module '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const Complex& complex() {
        std::string t = next("complex");
        const Complex* p = s.find_complex(t);
        if (!p) throw SemanticError("unknown complex '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const SpcSubset& spc() {
        std::string t = next("subset");
        const SpcSubset* p = s.find_spc(t);
        if (!p) throw SemanticError("unknown subset '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const PosetPtr& poset() {
        std::string t = next("poset");
        const PosetPtr* p = s.find_poset(t);
        if (!p) throw SemanticError("unknown poset '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const SpFiltration& spfilt() {
        std::string t = next("sp-filtration");
        const SpFiltration* p = s.find_spfilt(t);
        if (!p) throw SemanticError("unknown sp-filtration '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const TFunction& tfunc() {
        std::string t = next("t-function");
        const TFunction* p = s.find_tfunc(t);
        if (!p) throw SemanticError("unknown t-function '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const RingFiltration& ringfilt() {
        std::string t = next("ring filtration");
        const RingFiltration* p = s.find_ringfilt(t);
        if (!p) throw SemanticError("unknown ring filtration '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    const PrimePairList& pairs() {
        std::string t = next("pair list");
        const PrimePairList* p = s.find_pairs(t);
        if (!p) throw SemanticError("unknown pair list '" + t + "'");
        canon.push_back(t);
        return *p;
    }
    Poly poly_in(const Ring& r, const char* what) {
        std::string t = next(what);
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
        Poly p = parse_poly(r, t);
        canon.push_back("(" + poly_to_string(r, p) + ")");
        return p;
    }
    std::vector<PrimeIdeal> prime_list() {
        std::string t = next("prime list");
        std::vector<PrimeIdeal> out;
        std::string c = "[";
        bool first = true;
        for (const auto& nm : split_list_token(t)) {
            const PrimeIdeal* p = s.find_prime(nm);
            if (!p) throw SemanticError("unknown prime '" + nm + "'");
            out.push_back(*p);
            if (!first) c += ", ";
            first = false;
            c += nm;
        }
        c += "]";
        canon.push_back(c);
        return out;
    }
};

std::string depth_target_kind(const Session& s, const std::string& name) {
    if (s.find_module(name)) return "module";
    if (s.find_complex(name)) return "complex";
    throw SemanticError("unknown module or complex '" + name + "'");
}

void validate_tokens(const Session& s, const std::vector<std::string>& raw,
                     std::vector<std::string>& canon);

void validate_inner(Checker& ck) {
    const Session& s = ck.s;
    std::string verb = ck.any_word("command verb");
    if (verb == "gb" || verb == "dim") {
        ck.ideal();
        ck.done();
    } else if (verb == "nf") {
        // poly token first, ideal second; the poly parses in the ideal's ring
        std::string polytok = ck.next("polynomial");
        const Ideal& id = ck.ideal();
        std::string t = polytok;
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
        Poly p = parse_poly(id.ring, t);
        ck.canon.insert(ck.canon.end() - 1, "(" + poly_to_string(id.ring, p) + ")");
        ck.done();
    } else if (verb == "height") {
        ck.prime();
        ck.prime();
        ck.done();
    } else if (verb == "avoid") {
        ck.ideal();
        ck.prime_list();
        ck.done();
    } else if (verb == "grade") {
        ck.ideal();
        ck.module();
        ck.done();
    } else if (verb == "depth") {
        std::string nm = ck.next("module or complex");
        depth_target_kind(s, nm);
        ck.canon.push_back(nm);
        ck.word("at");
        ck.prime();
        ck.done();
    } else if (verb == "mcm") {
        ck.module();
        ck.word("at");
        ck.prime();
        ck.done();
    } else if (verb == "ext") {
        ck.integer("i");
        ck.module();
        ck.module();
        ck.done();
    } else if (verb == "resolve") {
        ck.module();
        ck.integer("length");
        ck.done();
    } else if (verb == "ann" || verb == "supp") {
        ck.module();
        ck.done();
    } else if (verb == "bounds") {
        ck.complex();
        ck.done();
    } else if (verb == "cohom") {
        ck.complex();
        ck.integer("i");
        ck.done();
    } else if (verb == "torsion") {
        ck.spc();
        ck.module();
        ck.done();
    } else if (verb == "lc") {
        std::string sub = ck.any_word("bound|table");
        if (sub == "bound") {
            ck.spc();
            std::string nm = ck.next("module or complex");
            depth_target_kind(s, nm);
            ck.canon.push_back(nm);
            ck.done();
        } else if (sub == "table") {
            ck.spc();
            ck.complex();
            ck.integer("i");
            ck.done();
        } else {
            throw SemanticError("lc: expected bound or table");
        }
    } else if (verb == "annihilates") {
        ck.ideal();
        ck.spc();
        ck.complex();
        ck.integer("n");
        ck.done();
    } else if (verb == "spfilt") {
        std::string sub = ck.any_word("roundtrip|cousin|tcheck");
        if (sub == "roundtrip") {
            ck.poset();
            ck.integer("lo");
            ck.integer("hi");
            ck.done();
        } else if (sub == "cousin") {
            ck.spfilt();
            ck.done();
        } else if (sub == "tcheck") {
            ck.tfunc();
            std::string mode = ck.any_word("full|saturated");
            if (mode != "full" && mode != "saturated")
                throw SemanticError("tcheck mode must be full or saturated");
            ck.done();
        } else {
            throw SemanticError("spfilt: unknown subcommand '" + sub + "'");
        }
    } else if (verb == "tstruct") {
        std::string sub = ck.any_word("member|psi|lemma19");
        if (sub == "member") {
            ck.complex();
            ck.ringfilt();
            ck.done();
        } else if (sub == "psi") {
            ck.ringfilt();
            std::string pt = ck.next("primes=[...]");
            if (pt.rfind("primes=", 0) != 0) throw SemanticError("expected primes=[...]");
            for (const auto& nm : split_list_token(pt.substr(7)))
                if (!s.find_prime(nm)) throw SemanticError("unknown prime '" + nm + "'");
            ck.canon.push_back(pt);
            std::string rt = ck.next("range=a..b");
            if (rt.rfind("range=", 0) != 0) throw SemanticError("expected range=a..b");
            parse_range_token(rt.substr(6));
            ck.canon.push_back(rt);
            ck.done();
        } else if (sub == "lemma19") {
            ck.ringfilt();
            ck.complex();
            ck.integer("n");
            ck.done();
        } else {
            throw SemanticError("tstruct: unknown subcommand '" + sub + "'");
        }
    } else if (verb == "faltings") {
        std::string sub = ck.any_word("check1|verify2|search");
        if (sub == "check1") {
            ck.complex();
            ck.integer("n");
            ck.pairs();
            ck.done();
        } else if (sub == "verify2") {
            ck.complex();
            ck.spc();
            ck.spc();
            ck.integer("n");
            ck.ideal();
            ck.done();
        } else if (sub == "search") {
            ck.complex();
            ck.spc();
            ck.spc();
            ck.integer("n");
            ck.done();
        } else {
            throw SemanticError("faltings: unknown subcommand '" + sub + "'");
        }
    } else if (verb == "assert") {
        // assert <expected tokens> : <command>
        std::vector<std::string> expected;
        while (ck.pos < ck.raw.size() && ck.raw[ck.pos] != ":") {
            expected.push_back(ck.raw[ck.pos]);
            ++ck.pos;
        }
        if (ck.pos >= ck.raw.size()) throw SemanticError("assert: missing ':'");
        if (expected.empty()) throw SemanticError("assert: missing expected value");
        ++ck.pos; // ':'
        for (const auto& e : expected) ck.canon.push_back(e);
        ck.canon.push_back(":");
        std::vector<std::string> rest(ck.raw.begin() + (long)ck.pos, ck.raw.end());
        ck.pos = ck.raw.size();
        std::vector<std::string> inner_canon;
        validate_tokens(s, rest, inner_canon);
        for (auto& t : inner_canon) ck.canon.push_back(std::move(t));
    } else {
        throw SemanticError("unknown command '" + verb + "'");
    }
}

void validate_tokens(const Session& s, const std::vector<std::string>& raw,
                     std::vector<std::string>& canon) {
    Checker ck{s, raw, 0, {}};
    validate_inner(ck);
    canon = std::move(ck.canon);
}

} // namespace

std::vector<std::string> validate_command(const Session& s, const std::vector<std::string>& raw) {
    std::vector<std::string> canon;
    validate_tokens(s, raw, canon);
    return canon;
}

namespace {

std::string upper(std::string t) {
    for (auto& ch : t) ch = (char)std::toupper((unsigned char)ch);
    return t;
}

// Grouped verbs report under their subcommand: ROUNDTRIP, MEMBER, CHECK1, ...
std::string key_of(const std::vector<std::string>& tokens, size_t upto) {
    std::string key;
    size_t start = 0;
    const std::string& v = tokens[0];
    if (v == "spfilt" || v == "tstruct" || v == "faltings") {
        key = upper(tokens[1]);
        start = 2;
    } else if (v == "lc") {
        key = "LC" + upper(tokens[1]);
        start = 2;
    } else {
        key = upper(tokens[0]);
        start = 1;
    }
    for (size_t i = start; i < upto && i < tokens.size(); ++i) key += " " + tokens[i];
    return key;
}


Ideal resolve_ideal(const Session& s, const std::string& tok) {
    if (!tok.empty() && tok.front() == '<') {
        const Ring& r = s.rings.back().second;
        std::string inner = tok.substr(1, tok.size() - 2);
        std::vector<Poly> gens;
        std::string cur;
        int depth = 0;
        for (char ch : inner) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (ch == ',' && depth == 0) {
                gens.push_back(parse_poly(r, cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (cur.find_first_not_of(" \t") != std::string::npos)
            gens.push_back(parse_poly(r, cur));
        return make_ideal(r, gens);
    }
    return *s.find_ideal(tok);
}

CommandOutcome exec_tokens(const Session& s, const std::vector<std::string>& tokens);

CommandOutcome exec_simple(const std::string& key, const std::string& value, int status = 0) {
    CommandOutcome out;
    out.lines.push_back(key + " = " + value);
    out.value = value;
    out.status = status;
    return out;
}

CommandOutcome exec_tokens(const Session& s, const std::vector<std::string>& tokens) {
    const std::string& verb = tokens[0];
    const GradedWindow& win = s.window;

    if (verb == "gb") {
        Ideal id = resolve_ideal(s, tokens[1]);
        auto basis = display_basis(id);
        std::string v = "{";
        for (size_t i = 0; i < basis.size(); ++i) {
            if (i) v += ", ";
            v += poly_to_string(id.ring, basis[i]);
        }
        v += "}";
        return exec_simple(key_of(tokens, 2), v);
    }
    if (verb == "nf") {
        Ideal id = resolve_ideal(s, tokens[2]);
        std::string pt = tokens[1].substr(1, tokens[1].size() - 2);
        Poly p = parse_poly(id.ring, pt);
        return exec_simple(key_of(tokens, 3), poly_to_string(id.ring, normal_form(p, id)));
    }
    if (verb == "dim") {
        Ideal id = resolve_ideal(s, tokens[1]);
        int d = dimension(id);
        return exec_simple(key_of(tokens, 2), d == dim_neg_infinity() ? "-inf" : std::to_string(d));
    }
    if (verb == "height") {
        const PrimeIdeal& p = *s.find_prime(tokens[1]);
        const PrimeIdeal& q = *s.find_prime(tokens[2]);
        return exec_simple(key_of(tokens, 3), std::to_string(height_between(p, q)));
    }
    if (verb == "avoid") {
        Ideal a = resolve_ideal(s, tokens[1]);
        std::vector<PrimeIdeal> ps;
        for (const auto& nm : split_list_token(tokens[2])) ps.push_back(*s.find_prime(nm));
        Poly e = prime_avoid(a, ps);
        return exec_simple(key_of(tokens, 3), poly_to_string(a.ring, e));
    }
    if (verb == "grade") {
        Ideal a = resolve_ideal(s, tokens[1]);
        const FgModule& m = *s.find_module(tokens[2]);
        return exec_simple(key_of(tokens, 3), grade(a, m).to_string());
    }
    if (verb == "depth") {
        const PrimeIdeal& p = *s.find_prime(tokens[3]);
        XInt d = s.find_module(tokens[1]) ? local_depth(*s.find_module(tokens[1]), p)
                                          : complex_depth_at_prime(*s.find_complex(tokens[1]), p);
        return exec_simple("DEPTH " + tokens[1] + " " + tokens[3], d.to_string());
    }
    if (verb == "mcm") {
        const FgModule& m = *s.find_module(tokens[1]);
        const PrimeIdeal& p = *s.find_prime(tokens[3]);
        return exec_simple("MCM " + tokens[1] + " " + tokens[3],
                           mcm_test(m, p) ? "true" : "false");
    }
    if (verb == "ext") {
        int i = parse_int_token(tokens[1]);
        const FgModule& M = *s.find_module(tokens[2]);
        const FgModule& N = *s.find_module(tokens[3]);
        FgModule e = ext_module(i, M, N);
        return exec_simple(key_of(tokens, 4), module_to_string(e));
    }
    if (verb == "resolve") {
        const FgModule& m = *s.find_module(tokens[1]);
        int len = parse_int_token(tokens[2]);
        FreeResolution res = resolve(m, len);
        std::string v = "ranks [";
        for (size_t i = 0; i < res.ranks.size(); ++i) {
            if (i) v += ", ";
            v += std::to_string(res.ranks[i]);
        }
        v += "]";
        return exec_simple(key_of(tokens, 3), v);
    }
    if (verb == "ann" || verb == "supp") {
        const FgModule& m = *s.find_module(tokens[1]);
        auto [annid, supp] = annihilator_and_support(m);
        if (verb == "ann")
            return exec_simple(key_of(tokens, 2), ideal_gens_to_string(m.ring, annid.gens));
        return exec_simple(key_of(tokens, 2),
                           "V(" + ideal_gens_to_string(m.ring, supp.defining.gens) + ")");
    }
    if (verb == "bounds") {
        const Complex& x = *s.find_complex(tokens[1]);
        auto [sup, inf] = sup_inf(x);
        return exec_simple(key_of(tokens, 2), "(" + sup.to_string() + ", " + inf.to_string() + ")");
    }
    if (verb == "cohom") {
        const Complex& x = *s.find_complex(tokens[1]);
        int i = parse_int_token(tokens[2]);
        return exec_simple(key_of(tokens, 3), module_to_string(cohomology(x, i).mod));
    }
    if (verb == "torsion") {
        const SpcSubset& w = *s.find_spc(tokens[1]);
        const FgModule& m = *s.find_module(tokens[2]);
        Subquotient g = torsion_submodule(w, m);
        return exec_simple(key_of(tokens, 3), module_to_string(g.mod));
    }
    if (verb == "lc") {
        const SpcSubset& z = *s.find_spc(tokens[2]);
        if (tokens[1] == "bound") {
            std::optional<XInt> b;
            if (s.find_module(tokens[3]))
                b = lc_vanishing_bound(z, *s.find_module(tokens[3]));
            else
                b = lc_vanishing_bound(z, *s.find_complex(tokens[3]));
            if (!b) return exec_simple(key_of(tokens, 4), "INCONCLUSIVE", 3);
            return exec_simple(key_of(tokens, 4), b->to_string());
        }
        const Complex& x = *s.find_complex(tokens[3]);
        int i = parse_int_token(tokens[4]);
        LcTable table = graded_local_cohomology(z, x, i, win);
        CommandOutcome out;
        int status = 0;
        out.lines.push_back(key_of(tokens, 5) + " = window " + std::to_string(win.d_lo) + ".." +
                            std::to_string(win.d_hi));
        for (const auto& piece : table.pieces) {
            std::ostringstream os;
            os << "LC i=" << table.i << " d=" << piece.d << " dim=" << piece.dim
               << " stable=" << (piece.stable ? "yes" : "no");
            out.lines.push_back(os.str());
            if (!piece.stable) status = 3;
        }
        out.value = "window";
        out.status = status;
        return out;
    }
    if (verb == "annihilates") {
        Ideal b = resolve_ideal(s, tokens[1]);
        const SpcSubset& z = *s.find_spc(tokens[2]);
        const Complex& x = *s.find_complex(tokens[3]);
        int n = parse_int_token(tokens[4]);
        AnnihilationVerdict v = annihilation_test(b, z, x, n, win);
        std::string val;
        int status = 0;
        switch (v.kind) {
        case AnnihilationVerdict::HoldsCertified: val = "holds-certified"; break;
        case AnnihilationVerdict::HoldsOnWindow: val = "holds-on-window"; break;
        case AnnihilationVerdict::Fails:
            val = "fails i=" + std::to_string(v.witness_i) + " d=" + std::to_string(v.witness_d) +
                  " gen=" + v.witness_gen;
            break;
        case AnnihilationVerdict::Inconclusive:
            val = "inconclusive";
            status = 3;
            break;
        }
        return exec_simple(key_of(tokens, 5), val, status);
    }
    if (verb == "spfilt") {
        if (tokens[1] == "roundtrip") {
            const PosetPtr& P = *s.find_poset(tokens[2]);
            int lo = parse_int_token(tokens[3]), hi = parse_int_token(tokens[4]);
            RoundtripReport rep = roundtrip_verify(P, lo, hi);
            CommandOutcome out;
            std::string val;
            if (rep.ok()) {
                val = "ok filtrations=" + std::to_string(rep.filtration_count) +
                      " maps=" + std::to_string(rep.map_count);
            } else {
                val = "FAILED discrepancies=" + std::to_string(rep.discrepancies.size());
                out.status = 1;
            }
            out.lines.push_back(key_of(tokens, 5) + " = " + val);
            for (const auto& d : rep.discrepancies) out.lines.push_back("DISCREPANCY " + d);
            out.value = val;
            return out;
        }
        if (tokens[1] == "cousin") {
            const SpFiltration& phi = *s.find_spfilt(tokens[2]);
            auto v = weak_cousin_check(phi);
            if (!v) return exec_simple(key_of(tokens, 3), "true");
            return exec_simple(key_of(tokens, 3),
                               "false (" + phi.poset->names[v->p] + ", " + phi.poset->names[v->q] +
                                   ", i=" + std::to_string(v->i) + ")");
        }
        const TFunction& f = *s.find_tfunc(tokens[2]);
        TCheckMode mode = tokens[3] == "full" ? TCheckMode::Full : TCheckMode::Saturated;
        auto v = t_function_check(f, mode);
        if (!v) return exec_simple(key_of(tokens, 4), "true");
        return exec_simple(key_of(tokens, 4), "false (" + f.poset->names[v->p] + ", " +
                                                  f.poset->names[v->q] + ")");
    }
    if (verb == "tstruct") {
        if (tokens[1] == "member") {
            const Complex& x = *s.find_complex(tokens[2]);
            const RingFiltration& phi = *s.find_ringfilt(tokens[3]);
            AisleResult res = aisle_membership(x, phi);
            if (res.member) return exec_simple(key_of(tokens, 4), "true");
            return exec_simple(key_of(tokens, 4),
                               "false i=" + std::to_string(res.violating_degree));
        }
        if (tokens[1] == "psi") {
            const RingFiltration& phi = *s.find_ringfilt(tokens[2]);
            std::vector<PrimeIdeal> ps;
            for (const auto& nm : split_list_token(tokens[3].substr(7)))
                ps.push_back(*s.find_prime(nm));
            auto [lo, hi] = parse_range_token(tokens[4].substr(6));
            PsiReport rep = psi_roundtrip_check(phi, ps, lo, hi);
            CommandOutcome out;
            std::string val;
            if (rep.ok()) {
                val = "ok checked=" + std::to_string(rep.checked);
            } else {
                val = "FAILED mismatches=" + std::to_string(rep.mismatches.size());
                out.status = 1;
            }
            out.lines.push_back(key_of(tokens, 5) + " = " + val);
            for (const auto& m : rep.mismatches) out.lines.push_back("MISMATCH " + m);
            out.value = val;
            return out;
        }
        const RingFiltration& phi = *s.find_ringfilt(tokens[2]);
        const Complex& x = *s.find_complex(tokens[3]);
        int n = parse_int_token(tokens[4]);
        Lemma19Verdict v = lemma19_check(phi, x, n, win);
        std::string val;
        int status = 0;
        switch (v.kind) {
        case Lemma19Verdict::Certified:
            val = "certificate " + ideal_gens_to_string(phi.ring, v.certificate->gens);
            break;
        case Lemma19Verdict::WindowOnly:
            val = "certificate-window " + ideal_gens_to_string(phi.ring, v.certificate->gens);
            break;
        case Lemma19Verdict::PremiseFailed:
            val = "premise-failed i=" + std::to_string(v.failed_level);
            break;
        case Lemma19Verdict::PreconditionFailed: val = "precondition-failed " + v.note; break;
        case Lemma19Verdict::Inconclusive:
            val = "inconclusive";
            status = 3;
            break;
        }
        return exec_simple(key_of(tokens, 5), val, status);
    }
    if (verb == "faltings") {
        if (tokens[1] == "check1") {
            const Complex& x = *s.find_complex(tokens[2]);
            int n = parse_int_token(tokens[3]);
            const PrimePairList& pl = *s.find_pairs(tokens[4]);
            Condition1Result res = condition1_check(x, n, pl);
            if (res.holds) return exec_simple(key_of(tokens, 5), "true");
            return exec_simple(key_of(tokens, 5),
                               "false pair=" + std::to_string(res.witness_index) +
                                   " height=" + std::to_string(res.witness_height) +
                                   " depth=" + res.witness_depth.to_string());
        }
        if (tokens[1] == "verify2") {
            const Complex& x = *s.find_complex(tokens[2]);
            const SpcSubset& Y = *s.find_spc(tokens[3]);
            const SpcSubset& Z = *s.find_spc(tokens[4]);
            int n = parse_int_token(tokens[5]);
            Ideal b = resolve_ideal(s, tokens[6]);
            Condition2Verdict v = condition2_verify(x, Y, Z, n, b, win);
            std::string val;
            int status = 0;
            switch (v.kind) {
            case Condition2Verdict::Holds: val = "holds"; break;
            case Condition2Verdict::HoldsWindow: val = "holds-on-window"; break;
            case Condition2Verdict::FailsLegI: val = "fails-leg-i"; break;
            case Condition2Verdict::FailsLegII:
                val = "fails-leg-ii i=" + std::to_string(v.ann.witness_i) +
                      " d=" + std::to_string(v.ann.witness_d);
                break;
            case Condition2Verdict::Inconclusive:
                val = "inconclusive";
                status = 3;
                break;
            }
            return exec_simple(key_of(tokens, 7), val, status);
        }
        const Complex& x = *s.find_complex(tokens[2]);
        const SpcSubset& Y = *s.find_spc(tokens[3]);
        const SpcSubset& Z = *s.find_spc(tokens[4]);
        int n = parse_int_token(tokens[5]);
        SearchOptions opt;
        opt.budget = s.budget;
        SearchResult res = annihilator_search(x, Y, Z, n, win, opt);
        CommandOutcome out;
        for (const auto& t : res.trace) out.lines.push_back(t);
        std::string val;
        if (res.found) {
            val = ideal_gens_to_string(x.ring, res.b.gens);
        } else {
            val = "not-found";
            out.status = 3; // scale verdict, never a refutation
        }
        out.lines.push_back(key_of(tokens, 6) + " = " + val);
        out.value = val;
        return out;
    }
    if (verb == "assert") {
        size_t colon = 0;
        while (colon < tokens.size() && tokens[colon] != ":") ++colon;
        std::string expected;
        for (size_t i = 1; i < colon; ++i) {
            if (i > 1) expected += " ";
            expected += tokens[i];
        }
        std::vector<std::string> rest(tokens.begin() + (long)colon + 1, tokens.end());
        CommandOutcome inner = exec_tokens(s, rest);
        CommandOutcome out;
        out.lines = inner.lines;
        if (inner.value == expected) {
            out.lines.push_back("ASSERT = ok");
            out.value = "ok";
            out.status = 0; // the assertion is the verdict
        } else {
            out.lines.push_back("ASSERT = FAILED expected '" + expected + "' got '" + inner.value +
                                "'");
            out.value = "FAILED";
            out.status = 1;
        }
        return out;
    }
    throw InternalError("exec: unknown verb '" + verb + "'");
}

} // namespace

CommandOutcome run_command(const Session& s, size_t index) {
    if (index >= s.commands.size()) throw InternalError("command index out of range");
    return exec_tokens(s, s.commands[index].tokens);
}

RunResult run_session(const Session& s) {
    RunResult res;
    std::ostringstream report;
    int worst = 0;
    for (size_t i = 0; i < s.commands.size(); ++i) {
        try {
            CommandOutcome out = run_command(s, i);
            for (const auto& l : out.lines) report << l << "\n";
            if (out.status == 1)
                worst = std::max(worst, 10); // failure dominates
            else if (out.status == 3)
                worst = std::max(worst, 3);
        } catch (const ResourceLimitError& e) {
            report << "ERROR (resource limit) line " << s.commands[i].line << ": " << e.what()
                   << "\n";
            worst = std::max(worst, 3);
        } catch (const Error& e) {
            report << "ERROR line " << s.commands[i].line << ": " << e.what() << "\n";
            worst = std::max(worst, 10);
        }
    }
    res.report = report.str();
    res.exit_code = worst >= 10 ? 1 : (worst == 3 ? 3 : 0);
    return res;
}

} // namespace annwb
