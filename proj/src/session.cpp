#include "annwb/session.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "annwb/errors.hpp"
#include "annwb/io.hpp"

namespace annwb {

const Ring* Session::find_ring(const std::string& n) const {
    for (const auto& [k, v] : rings)
        if (k == n) return &v;
    return nullptr;
}
const Ideal* Session::find_ideal(const std::string& n) const {
    for (const auto& [k, v] : ideals)
        if (k == n) return &v;
    return nullptr;
}
const PrimeIdeal* Session::find_prime(const std::string& n) const {
    for (const auto& [k, v] : primes)
        if (k == n) return &v;
    return nullptr;
}
const FgModule* Session::find_module(const std::string& n) const {
    for (const auto& [k, v] : modules)
        if (k == n) return &v;
    return nullptr;
}
const Complex* Session::find_complex(const std::string& n) const {
    for (const auto& [k, v] : complexes)
        if (k == n) return &v;
    return nullptr;
}
const SpcSubset* Session::find_spc(const std::string& n) const {
    for (const auto& [k, v] : spcs)
        if (k == n) return &v;
    return nullptr;
}
const PosetPtr* Session::find_poset(const std::string& n) const {
    for (const auto& [k, v] : posets)
        if (k == n) return &v;
    return nullptr;
}
const SpFiltration* Session::find_spfilt(const std::string& n) const {
    for (const auto& [k, v] : spfilts)
        if (k == n) return &v;
    return nullptr;
}
const TFunction* Session::find_tfunc(const std::string& n) const {
    for (const auto& [k, v] : tfuncs)
        if (k == n) return &v;
    return nullptr;
}
const RingFiltration* Session::find_ringfilt(const std::string& n) const {
    for (const auto& [k, v] : ringfilts)
        if (k == n) return &v;
    return nullptr;
}
const PrimePairList* Session::find_pairs(const std::string& n) const {
    for (const auto& [k, v] : pairlists)
        if (k == n) return &v;
    return nullptr;
}

bool Session::name_used(const std::string& n) const {
    return find_ring(n) || find_ideal(n) || find_prime(n) || find_module(n) ||
           find_complex(n) || find_spc(n) || find_poset(n) || find_spfilt(n) || find_tfunc(n) ||
           find_ringfilt(n) || find_pairs(n);
}

namespace {

struct Cursor {
    std::string s;
    size_t pos = 0;
    int line = 1;

    void ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool at_end() {
        ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(line, (int)pos + 1, msg);
    }
    bool peek_char(char c) {
        ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat_char(char c) {
        ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_char(char c) {
        if (!eat_char(c)) fail(std::string("expected '") + c + "'");
    }
    bool eat_word(const std::string& w) {
        ws();
        size_t p = pos;
        for (char c : w) {
            if (p >= s.size() || s[p] != c) return false;
            ++p;
        }
        if (p < s.size() && (std::isalnum((unsigned char)s[p]) || s[p] == '_')) return false;
        pos = p;
        return true;
    }
    std::string name() {
        ws();
        size_t start = pos;
        if (pos < s.size() && (std::isalpha((unsigned char)s[pos]) || s[pos] == '_')) {
            ++pos;
            while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        }
        if (pos == start) fail("expected a name");
        return s.substr(start, pos - start);
    }
    int integer() {
        ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)s[start])))
            fail("expected an integer");
        return std::stoi(s.substr(start, pos - start));
    }
    // inner text of a balanced region starting at `open`
    std::string balanced(char open, char close) {
        ws();
        if (pos >= s.size() || s[pos] != open) fail(std::string("expected '") + open + "'");
        size_t start = ++pos;
        int depth = 1;
        while (pos < s.size()) {
            if (s[pos] == open) ++depth;
            if (s[pos] == close) {
                --depth;
                if (depth == 0) {
                    std::string inner = s.substr(start, pos - start);
                    ++pos;
                    return inner;
                }
            }
            ++pos;
        }
        fail("unbalanced bracket");
    }
    std::string rest() {
        ws();
        return s.substr(pos);
    }
};

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    // trim
    for (auto& t : out) {
        size_t a = t.find_first_not_of(" \t\r\n");
        size_t b = t.find_last_not_of(" \t\r\n");
        t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

std::vector<Poly> parse_poly_list(const Ring& r, const std::string& inner) {
    std::vector<Poly> out;
    for (const auto& piece : split_top(inner, ','))
        if (!piece.empty()) out.push_back(parse_poly(r, piece));
    return out;
}

PMat parse_matrix(const Ring& r, Cursor& c) {
    std::string inner = c.balanced('[', ']');
    std::vector<std::string> rows = split_top(inner, ',');
    // each row is itself [ ... ]
    std::vector<std::vector<Poly>> data;
    size_t cols = 0;
    for (auto& row : rows) {
        if (row.size() < 2 || row.front() != '[' || row.back() != ']')
            throw SemanticError("matrix rows must be bracketed");
        std::vector<Poly> entries = parse_poly_list(r, row.substr(1, row.size() - 2));
        if (!data.empty() && entries.size() != cols)
            throw SemanticError("matrix rows have unequal lengths");
        cols = entries.size();
        data.push_back(std::move(entries));
    }
    PMat m((int)data.size(), (int)cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = data[i][j];
    return m;
}

std::string matrix_to_decl_string(const Ring& r, const PMat& m) { return pmat_to_string(r, m); }

std::vector<int> parse_int_list(Cursor& c) {
    std::string inner = c.balanced('[', ']');
    std::vector<int> out;
    for (const auto& piece : split_top(inner, ','))
        if (!piece.empty()) out.push_back(std::stoi(piece));
    return out;
}

std::string int_list_to_string(const std::vector<int>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << "]";
    return os.str();
}

struct Parser {
    Session session;
    const Ring* current_ring = nullptr;

    const Ring& ring_by_name_or_default(Cursor& c) {
        // optional trailing "in R"
        size_t save = c.pos;
        if (c.eat_word("in")) {
            std::string rn = c.name();
            const Ring* r = session.find_ring(rn);
            if (!r) throw SemanticError("unknown ring '" + rn + "'");
            return *r;
        }
        c.pos = save;
        if (!current_ring) throw SemanticError("no ring declared yet");
        return *current_ring;
    }

    std::string ring_name_of(const Ring& r) {
        for (const auto& [k, v] : session.rings)
            if (same_ring(v, r)) return k;
        return "?";
    }

    void check_fresh(const std::string& n) {
        if (session.name_used(n)) throw SemanticError("name '" + n + "' is already declared");
    }

    void add_statement(Session::Statement::Kind k, const std::string& text) {
        session.statements.push_back({k, text});
    }

    void parse_set(Cursor& c) {
        if (c.eat_word("window")) {
            int a = c.integer();
            c.expect_char('.');
            c.expect_char('.');
            int b = c.integer();
            session.window.d_lo = a;
            session.window.d_hi = b;
            add_statement(Session::Statement::Set,
                          "set window " + std::to_string(a) + ".." + std::to_string(b));
        } else if (c.eat_word("hrange")) {
            int a = c.integer();
            c.expect_char('.');
            c.expect_char('.');
            int b = c.integer();
            session.window.h_lo = a;
            session.window.h_hi = b;
            add_statement(Session::Statement::Set,
                          "set hrange " + std::to_string(a) + ".." + std::to_string(b));
        } else if (c.eat_word("tmax")) {
            int t = c.integer();
            if (t < 1) throw SemanticError("tmax must be at least 1");
            session.window.t_max = t;
            add_statement(Session::Statement::Set, "set tmax " + std::to_string(t));
        } else if (c.eat_word("budget")) {
            int b = c.integer();
            session.budget = b;
            add_statement(Session::Statement::Set, "set budget " + std::to_string(b));
        } else if (c.eat_word("gbsteps")) {
            int b = c.integer();
            if (b < 1) throw SemanticError("gbsteps must be positive");
            set_default_gb_budget(b);
            add_statement(Session::Statement::Set, "set gbsteps " + std::to_string(b));
        } else {
            c.fail("unknown setting");
        }
    }

    void parse_ring(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        BaseField field;
        if (c.eat_word("QQ")) {
            field = BaseField();
        } else if (c.eat_word("GF")) {
            std::string inner = c.balanced('(', ')');
            field = BaseField(std::stol(inner));
        } else {
            c.fail("expected field QQ or GF(p)");
        }
        std::string vars_inner = c.balanced('[', ']');
        std::vector<std::string> vars = split_top(vars_inner, ',');
        MonoOrder ord;
        bool is_lex = false;
        if (c.eat_word("grevlex"))
            is_lex = false;
        else if (c.eat_word("lex"))
            is_lex = true;
        else
            c.fail("expected monomial order lex or grevlex");
        ord = is_lex ? MonoOrder::lex((int)vars.size()) : MonoOrder::grevlex((int)vars.size());
        std::string prio_str;
        if (c.peek_char('(')) {
            std::string inner = c.balanced('(', ')');
            std::vector<std::string> prio = split_top(inner, ',');
            if (prio.size() != vars.size()) throw SemanticError("order priority list size mismatch");
            ord.perm.clear();
            for (const auto& p : prio) {
                auto it = std::find(vars.begin(), vars.end(), p);
                if (it == vars.end()) throw SemanticError("unknown variable in order priority");
                ord.perm.push_back((int)(it - vars.begin()));
            }
            prio_str = "(" + inner + ")";
        }
        // optional quotient and grading; quotient polys parse in the ambient ring
        std::optional<std::vector<int>> weights;
        std::string quotient_str;
        std::vector<Poly> qgens;
        size_t save = c.pos;
        bool has_quotient = c.eat_char('/');
        std::string quotient_inner;
        if (has_quotient) quotient_inner = c.balanced('<', '>');
        if (c.eat_word("graded")) weights = parse_int_list(c);
        else {
            // default grading: all ones
            weights = std::vector<int>((int)vars.size(), 1);
        }
        (void)save;
        Ring ambient = make_poly_ring(field, vars, ord, weights);
        Ring ring = ambient;
        if (has_quotient) {
            qgens = parse_poly_list(ambient, quotient_inner);
            ring = make_quotient_ring(ambient, qgens);
            quotient_str = " / " + ideal_gens_to_string(ambient, ring->quotient);
        }
        session.rings.emplace_back(name, ring);
        current_ring = &session.rings.back().second;

        std::ostringstream os;
        os << "ring " << name << " = " << field.to_string() << "[";
        for (size_t i = 0; i < vars.size(); ++i) {
            if (i) os << ",";
            os << vars[i];
        }
        os << "] " << (is_lex ? "lex" : "grevlex") << prio_str << quotient_str << " graded "
           << int_list_to_string(*ring->weights);
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_ideal(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        std::string inner = c.balanced('<', '>');
        const Ring& r = ring_by_name_or_default(c);
        Ideal id = make_ideal(r, parse_poly_list(r, inner));
        session.ideals.emplace_back(name, id);
        add_statement(Session::Statement::Decl, "ideal " + name + " = " +
                                                    ideal_gens_to_string(r, id.gens) + " in " +
                                                    ring_name_of(r));
    }

    void parse_prime(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        std::string inner = c.balanced('<', '>');
        const Ring& r = ring_by_name_or_default(c);
        bool asserted = c.eat_word("asserted");
        PrimeIdeal p = make_prime(make_ideal(r, parse_poly_list(r, inner)), asserted);
        session.primes.emplace_back(name, p);
        add_statement(Session::Statement::Decl,
                      "prime " + name + " = " + ideal_gens_to_string(r, p.ideal.gens) + " in " +
                          ring_name_of(r) + (p.variable_generated ? "" : " asserted"));
    }

    void parse_module(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        if (!c.eat_word("coker")) c.fail("expected 'coker'");
        std::string rn = c.name();
        const Ring* r = session.find_ring(rn);
        if (!r) throw SemanticError("unknown ring '" + rn + "'");
        c.expect_char('^');
        int rank = c.integer();
        c.expect_char('<');
        c.expect_char('-');
        PMat rel = parse_matrix(*r, c);
        if (rel.rows == 0 && rank > 0) rel = PMat(rank, 0);
        if (rel.rows != rank) throw SemanticError("matrix row count must equal the stated rank");
        std::optional<std::vector<int>> degs;
        if (c.eat_word("graded")) degs = parse_int_list(c);
        FgModule m = coker_module(*r, rel, degs);
        session.modules.emplace_back(name, m);
        std::ostringstream os;
        os << "module " << name << " = coker " << rn << "^" << rank << " <- "
           << matrix_to_decl_string(*r, m.rel);
        if (m.degs) os << " graded " << int_list_to_string(*m.degs);
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_complex(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        std::string inner = c.balanced('{', '}');
        std::vector<std::string> entries = split_top(inner, ';');
        std::map<int, int> ranks;
        std::map<int, std::string> diffs;  // raw matrix text
        std::map<int, std::vector<int>> degs;
        std::string ring_name;
        for (const auto& e : entries) {
            if (e.empty()) continue;
            Cursor ec{e, 0, c.line};
            if (ec.eat_word("d")) {
                std::string di = ec.balanced('(', ')');
                ec.expect_char('=');
                diffs[std::stoi(di)] = ec.rest();
            } else if (ec.eat_word("deg")) {
                std::string di = ec.balanced('(', ')');
                ec.expect_char('=');
                degs[std::stoi(di)] = parse_int_list(ec);
            } else {
                int d = ec.integer();
                ec.expect_char(':');
                std::string rn = ec.name();
                if (ring_name.empty()) ring_name = rn;
                if (rn != ring_name) throw SemanticError("complex terms use different rings");
                ec.expect_char('^');
                ranks[d] = ec.integer();
            }
        }
        if (ranks.empty()) throw SemanticError("complex has no terms");
        const Ring* r = session.find_ring(ring_name);
        if (!r) throw SemanticError("unknown ring '" + ring_name + "'");
        int lo = ranks.begin()->first, hi = ranks.rbegin()->first;
        std::vector<FgModule> terms;
        for (int i = lo; i <= hi; ++i) {
            int rank = ranks.count(i) ? ranks[i] : 0;
            std::optional<std::vector<int>> dv;
            if (degs.count(i)) {
                dv = degs[i];
                if ((int)dv->size() != rank)
                    throw SemanticError("deg list size mismatch at degree " + std::to_string(i));
            }
            terms.push_back(free_module(*r, rank, dv));
        }
        std::vector<PMat> dmats;
        for (int i = lo; i < hi; ++i) {
            if (diffs.count(i)) {
                Cursor mc{diffs[i], 0, c.line};
                PMat m = parse_matrix(*r, mc);
                if (m.rows == 0) m = PMat(terms[i + 1 - lo].rank, terms[i - lo].rank);
                dmats.push_back(m);
            } else {
                if (terms[i - lo].rank != 0 && terms[i + 1 - lo].rank != 0)
                    throw SemanticError("missing differential d(" + std::to_string(i) + ")");
                dmats.push_back(PMat(terms[i + 1 - lo].rank, terms[i - lo].rank));
            }
        }
        Complex x = make_complex(*r, lo, terms, dmats);
        session.complexes.emplace_back(name, x);
        // canonical form
        std::ostringstream os;
        os << "complex " << name << " = { ";
        bool first = true;
        for (int i = lo; i <= hi; ++i) {
            if (!first) os << "; ";
            first = false;
            os << i << ": " << ring_name << "^" << x.term(i).rank;
        }
        for (int i = lo; i < hi; ++i) {
            if (x.term(i).rank == 0 || x.term(i + 1).rank == 0) continue;
            os << "; d(" << i << ") = " << matrix_to_decl_string(*r, x.diff_at(i));
        }
        for (int i = lo; i <= hi; ++i) {
            if (x.term(i).rank == 0 || !x.term(i).degs) continue;
            os << "; deg(" << i << ") = " << int_list_to_string(*x.term(i).degs);
        }
        os << " }";
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_spc(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        std::string canonical;
        SpcSubset w{nullptr, Ideal{}, std::nullopt};
        if (c.eat_word("V")) {
            std::string inner = c.balanced('(', ')');
            Cursor ic{inner, 0, c.line};
            if (ic.peek_char('<')) {
                std::string gens = ic.balanced('<', '>');
                const Ring& r = [&]() -> const Ring& {
                    if (ic.eat_word("in")) {
                        std::string rn = ic.name();
                        const Ring* rr = session.find_ring(rn);
                        if (!rr) throw SemanticError("unknown ring '" + rn + "'");
                        return *rr;
                    }
                    if (!current_ring) throw SemanticError("no ring declared yet");
                    return *current_ring;
                }();
                w = spc_closed(make_ideal(r, parse_poly_list(r, gens)));
            } else {
                std::string in = ic.name();
                const Ideal* id = session.find_ideal(in);
                if (!id) throw SemanticError("unknown ideal '" + in + "'");
                w = spc_closed(*id);
            }
            canonical = "V(" + ideal_gens_to_string(w.ring, w.defining.gens) + " in " +
                        ring_name_of(w.ring) + ")";
        } else if (c.eat_word("union")) {
            std::string inner = c.balanced('(', ')');
            auto parts = split_top(inner, ',');
            if (parts.size() != 2) throw SemanticError("union takes two subsets");
            const SpcSubset* a = session.find_spc(parts[0]);
            const SpcSubset* b = session.find_spc(parts[1]);
            if (!a || !b) throw SemanticError("unknown subset in union");
            w = spc_union(*a, *b);
            canonical = "V(" + ideal_gens_to_string(w.ring, w.defining.gens) + " in " +
                        ring_name_of(w.ring) + ")";
        } else if (c.eat_word("localize")) {
            std::string inner = c.balanced('(', ')');
            auto parts = split_top(inner, ',');
            if (parts.size() != 2) throw SemanticError("localize takes a subset and a prime");
            const SpcSubset* a = session.find_spc(parts[0]);
            const PrimeIdeal* p = session.find_prime(parts[1]);
            if (!a || !p) throw SemanticError("unknown name in localize");
            w = spc_localize(*a, *p);
            canonical = "localize(" + parts[0] + ", " + parts[1] + ")";
        } else if (c.eat_word("quotient")) {
            std::string inner = c.balanced('(', ')');
            auto parts = split_top(inner, ',');
            if (parts.size() != 2) throw SemanticError("quotient takes a subset and an ideal");
            const SpcSubset* a = session.find_spc(parts[0]);
            const Ideal* id = session.find_ideal(parts[1]);
            if (!a || !id) throw SemanticError("unknown name in quotient");
            w = spc_quotient(*a, *id);
            canonical = "quotient(" + parts[0] + ", " + parts[1] + ")";
        } else {
            c.fail("expected V(...), union(...), localize(...) or quotient(...)");
        }
        session.spcs.emplace_back(name, w);
        add_statement(Session::Statement::Decl, "spc " + name + " = " + canonical);
    }

    void parse_poset(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        if (c.eat_word("primes")) {
            std::string inner = c.balanced('[', ']');
            std::vector<std::string> pnames = split_top(inner, ',');
            std::vector<PrimeIdeal> ps;
            for (const auto& pn : pnames) {
                const PrimeIdeal* p = session.find_prime(pn);
                if (!p) throw SemanticError("unknown prime '" + pn + "'");
                ps.push_back(*p);
            }
            PosetPtr P = poset_from_primes(ps, pnames);
            session.posets.emplace_back(name, P);
            std::ostringstream os;
            os << "poset " << name << " = primes [";
            for (size_t i = 0; i < pnames.size(); ++i) {
                if (i) os << ", ";
                os << pnames[i];
            }
            os << "]";
            add_statement(Session::Statement::Decl, os.str());
            return;
        }
        std::string inner = c.balanced('{', '}');
        std::vector<std::string> entries = split_top(inner, ';');
        std::vector<std::string> names;
        std::vector<std::pair<int, int>> rels;
        auto idx = [&](const std::string& n) {
            for (size_t i = 0; i < names.size(); ++i)
                if (names[i] == n) return (int)i;
            names.push_back(n);
            return (int)names.size() - 1;
        };
        for (const auto& e : entries) {
            if (e.empty()) continue;
            Cursor ec{e, 0, c.line};
            std::string a = ec.name();
            if (ec.eat_char('<')) {
                std::string b = ec.name();
                int ia = idx(a), ib = idx(b);
                rels.emplace_back(ia, ib);
            } else {
                idx(a); // isolated element
            }
        }
        PosetPtr P = make_poset(names, rels);
        session.posets.emplace_back(name, P);
        // canonical: isolated elements, then cover pairs
        std::ostringstream os;
        os << "poset " << name << " = { ";
        bool first = true;
        auto covers = P->cover_pairs();
        for (int i = 0; i < P->size(); ++i) {
            bool incident = false;
            for (auto [a, b] : covers)
                if (a == i || b == i) incident = true;
            if (!incident) {
                if (!first) os << "; ";
                first = false;
                os << P->names[i];
            }
        }
        for (auto [a, b] : covers) {
            if (!first) os << "; ";
            first = false;
            os << P->names[a] << " < " << P->names[b];
        }
        os << " }";
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_spfilt(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        if (!c.eat_word("on")) c.fail("expected 'on'");
        std::string pn = c.name();
        const PosetPtr* P = session.find_poset(pn);
        if (!P) throw SemanticError("unknown poset '" + pn + "'");
        c.expect_char('=');
        std::string inner = c.balanced('{', '}');
        std::map<int, uint64_t> levels;
        std::optional<std::pair<int, int>> tails;
        for (const auto& e : split_top(inner, ';')) {
            if (e.empty()) continue;
            Cursor ec{e, 0, c.line};
            if (ec.eat_word("tails")) {
                if (!ec.eat_word("lo")) ec.fail("expected lo=");
                ec.expect_char('=');
                int lo = ec.integer();
                if (!ec.eat_word("hi")) ec.fail("expected hi=");
                ec.expect_char('=');
                int hi = ec.integer();
                tails = {lo, hi};
                continue;
            }
            int i = ec.integer();
            ec.expect_char(':');
            std::string set_inner = ec.balanced('{', '}');
            uint64_t mask = 0;
            for (const auto& nm : split_top(set_inner, ',')) {
                if (nm.empty()) continue;
                int e2 = (*P)->index_of(nm);
                if (e2 < 0) throw SemanticError("unknown poset element '" + nm + "'");
                mask |= (1ULL << e2);
            }
            levels[i] = mask;
        }
        if (levels.empty()) throw SemanticError("sp-filtration needs at least one level");
        int lo = levels.begin()->first, hi = levels.rbegin()->first;
        if (tails && (tails->first != lo || tails->second != hi))
            throw SemanticError("tails declaration does not match the level window");
        SpFiltration phi;
        phi.poset = *P;
        phi.lo = lo;
        phi.hi = hi;
        for (int i = lo; i <= hi; ++i) {
            if (!levels.count(i)) throw SemanticError("missing level " + std::to_string(i));
            phi.levels.push_back(levels[i]);
        }
        validate_spfiltration(phi);
        session.spfilts.emplace_back(name, phi);
        std::ostringstream os;
        os << "spfilt " << name << " on " << pn << " = { ";
        for (int i = lo; i <= hi; ++i) {
            os << i << ": {";
            bool first = true;
            for (int e = 0; e < (*P)->size(); ++e)
                if ((levels[i] >> e) & 1) {
                    if (!first) os << ", ";
                    first = false;
                    os << (*P)->names[e];
                }
            os << "}; ";
        }
        os << "tails lo=" << lo << " hi=" << hi << " }";
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_tfunc(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        if (!c.eat_word("on")) c.fail("expected 'on'");
        std::string pn = c.name();
        const PosetPtr* P = session.find_poset(pn);
        if (!P) throw SemanticError("unknown poset '" + pn + "'");
        c.expect_char('=');
        std::string inner = c.balanced('{', '}');
        std::vector<std::optional<XInt>> vals((*P)->size());
        for (const auto& e : split_top(inner, ';')) {
            if (e.empty()) continue;
            Cursor ec{e, 0, c.line};
            std::string nm = ec.name();
            int idx = (*P)->index_of(nm);
            if (idx < 0) throw SemanticError("unknown poset element '" + nm + "'");
            ec.expect_char(':');
            ec.ws();
            std::string restv = ec.rest();
            XInt v;
            if (restv == "-inf")
                v = XInt::neg_inf();
            else if (restv == "+inf" || restv == "inf")
                v = XInt::pos_inf();
            else
                v = XInt(std::stoi(restv));
            vals[idx] = v;
        }
        TFunction f;
        f.poset = *P;
        for (int i = 0; i < (*P)->size(); ++i) {
            if (!vals[i])
                throw SemanticError("missing value for element '" + (*P)->names[i] + "'");
            f.values.push_back(*vals[i]);
        }
        validate_order_preserving(f);
        session.tfuncs.emplace_back(name, f);
        std::ostringstream os;
        os << "tfunc " << name << " on " << pn << " = { ";
        for (int i = 0; i < (*P)->size(); ++i) {
            if (i) os << "; ";
            os << (*P)->names[i] << ": " << f.values[i].to_string();
        }
        os << " }";
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_ringfilt(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        std::string inner = c.balanced('{', '}');
        std::map<int, std::string> levels;
        for (const auto& e : split_top(inner, ';')) {
            if (e.empty()) continue;
            Cursor ec{e, 0, c.line};
            int i = ec.integer();
            ec.expect_char(':');
            levels[i] = ec.name();
        }
        if (levels.empty()) throw SemanticError("ring filtration needs at least one level");
        RingFiltration phi;
        phi.lo = levels.begin()->first;
        phi.hi = levels.rbegin()->first;
        for (int i = phi.lo; i <= phi.hi; ++i) {
            if (!levels.count(i)) throw SemanticError("missing level " + std::to_string(i));
            const SpcSubset* w = session.find_spc(levels[i]);
            if (!w) throw SemanticError("unknown subset '" + levels[i] + "'");
            phi.levels.push_back(*w);
        }
        phi.ring = phi.levels.front().ring;
        std::vector<std::string> prime_names;
        if (c.eat_word("primes")) {
            std::string pin = c.balanced('[', ']');
            for (const auto& pn : split_top(pin, ',')) {
                const PrimeIdeal* p = session.find_prime(pn);
                if (!p) throw SemanticError("unknown prime '" + pn + "'");
                phi.sample_primes.push_back(*p);
                prime_names.push_back(pn);
            }
        }
        validate_ring_filtration(phi);
        session.ringfilts.emplace_back(name, phi);
        std::ostringstream os;
        os << "ringfilt " << name << " = { ";
        for (int i = phi.lo; i <= phi.hi; ++i) {
            if (i > phi.lo) os << "; ";
            os << i << ": " << levels[i];
        }
        os << " }";
        if (!prime_names.empty()) {
            os << " primes [";
            for (size_t i = 0; i < prime_names.size(); ++i) {
                if (i) os << ", ";
                os << prime_names[i];
            }
            os << "]";
        }
        add_statement(Session::Statement::Decl, os.str());
    }

    void parse_pairs(Cursor& c) {
        std::string name = c.name();
        check_fresh(name);
        c.expect_char('=');
        std::string inner = c.balanced('{', '}');
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& e : split_top(inner, ';')) {
            if (e.empty()) continue;
            Cursor ec{e, 0, c.line};
            std::string pinner = ec.balanced('(', ')');
            auto parts = split_top(pinner, ',');
            if (parts.size() != 2) throw SemanticError("pair must be (p, q)");
            pairs.emplace_back(parts[0], parts[1]);
        }
        if (!c.eat_word("context")) c.fail("expected 'context Y Z'");
        std::string yn = c.name();
        std::string zn = c.name();
        const SpcSubset* Y = session.find_spc(yn);
        const SpcSubset* Z = session.find_spc(zn);
        if (!Y || !Z) throw SemanticError("unknown subset in pairs context");
        PrimePairList pl;
        pl.Y = *Y;
        pl.Z = *Z;
        for (const auto& [pn, qn] : pairs) {
            const PrimeIdeal* p = session.find_prime(pn);
            const PrimeIdeal* q = session.find_prime(qn);
            if (!p || !q) throw SemanticError("unknown prime in pair list");
            pl.pairs.push_back(PrimePair{*p, *q});
        }
        validate_pair_list(pl);
        session.pairlists.emplace_back(name, pl);
        std::ostringstream os;
        os << "pairs " << name << " = { ";
        for (size_t i = 0; i < pairs.size(); ++i) {
            if (i) os << "; ";
            os << "(" << pairs[i].first << ", " << pairs[i].second << ")";
        }
        os << " } context " << yn << " " << zn;
        add_statement(Session::Statement::Decl, os.str());
    }

    // commands are validated and canonicalized by the runner-side checker
    void parse_command(Cursor& c);
};

} // namespace

// defined in runner.cpp: validates tokens and returns the canonical form
std::vector<std::string> validate_command(const Session& s, const std::vector<std::string>& raw);

namespace {

// split a command string into argument tokens; parentheses, brackets and
// angle brackets group
std::vector<std::string> command_tokens(const std::string& text) {
    // whitespace splits only at bracket depth zero, so primes=[a, b] and
    // (x + y) stay single tokens
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
        if (pos >= text.size()) break;
        size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char ch = text[pos];
            if (depth == 0 && std::isspace((unsigned char)ch)) break;
            if (ch == '(' || ch == '[' || ch == '<') ++depth;
            if (ch == ')' || ch == ']' || ch == '>') --depth;
            ++pos;
        }
        out.push_back(text.substr(start, pos - start));
    }
    return out;
}

void Parser::parse_command(Cursor& c) {
    std::vector<std::string> raw = command_tokens(c.rest());
    c.pos = c.s.size();
    if (raw.empty()) c.fail("empty command");
    std::vector<std::string> canon = validate_command(session, raw);
    Session::Command cmd;
    cmd.tokens = canon;
    cmd.line = c.line;
    session.commands.push_back(cmd);
    std::string text = "cmd";
    for (const auto& t : canon) text += " " + t;
    add_statement(Session::Statement::Cmd, text);
}

} // namespace

Session parse_session(const std::string& text) {
    // split into logical statements: newline ends a statement at depth 0
    struct Stmt {
        std::string text;
        int line;
    };
    std::vector<Stmt> stmts;
    {
        std::string cur;
        int depth = 0;
        int line = 1, start_line = 1;
        for (size_t i = 0; i <= text.size(); ++i) {
            char ch = i < text.size() ? text[i] : '\n';
            if (ch == '#') {
                while (i < text.size() && text[i] != '\n') ++i;
                ch = '\n';
            }
            if (ch == '(' || ch == '[' || ch == '{') ++depth;
            if (ch == ')' || ch == ']' || ch == '}') --depth;
            if (ch == '\n') {
                ++line;
                if (depth == 0) {
                    bool blank = cur.find_first_not_of(" \t\r") == std::string::npos;
                    if (!blank) stmts.push_back({cur, start_line});
                    cur.clear();
                    start_line = line;
                    continue;
                }
                cur += ' ';
                continue;
            }
            cur += ch;
        }
    }
    if (stmts.empty()) throw ParseError(1, 1, "empty session");
    {
        Cursor c{stmts[0].text, 0, stmts[0].line};
        if (!c.eat_word("annwb")) c.fail("missing 'annwb v1' header");
        if (!c.eat_word("v1")) c.fail("unsupported session version (expected v1)");
    }
    Parser parser;
    for (size_t k = 1; k < stmts.size(); ++k) {
        Cursor c{stmts[k].text, 0, stmts[k].line};
        try {
            if (c.eat_word("set"))
                parser.parse_set(c);
            else if (c.eat_word("ring"))
                parser.parse_ring(c);
            else if (c.eat_word("ideal"))
                parser.parse_ideal(c);
            else if (c.eat_word("prime"))
                parser.parse_prime(c);
            else if (c.eat_word("module"))
                parser.parse_module(c);
            else if (c.eat_word("complex"))
                parser.parse_complex(c);
            else if (c.eat_word("spc"))
                parser.parse_spc(c);
            else if (c.eat_word("poset"))
                parser.parse_poset(c);
            else if (c.eat_word("spfilt"))
                parser.parse_spfilt(c);
            else if (c.eat_word("tfunc"))
                parser.parse_tfunc(c);
            else if (c.eat_word("ringfilt"))
                parser.parse_ringfilt(c);
            else if (c.eat_word("pairs"))
                parser.parse_pairs(c);
            else {
                c.eat_word("cmd");
                parser.parse_command(c);
            }
            if (!c.at_end() && parser.session.statements.back().kind != Session::Statement::Cmd)
                c.fail("trailing input after statement");
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw SemanticError("line " + std::to_string(stmts[k].line) + ": " + e.what());
        }
    }
    return parser.session;
}

std::string pretty_print(const Session& s) {
    std::ostringstream os;
    os << "annwb v1\n";
    for (const auto& st : s.statements) os << st.text << "\n";
    return os.str();
}

bool sessions_equal(const Session& a, const Session& b) { return pretty_print(a) == pretty_print(b); }

} // namespace annwb
