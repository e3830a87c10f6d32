#ifndef ANNWB_SESSION_HPP
#define ANNWB_SESSION_HPP

#include <map>
#include <string>
#include <vector>

#include "annwb/faltings.hpp"
#include "annwb/tstruct.hpp"

namespace annwb {

// Parsed and validated session: named bindings in declaration order plus the
// command list. Objects pass their invariants at parse time (d^2 = 0,
// antitone filtrations, resolvable references).
struct Session {
    GradedWindow window;
    int budget = 64;

    std::vector<std::pair<std::string, Ring>> rings;
    std::vector<std::pair<std::string, Ideal>> ideals;
    std::vector<std::pair<std::string, PrimeIdeal>> primes;
    std::vector<std::pair<std::string, FgModule>> modules;
    std::vector<std::pair<std::string, Complex>> complexes;
    std::vector<std::pair<std::string, SpcSubset>> spcs;
    std::vector<std::pair<std::string, PosetPtr>> posets;
    std::vector<std::pair<std::string, SpFiltration>> spfilts;
    std::vector<std::pair<std::string, TFunction>> tfuncs;
    std::vector<std::pair<std::string, RingFiltration>> ringfilts;
    std::vector<std::pair<std::string, PrimePairList>> pairlists;

    struct Command {
        std::vector<std::string> tokens; // canonicalized
        int line = 0;
    };
    std::vector<Command> commands;

    // statements in source order for canonical printing
    struct Statement {
        enum Kind { Set, Decl, Cmd } kind;
        std::string text;
    };
    std::vector<Statement> statements;

    const Ring* find_ring(const std::string& n) const;
    const Ideal* find_ideal(const std::string& n) const;
    const PrimeIdeal* find_prime(const std::string& n) const;
    const FgModule* find_module(const std::string& n) const;
    const Complex* find_complex(const std::string& n) const;
    const SpcSubset* find_spc(const std::string& n) const;
    const PosetPtr* find_poset(const std::string& n) const;
    const SpFiltration* find_spfilt(const std::string& n) const;
    const TFunction* find_tfunc(const std::string& n) const;
    const RingFiltration* find_ringfilt(const std::string& n) const;
    const PrimePairList* find_pairs(const std::string& n) const;
    bool name_used(const std::string& n) const;
};

Session parse_session(const std::string& text);

// Canonical textual form; parse(pretty_print(s)) is structurally identical.
std::string pretty_print(const Session& s);

bool sessions_equal(const Session& a, const Session& b); // structural

} // namespace annwb

#endif
