#ifndef ANNWB_FALTINGS_HPP
#define ANNWB_FALTINGS_HPP

#include "annwb/localcoh.hpp"

namespace annwb {

// Prime pairs for condition (1): Z ni p supseteq q notin Y.
struct PrimePair {
    PrimeIdeal p, q;
};

struct PrimePairList {
    std::vector<PrimePair> pairs;
    SpcSubset Y, Z;
};

void validate_pair_list(const PrimePairList& pl);

struct Condition1Result {
    bool holds = true;
    int witness_index = -1;
    int witness_height = 0;
    XInt witness_depth;
};

// height p/q + depth X_q >= n over every listed pair; +inf passes.
Condition1Result condition1_check(const Complex& x, int n, const PrimePairList& pairs);

struct Condition2Verdict {
    enum Kind { Holds, HoldsWindow, FailsLegI, FailsLegII, Inconclusive } kind = Inconclusive;
    AnnihilationVerdict ann;
    std::string note;
    bool holds() const { return kind == Holds || kind == HoldsWindow; }
};

// (i) V(b) subseteq Y and (ii) b H^{<n}_Z(X) = 0 (window-aware).
Condition2Verdict condition2_verify(const Complex& x, const SpcSubset& Y, const SpcSubset& Z,
                                    int n, const Ideal& b, const GradedWindow& win);

// Lemma 3(2) data: I with support control and null-homotopies, J realizing
// Gamma_{Y/I}(R/I) = J/I by saturation, X' = X (x) K(J-generators), and the
// candidate transfer c -> c (I:y_s)...(I:y_1).
struct ReductionTrace {
    Ideal I;
    Ideal J;
    std::vector<Poly> koszul_seq;
    int s = 0;
    bool trivial = false; // J = R: X' vanishes and the transfer already yields b
    Complex reduced;      // X'
    KoszulTower tower;
    std::vector<Ideal> transfer_quotients; // (I : y_i), i = 1..s
};

ReductionTrace reduction_step(const Complex& x, const SpcSubset& Y);
Ideal transfer_candidate(const ReductionTrace& red, const Ideal& c);

struct SearchResult {
    bool found = false;
    Ideal b;
    Condition2Verdict final_verdict;
    std::vector<std::string> trace; // STEP lines
};

// Bounded constructive stand-in for the Theorem 11 annihilator existence;
// not-found is a scale verdict, never a refutation. Every returned ideal is
// gated by condition2_verify.
struct SearchOptions {
    int budget = 64;
    int max_depth = 8;
};
SearchResult annihilator_search(const Complex& x, const SpcSubset& Y, const SpcSubset& Z, int n,
                                const GradedWindow& win, const SearchOptions& opt = {});

} // namespace annwb

#endif
