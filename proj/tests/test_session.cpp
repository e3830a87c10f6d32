#include <doctest.h>

#include "annwb/runner.hpp"

using namespace annwb;

namespace {

const char* kMinimal = R"(annwb v1
ring R = QQ[x] grevlex
ideal a = <x>
cmd gb a
)";

const char* kRich = R"(annwb v1
# settings
set window -5..2
set hrange 0..3
ring R = QQ[x,y] grevlex
ideal a = <x>
ideal m = <x, y>
prime px = <x>
prime pm = <x, y>
prime p0 = <0>
module M = coker R^1 <- [[x]]
complex X = {
  -1: R^1;
   0: R^1;
  d(-1) = [[x]];
  deg(-1) = [1];
  deg(0) = [0]
}
spc Y = V(a)
spc Z = V(m)
spc E = union(Y, Z)
poset P = { p < q; q < r }
spfilt phi on P = { 0: {p, q, r}; 1: {q, r}; tails lo=0 hi=1 }
tfunc f on P = { p: 1; q: 2; r: 2 }
ringfilt Phi = { -1: Y; 0: Z } primes [px, pm]
pairs PL = { (pm, px); (pm, p0) } context Z Z
cmd gb a
cmd nf (x^2 + y) a
cmd depth M at pm
cmd bounds X
cmd spfilt cousin phi
cmd spfilt tcheck f full
cmd tstruct member X Phi
cmd faltings check1 X 1 PL
)";

} // namespace

TEST_CASE("minimal session parses to two declarations and one command") {
    Session s = parse_session(kMinimal);
    CHECK(s.rings.size() == 1);
    CHECK(s.ideals.size() == 1);
    CHECK(s.commands.size() == 1);
    RunResult res = run_session(s);
    CHECK(res.exit_code == 0);
    CHECK(res.report == "GB a = {x}\n");
}

TEST_CASE("rich session parses, runs, and round-trips") {
    Session s = parse_session(kRich);
    RunResult res = run_session(s);
    CHECK(res.exit_code == 0);
    // pretty-print / re-parse structural equality
    std::string printed = pretty_print(s);
    Session s2 = parse_session(printed);
    CHECK(sessions_equal(s, s2));
    // determinism: two runs are byte-identical
    RunResult res2 = run_session(s2);
    CHECK(res.report == res2.report);
    // spot-check some lines
    CHECK(res.report.find("DEPTH M pm = 1") != std::string::npos);
    CHECK(res.report.find("BOUNDS X = (0, 0)") != std::string::npos);
    CHECK(res.report.find("NF (x^2 + y) a = y") != std::string::npos);
    CHECK(res.report.find("CHECK1 X 1 PL = true") != std::string::npos);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_session("annwb v2\n"), ParseError);
    CHECK_THROWS_AS(parse_session("nonsense\n"), ParseError);
    try {
        parse_session("annwb v1\nring R = QQ[x] sortof\n");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("semantic errors: forward references and invariants") {
    // forward reference
    CHECK_THROWS_AS(parse_session("annwb v1\nring R = QQ[x] grevlex\ncmd gb nosuch\n"),
                    SemanticError);
    // d^2 != 0 names the degree
    const char* bad = R"(annwb v1
ring R = QQ[x] grevlex
complex C = { -2: R^1; -1: R^1; 0: R^1; d(-2) = [[x]]; d(-1) = [[x]] }
)";
    try {
        parse_session(bad);
        FAIL("expected semantic error");
    } catch (const SemanticError& e) {
        CHECK(std::string(e.what()).find("d^2") != std::string::npos);
    }
    // duplicate names
    CHECK_THROWS_AS(parse_session("annwb v1\nring R = QQ[x] grevlex\nideal R = <x>\n"),
                    SemanticError);
}

TEST_CASE("inline ideal literal in gb") {
    Session s = parse_session("annwb v1\nring R = QQ[x] grevlex\ncmd gb <0>\n");
    RunResult res = run_session(s);
    CHECK(res.report == "GB <0> = {}\n");
    CHECK(res.exit_code == 0);
}

TEST_CASE("assert command controls the exit code") {
    const char* good = R"(annwb v1
ring R = QQ[x,y] grevlex
ideal a = <x>
cmd assert {x} : gb a
)";
    Session s = parse_session(good);
    RunResult res = run_session(s);
    CHECK(res.exit_code == 0);
    CHECK(res.report.find("ASSERT = ok") != std::string::npos);

    const char* bad = R"(annwb v1
ring R = QQ[x,y] grevlex
ideal a = <x>
cmd assert {y} : gb a
)";
    RunResult res2 = run_session(parse_session(bad));
    CHECK(res2.exit_code == 1);
    CHECK(res2.report.find("ASSERT = FAILED") != std::string::npos);
}

TEST_CASE("inconclusive verdicts exit with code 3") {
    // not-found search is a scale verdict
    const char* text = R"(annwb v1
set window -4..1
set hrange 0..2
ring R = QQ[x,y] grevlex
ideal m = <x, y>
complex X = { -1: R^1; 0: R^1; d(-1) = [[x]]; deg(-1) = [1]; deg(0) = [0] }
spc Z = V(m)
set budget 6
cmd faltings search X Z Z 2
)";
    Session s = parse_session(text);
    RunResult res = run_session(s);
    CHECK(res.exit_code == 3);
    CHECK(res.report.find("not-found") != std::string::npos);
}

TEST_CASE("roundtrip command output and report format") {
    const char* text = R"(annwb v1
ring R = QQ[x] grevlex
poset P = { p < q }
cmd spfilt roundtrip P 0 1
cmd assert ok filtrations=15 maps=15 : spfilt roundtrip P 0 1
)";
    Session s = parse_session(text);
    RunResult res = run_session(s);
    INFO(res.report);
    CHECK(res.exit_code == 0);
    CHECK(res.report.find("ROUNDTRIP P 0 1 = ok") != std::string::npos);
}
