#ifndef ANNWB_RUNNER_HPP
#define ANNWB_RUNNER_HPP

#include "annwb/session.hpp"

namespace annwb {

// Shape-checks a raw command, resolves its names against the session and
// returns the canonical token list. Throws SemanticError / ParseError.
std::vector<std::string> validate_command(const Session& s, const std::vector<std::string>& raw);

struct CommandOutcome {
    std::vector<std::string> lines; // report lines, first one is "KEY args = VALUE"
    std::string value;              // the VALUE part of the primary line
    int status = 0;                 // 0 ok, 1 failure, 3 inconclusive/resource
};

CommandOutcome run_command(const Session& s, size_t index);

struct RunResult {
    std::string report;
    int exit_code = 0; // 0 pass, 1 failure, 2 parse/semantic, 3 inconclusive/limit
};

RunResult run_session(const Session& s);

} // namespace annwb

#endif
