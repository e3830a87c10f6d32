#ifndef ANNWB_ERRORS_HPP
#define ANNWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace annwb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RingMismatchError : Error {
    explicit RingMismatchError(const std::string& what) : Error("ring mismatch: " + what) {}
};

// Signals an exhausted S-pair / step budget, never a wrong answer.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& what) : Error("resource limit: " + what) {}
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& what)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
          line(line_), col(col_) {}
};

struct SemanticError : Error {
    explicit SemanticError(const std::string& what) : Error("semantic error: " + what) {}
};

// A postcondition that is impossible mathematically; reaching it means a bug.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

} // namespace annwb

#endif
