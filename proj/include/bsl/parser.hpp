#pragma once

#include <stdexcept>
#include <string>

#include "bsl/formula.hpp"

namespace bsl {

enum class Expected { Absent, Sat, Unsat, Unknown };
const char* expected_name(Expected e);

struct Query {
    enum class Mode { Sat, Entailment } mode = Mode::Sat;
    Formula formula;  // sat mode
    Formula lhs, rhs;  // entailment mode
    Expected expected = Expected::Absent;
    std::string source_name;

    // The formula whose satisfiability is decided.
    Formula sat_formula() const;
};

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

struct UnsupportedFeature : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Query parse_native(const std::string& text);
Query parse_slcomp(const std::string& text);
// By extension: .smt2 is the SL-COMP subset, anything else native.
Query parse_file(const std::string& path);

std::string print_native(const Query& q);

}  // namespace bsl
