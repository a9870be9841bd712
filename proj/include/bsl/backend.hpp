#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsl/translator.hpp"

namespace bsl {

enum class Encoding { Sets, Bitvectors };
const char* encoding_name(Encoding e);

enum class Status { Sat, Unsat, Unknown };
const char* status_name(Status s);

struct SolverConfig {
    std::string command = "z3";
    std::vector<std::string> args = {"-in"};
    double timeout = 0;  // seconds, 0 = none

    // Check command for bitvector scripts that keep a quantifier, empty for
    // plain check-sat. z3 gets stuck on some of them unless it eliminates
    // the quantifier first.
    std::string quantified_check() const;
};

// Solver command from BSL_SOLVER (split on spaces), else z3 reading stdin.
SolverConfig default_solver();

struct SolverVerdict {
    Status status = Status::Unknown;
    // Values of the model queries: variable names, "D[i]", "h_n[i]", ...
    std::map<std::string, std::string> model;
    // Raw get-value answers in query order.
    std::vector<std::string> values;
    std::string raw;
};

struct UnsupportedTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverCrash : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SolverOutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// SMT-LIB 2 text. With model queries, get-value commands for every
// constant, D membership and heap cell follow the check-sat.
std::string render(const SmtScript& s, Encoding enc, bool model_queries = true,
                   const std::string& quantified_check = "");

SolverVerdict run_solver(const std::string& text, const SolverConfig& cfg);

// Names of the model queries emitted by render, in order.
std::vector<std::string> model_query_names(const SmtScript& s);
// Fills v.model from v.values.
void label_model(SolverVerdict& v, const SmtScript& s);

// Location index of a model value in the given encoding, -1 if malformed.
int decode_loc(const std::string& value, Encoding enc, const SmtScript& s);

}  // namespace bsl
