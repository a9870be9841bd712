#pragma once

#include <optional>
#include <string>

#include "bsl/backend.hpp"
#include "bsl/oracle.hpp"
#include "bsl/translator.hpp"

namespace bsl {

struct SolveOptions {
    Encoding encoding = Encoding::Bitvectors;
    TranslateConfig translate;
    SolverConfig solver = default_solver();
    // Decide by enumeration instead of the SMT backend.
    bool oracle = false;
    int oracle_cap = 9;
    bool entailment_shortcut = true;
    bool keep_smt = false;
};

struct SolveResult {
    Status status = Status::Unknown;
    std::optional<Model> model;
    bool verified = false;       // model satisfies the query formula
    bool contradiction = false;  // decided by SL-graph saturation
    bool shortcut = false;       // entailment decided on its left-hand side
    BoundProfile bounds;
    SmtScript script;
    size_t term_size = 0;
    std::string smt;
    double seconds = 0;
};

SolveResult solve_formula(const Formula& phi, const SolveOptions& opt);

// Status refers to the counterexample query: unsat means the entailment
// is valid.
SolveResult solve_entailment(const Formula& lhs, const Formula& rhs, const SolveOptions& opt);

}  // namespace bsl
