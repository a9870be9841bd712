#pragma once

#include <doctest.h>

#include <cstdlib>
#include <unistd.h>

#include "bsl/bounds.hpp"
#include "bsl/formula.hpp"
#include "bsl/oracle.hpp"
#include "bsl/pipeline.hpp"

namespace test {

using namespace bsl;

inline const Var x = var("x", Sort::S), y = var("y", Sort::S), z = var("z", Sort::S), w = var("w", Sort::S);
inline const Var a = var("a", Sort::S), b = var("b", Sort::S), c = var("c", Sort::S), d = var("d", Sort::S);
inline const Var nil = nil_var();

// A cycle of two list segments and two pointers.
inline Formula cyclic_lists() {
    return gneg(star_all({sls(a, b), pto_s(b, c), pto_s(c, d), sls(d, a)}), star(sls(a, c), sls(c, a)));
}

inline Formula split_lhs(bool guarded) {
    Formula core = guarded ? gneg(sls(x, y), star(sls(x, z), sls(z, y))) : sls(x, y);
    return star(core, pto_s(y, z));
}

// Is the configured solver executable reachable?
inline bool have_solver() {
    std::string cmd = default_solver().command;
    if (cmd.find('/') != std::string::npos) return access(cmd.c_str(), X_OK) == 0;
    const char* path = std::getenv("PATH");
    std::string p = path ? path : "";
    size_t start = 0;
    while (start <= p.size()) {
        size_t end = p.find(':', start);
        if (end == std::string::npos) end = p.size();
        std::string dir = p.substr(start, end - start);
        if (!dir.empty() && access((dir + "/" + cmd).c_str(), X_OK) == 0) return true;
        start = end + 1;
    }
    return false;
}

// Verdict by exhaustive enumeration within the untightened bounds.
inline Status oracle_status(const Formula& f, int cap = 9) {
    SolveOptions o;
    o.oracle = true;
    o.oracle_cap = cap;
    return solve_formula(f, o).status;
}

inline Status smt_status(const Formula& f, SolveOptions o = {}) {
    SolveResult r = solve_formula(f, o);
    if (r.status == Status::Sat) CHECK_MESSAGE(r.verified, to_string(f));
    return r.status;
}

}  // namespace test
