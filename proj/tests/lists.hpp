#pragma once

#include <string>
#include <vector>

#include "bsl/formula.hpp"

namespace lists {

using namespace bsl;

struct Case {
    std::string name;
    Formula lhs;
    Formula rhs;  // null for satisfiability
    bool expected;  // sat, or valid for entailments
};

inline std::vector<Case> cases() {
    Var u = var("u", Sort::D), v = var("v", Sort::D), p = var("p", Sort::D), q = var("q", Sort::D);
    Var m = var("m", Sort::N), k = var("k", Sort::N);
    Var a = var("a", Sort::S), b = var("b", Sort::S);
    Var nil = nil_var();
    std::vector<Case> cs = {
        {"dls empty", conj(dls(u, v, p, q), star(eq(u, v), eq(p, q))), nullptr, true},
        {"dls empty needs equal ends", star(dls(u, u, p, q), neq(p, q)), nullptr, false},
        {"dls length one", conj(dls(u, v, u, q), pto_d(u, v, q)), nullptr, true},
        {"dls length one wrong back link", conj(dls(u, nil, u, nil), pto_d(u, nil, u)), nullptr, false},
        {"dls length two", conj(dls(u, nil, p, nil), star(pto_d(u, p, nil), pto_d(p, nil, u))), nullptr, true},
        {"dls back link violation", conj(dls(u, nil, p, nil), star(pto_d(u, p, nil), pto_d(p, nil, p))), nullptr, false},
        {"dls root allocated twice", star_all({dls(u, nil, p, nil), pto_d(u, nil, nil), neq(u, nil)}), nullptr, false},
        {"dls two lists", star_all({dls(u, nil, p, nil), dls(v, nil, q, nil), neq(u, nil), neq(v, nil)}), nullptr, true},
        {"dls longer than one", gneg(star(dls(u, nil, p, nil), neq(u, nil)), pto_d(u, nil, nil)), nullptr, true},
        {"dls cell entails list", star_all({pto_d(u, v, q), neq(u, v), neq(u, q)}), dls(u, v, u, q), true},
        {"dls cell without guard", pto_d(u, v, q), dls(u, v, u, q), false},
        {"dls composition", star(pto_d(u, p, nil), dls(p, nil, q, u)), dls(u, nil, q, nil), true},
        {"nls empty", conj(nls(m, nil, a), eq(m, nil)), nullptr, true},
        {"nls root allocated twice", star_all({nls(m, nil, a), pto_n(m, a, nil)}), nullptr, false},
        {"nls one top", conj(nls(m, nil, nil), star(pto_n(m, a, nil), pto_s(a, nil))), nullptr, true},
        {"nls inner list sharing", conj(nls(m, nil, nil), star_all({pto_n(m, a, k), pto_n(k, a, nil), pto_s(a, nil)})),
         nullptr, false},
        {"nls inner lists merging", conj(nls(m, nil, b), star_all({pto_n(m, a, k), pto_n(k, b, nil), pto_s(a, b)})),
         nullptr, true},
        {"nls inner lists merging early",
         conj(nls(m, nil, nil), star_all({pto_n(m, a, k), pto_n(k, b, nil), pto_s(a, b), pto_s(b, nil)})), nullptr,
         false},
        {"nls partial", conj(nls(m, k, nil), star(pto_n(m, a, k), pto_s(a, nil))), nullptr, true},
        {"nls empty inner list", conj(nls(m, nil, a), pto_n(m, a, nil)), nullptr, true},
        {"nls cell entails list", star_all({pto_n(m, a, k), pto_s(a, nil), nls(k, nil, nil)}), nls(m, nil, nil), true},
        {"nls missing inner cell", star(pto_n(m, a, k), nls(k, nil, nil)), nls(m, nil, nil), false},
        {"nls top is not inner", star(nls(m, nil, nil), neq(m, nil)), star(pto_n(m, a, nil), sls(a, nil)), false},
        {"nls two tops", gneg(star(nls(m, nil, nil), neq(m, nil)), star(pto_n(m, a, nil), sls(a, nil))), nullptr, true},
    };
    return cs;
}

}  // namespace lists
