#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bsl/formula.hpp"
#include "bsl/oracle.hpp"

namespace bsl {

// Solver-independent terms of the translation. Three term sorts: booleans,
// locations and location sets.
enum class TK {
    True, False, Not, And, Or, Implies, Ite, Eq, Member, Subset,
    Forall,  // binders are locations
    Exists,  // binders are sets
    Loc,     // location constant (sort tag, index)
    Const,   // variable of the formula
    Bound,   // bound variable
    Select,  // h_f[x]
    Empty, SetLit, Union, Inter, Diff,
    SetSym,  // D, D_S, D_D, D_N
};

enum class TSort { Bool, Loc, Set };

struct TNode;
using Term = std::shared_ptr<const TNode>;

struct TNode {
    TK k;
    TSort sort = TSort::Bool;
    std::string name;  // Const, Bound, SetSym
    LocSort loc_sort = LocSort::Nil;
    int index = 0;  // Loc
    Field field = Field::n;  // Select
    std::vector<Term> args;
    std::vector<std::string> binders;
};

namespace t {
Term tru();
Term fls();
Term lnot(Term a);
Term land(std::vector<Term> xs);
Term lor(std::vector<Term> xs);
Term implies(Term a, Term b);
Term ite(Term c, Term a, Term b);
Term eq(Term a, Term b);
Term member(Term x, Term s);
Term subset(Term a, Term b);
Term forall(std::vector<std::string> binders, Term body);
Term exists(std::vector<std::string> binders, Term body);
Term loc(LocSort s, int index);
Term nil_loc();
Term cst(const std::string& name);
Term bound_loc(const std::string& name);
Term bound_set(const std::string& name);
Term select(Field f, Term x);
// h_f^k[x]
Term power(Field f, Term x, int k);
Term empty();
Term set_lit(std::vector<Term> elems);
Term unite(std::vector<Term> xs);
Term inter(Term a, Term b);
Term diff(Term a, Term b);
Term set_sym(const std::string& name);
}  // namespace t

std::string to_string(const Term& x);
bool same(const Term& a, const Term& b);
size_t node_count(const Term& x);
bool has_quantifier(const Term& x);

// Replaces existential quantifiers in positive positions (outside any
// universal quantifier) by their bodies and reports the freed binders.
Term skolemize(const Term& x, std::vector<std::string>& freed);

// Normal form for deduplication: unions flattened, sorted and right-leaning.
Term normalize(const Term& x);

}  // namespace bsl
