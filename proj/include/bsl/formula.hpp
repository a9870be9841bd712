#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bsl {

enum class Sort { S, D, N };
enum class Field { n, p, t };

const char* sort_name(Sort s);
const char* field_name(Field f);

// Variables compare by name; nil has no sort.
struct Var {
    std::string name;
    std::optional<Sort> sort;

    bool is_nil() const { return !sort.has_value(); }
    bool operator==(const Var& o) const { return name == o.name; }
    bool operator<(const Var& o) const { return name < o.name; }
};

Var nil_var();
Var var(std::string name, Sort s);

enum class Op { Eq, Neq, Pto, Sls, Dls, Nls, Star, And, Or, GNeg };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    // Eq/Neq: x y. Pto: root. Sls: x y. Dls: x y x' y'. Nls: x y z.
    std::vector<Var> args;
    // Pto only, sorted by field.
    std::vector<std::pair<Field, Var>> fields;
    // Connectives. For GNeg lhs is the guard and rhs the negated part.
    Formula lhs, rhs;
};

Formula eq(const Var& x, const Var& y);
Formula neq(const Var& x, const Var& y);
Formula pto(const Var& x, std::vector<std::pair<Field, Var>> fields);
Formula pto_s(const Var& x, const Var& n);
Formula pto_d(const Var& x, const Var& n, const Var& p);
Formula pto_n(const Var& x, const Var& n, const Var& t);
Formula sls(const Var& x, const Var& y);
Formula dls(const Var& x, const Var& y, const Var& xb, const Var& yb);
Formula nls(const Var& x, const Var& y, const Var& z);
Formula star(Formula a, Formula b);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula gneg(Formula guard, Formula neg);
Formula star_all(const std::vector<Formula>& parts);

bool is_atom(const Formula& f);
bool is_pure_atom(const Formula& f);
bool is_spatial_atom(const Formula& f);

// All variables of f plus nil.
std::set<Var> vars(const Formula& f);
// Variables of sort s plus nil.
std::set<Var> vars_of_sort(const Formula& f, Sort s);
std::set<Var> roots_of_spatial(const Formula& f);

struct SortError : std::runtime_error {
    std::string path;
    SortError(const std::string& msg, std::string at)
        : std::runtime_error(msg + " at " + at), path(std::move(at)) {}
};

// Throws SortError naming the offending subterm by its path from the root
// (0 = left operand, 1 = right operand).
void check_sorts(const Formula& f);

// Native s-expression syntax.
std::string to_string(const Formula& f);

size_t node_count(const Formula& f);
size_t depth(const Formula& f);

bool equal(const Formula& a, const Formula& b);

// Pre-order list of the atoms.
void collect_atoms(const Formula& f, std::vector<Formula>& out);

}  // namespace bsl
