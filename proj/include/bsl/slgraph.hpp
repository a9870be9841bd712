#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "bsl/formula.hpp"

namespace bsl {

// Must-relations over the variables of a formula. All relations are kept
// closed: ⊜ is an equivalence, the others are congruent w.r.t. ⊜, ≠ and ⊛
// are symmetric, and must-paths are irreflexive (a path between must-equal
// variables is empty and is dropped).
class SLGraph {
public:
    using Matrix = std::vector<std::vector<char>>;
    using Quad = std::array<int, 4>;

    SLGraph() = default;
    explicit SLGraph(std::vector<Var> vars);

    const std::vector<Var>& vars() const { return vars_; }
    int size() const { return (int)vars_.size(); }
    int index(const Var& v) const;
    int nil_index() const { return nil_; }

    bool contradiction() const { return bottom_; }

    bool eq(int a, int b) const { return eq_[a][b]; }
    bool neq(int a, int b) const { return neq_[a][b]; }
    bool pto(Field f, int a, int b) const { return pto_[fi(f)][a][b]; }
    bool path(Field f, int a, int b) const { return path_[fi(f)][a][b]; }
    bool disjoint(Field f, int a, int b, int c, int d) const {
        return disj_[fi(f)].count({a, b, c, d}) > 0;
    }
    const std::set<Quad>& disjoint_set(Field f) const { return disj_[fi(f)]; }

    bool eq(const Var& a, const Var& b) const { return eq(index(a), index(b)); }
    bool neq(const Var& a, const Var& b) const { return neq(index(a), index(b)); }
    bool pto(Field f, const Var& a, const Var& b) const { return pto(f, index(a), index(b)); }
    bool path(Field f, const Var& a, const Var& b) const { return path(f, index(a), index(b)); }
    bool disjoint(Field f, const Var& a, const Var& b, const Var& c, const Var& d) const {
        return disjoint(f, index(a), index(b), index(c), index(d));
    }

    // x ↦ₘf y for some f, y.
    bool must_pointer(int a) const;
    int rep(int a) const;

    void add_eq(int a, int b);
    void add_neq(int a, int b);
    void add_pto(Field f, int a, int b);
    void add_path(Field f, int a, int b);
    void add_disjoint(Field f, int a, int b, int c, int d);
    void set_contradiction() { bottom_ = true; }

    // Restores all closures.
    void close();
    std::set<int> alloc() const;

    friend SLGraph join(const SLGraph& a, const SLGraph& b);      // ⊔
    friend SLGraph meet(const SLGraph& a, const SLGraph& b);      // ⊓
    friend SLGraph disjoint_union(const SLGraph& a, const SLGraph& b);  // ⊎

    bool operator==(const SLGraph& o) const;
    // Every relation of o is contained in this graph.
    bool includes(const SLGraph& o) const;

    std::string to_dot() const;

private:
    static int fi(Field f) { return (int)f; }

    std::vector<Var> vars_;
    int nil_ = -1;
    bool bottom_ = false;
    Matrix eq_, neq_;
    std::array<Matrix, 3> pto_, path_;
    std::array<std::set<Quad>, 3> disj_;
};

SLGraph build(const Formula& f);
// Same, over a given variable universe (must contain vars(f)).
SLGraph build(const Formula& f, const std::vector<Var>& universe);

// Least fixpoint of ↦-match plus closures; contradiction() reports unsat.
SLGraph saturate(SLGraph g);

struct PathBound {
    int lower = 0;
    int upper = 0;
    bool operator==(const PathBound&) const = default;
};

// Initial bound of a single paths_f edge (a, b).
PathBound initial_bound(const SLGraph& g, const Formula& phi, Field f, const Var& a, const Var& b);

// Same as the initial bound but ignoring must-pointers: bounds any f-path
// segment inside the chunk owning the edge (used for inner nls lists).
PathBound region_bound(const SLGraph& g, const Formula& phi, Field f, const Var& a, const Var& b);

// Interval on the length of the f-path from x to y.
PathBound path_bound(const SLGraph& g, const Formula& phi, Field f, const Var& x, const Var& y);

}  // namespace bsl
