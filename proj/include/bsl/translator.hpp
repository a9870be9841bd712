#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsl/bounds.hpp"
#include "bsl/footprint.hpp"
#include "bsl/formula.hpp"
#include "bsl/slgraph.hpp"
#include "bsl/smt.hpp"

namespace bsl {

struct TranslateConfig {
    StrategyConfig strategy;
    // Use SL-graph tightened location and path bounds.
    bool tighten = true;
    // Expand invariants over paths whose upper bound is at most half the
    // sort bound instead of quantifying over all locations.
    bool path_quantifiers = true;
};

struct StarStat {
    std::string node;
    size_t left = 0, right = 0;
    StarStrategy strategy = StarStrategy::Enumerate;
};

struct SmtScript {
    BoundProfile bounds;
    std::vector<std::string> consts;  // formula variables except nil
    Term assertion;                   // A_φ ∧ T(φ, D)
    std::map<std::string, PathBound> path_bounds;
    std::vector<StarStat> stars;

    // Layout shared by both encodings: nil = 0, then S, D and N blocks.
    int universe() const { return bounds.total; }
    LocSort sort_of(int index) const;
    int index_of(LocSort s, int i) const;
};

// reach^{[m,n]}(h_f, x, y)
Term reach(Field f, const Term& x, const Term& y, PathBound b);
// path^{[m,n]}_S(h_f, x, y)
Term path_simple(Field f, const Term& x, const Term& y, PathBound b);
// path^{[m,n]}_N(h_t, h_n, x, y, z) with inner paths bounded by `inner`
Term path_nested(const Term& x, const Term& y, const Term& z, PathBound top, PathBound inner);

class Translator {
public:
    explicit Translator(Formula phi, TranslateConfig cfg = {});

    const BoundProfile& bounds() const { return bounds_; }
    const SLGraph& graph() const { return g_; }

    Term axioms() const;
    Term translate(const Formula& psi, const Term& F);
    const FootprintSet& footprints(const Formula& psi) { return fp_.of(psi); }
    SmtScript script();

    // Bounds used for an inductive atom: main path, and for nls the inner one.
    PathBound main_bound(const Formula& atom) const;
    PathBound inner_bound(const Formula& atom) const;

private:
    Term translate_node(const Formula& psi, const Term& F);
    Term var_term(const Var& v) const;
    Term atom_fp(const Formula& atom) const;
    Term tr_sls(const Formula& a, const Term& F);
    Term tr_dls(const Formula& a, const Term& F);
    Term tr_nls(const Formula& a, const Term& F);
    Term tr_star(const Formula& a, const Term& F);
    Term sort_set(Sort s) const;
    // Set relations decided from the graph when both sides are unions of
    // variables known to be pairwise distinct.
    std::optional<std::vector<int>> literal(const Term& set) const;
    Term set_eq(const Term& a, const Term& b) const;
    Term disjoint(const Term& a, const Term& b) const;
    std::string fresh(const char* prefix);

    Formula phi_;
    TranslateConfig cfg_;
    SLGraph g_;
    bool use_graph_ = false;
    BoundProfile bounds_;
    FootprintCalculator fp_;
    int fresh_ = 0;
    std::vector<StarStat> stars_;
    std::map<std::string, PathBound> recorded_;
    std::map<std::pair<const Node*, const TNode*>, Term> memo_;
    std::map<std::string, int> graph_index_;
};

// Counterexample query for an entailment.
Formula entailment_query(const Formula& lhs, const Formula& rhs);

// The entailment shortcut: when rhs is a ⋆-conjunction of atoms one of
// whose spatial roots does not occur in lhs (and cannot be an empty list),
// the entailment is invalid iff lhs is satisfiable.
bool entailment_reduces_to_lhs(const Formula& lhs, const Formula& rhs);

}  // namespace bsl
