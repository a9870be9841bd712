#pragma once

#include <functional>
#include <map>
#include <vector>

#include "bsl/formula.hpp"
#include "bsl/slgraph.hpp"
#include "bsl/smt.hpp"

namespace bsl {

struct FootprintSet {
    std::vector<Term> terms;  // normalized, no structural duplicates

    size_t size() const { return terms.size(); }
    void add(const Term& x);
};

enum class StarStrategy { Enumerate, Quantify };
enum class StrategyMode { Auto, Enum, Quantif };

struct StrategyConfig {
    StrategyMode mode = StrategyMode::Auto;
    size_t limit = 64;
};

StarStrategy choose_strategy(size_t fp_left, size_t fp_right, const StrategyConfig& cfg);

// Footprint terms FP#(ψ). Inductive predicates get their path term from the
// callback; the optional graph lets star pairs that must overlap be dropped.
class FootprintCalculator {
public:
    using AtomFp = std::function<Term(const Formula&)>;

    FootprintCalculator(AtomFp atom_fp, const SLGraph* g = nullptr) : atom_fp_(std::move(atom_fp)), g_(g) {}

    const FootprintSet& of(const Formula& f);
    // False when the pair can never be disjoint.
    bool compatible(const Term& a, const Term& b) const;

private:
    AtomFp atom_fp_;
    const SLGraph* g_;
    std::map<const Node*, FootprintSet> memo_;
};

// Convenience for formulas without inductive predicates or with default
// path terms supplied by the caller.
FootprintSet compute_fp(const Formula& f, const FootprintCalculator::AtomFp& atom_fp);

}  // namespace bsl
