#pragma once

#include "bsl/formula.hpp"
#include "bsl/slgraph.hpp"

namespace bsl {

struct BoundProfile {
    int s = 0, d = 0, n = 0;
    int total = 1;

    int of(Sort sort) const { return sort == Sort::S ? s : sort == Sort::D ? d : n; }
};

// Contribution of x to the location bound, in halves (0, 2, 3 or 4).
int chunk_weight2(const Var& x, const SLGraph* g = nullptr);
double chunk_weight(const Var& x, const SLGraph* g = nullptr);

// With a graph, weights are charged once per must-equality class; a class
// containing nil costs nothing and a class with a must-pointer costs 1.
BoundProfile location_bounds(const Formula& phi, const SLGraph* g = nullptr);

// Sum of class weights (in halves) of the given variables of one sort.
int class_weight2_sum(const std::vector<int>& var_indices, const SLGraph& g, Sort sort);

}  // namespace bsl
