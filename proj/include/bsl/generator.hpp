#pragma once

#include <random>
#include <vector>

#include "bsl/formula.hpp"

namespace bsl {

struct GenConfig {
    int s_vars = 3, d_vars = 0, n_vars = 0;
    int depth = 4;
    bool pointers = true, sls = true, dls = false, nls = false, pure = true;
    double atom_prob = 0.3;  // chance of stopping early at an inner node
};

// Random well-sorted formulae over a fixed pool of variables.
class FormulaGenerator {
public:
    FormulaGenerator(GenConfig cfg, unsigned seed);

    Formula formula() { return gen(cfg_.depth); }
    Formula atom();

private:
    Formula gen(int depth);
    const Var& pick(const std::vector<Var>& pool);
    Var pick_or_nil(const std::vector<Var>& pool);

    GenConfig cfg_;
    std::mt19937 rng_;
    std::vector<Var> s_, d_, n_;
};

}  // namespace bsl
