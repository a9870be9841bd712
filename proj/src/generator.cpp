#include "bsl/generator.hpp"

namespace bsl {

FormulaGenerator::FormulaGenerator(GenConfig cfg, unsigned seed) : cfg_(cfg), rng_(seed) {
    for (int i = 0; i < cfg_.s_vars; i++) s_.push_back(var(std::string(1, char('x' + i % 3)) + std::to_string(i / 3), Sort::S));
    for (int i = 0; i < cfg_.d_vars; i++) d_.push_back(var("d" + std::to_string(i), Sort::D));
    for (int i = 0; i < cfg_.n_vars; i++) n_.push_back(var("m" + std::to_string(i), Sort::N));
}

const Var& FormulaGenerator::pick(const std::vector<Var>& pool) {
    return pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng_)];
}

Var FormulaGenerator::pick_or_nil(const std::vector<Var>& pool) {
    if (pool.empty() || std::uniform_int_distribution<int>(0, pool.size())(rng_) == 0) return nil_var();
    return pick(pool);
}

Formula FormulaGenerator::atom() {
    std::vector<int> kinds;
    if (cfg_.pure) kinds.insert(kinds.end(), {0, 1});
    if (cfg_.pointers) kinds.insert(kinds.end(), {2, 2});
    if (cfg_.sls && !s_.empty()) kinds.insert(kinds.end(), {3, 3});
    if (cfg_.dls && !d_.empty()) kinds.insert(kinds.end(), {4, 4});
    if (cfg_.nls && !n_.empty()) kinds.insert(kinds.end(), {5, 5});
    int k = kinds[std::uniform_int_distribution<size_t>(0, kinds.size() - 1)(rng_)];
    // Pools with at least one variable, for roots.
    std::vector<const std::vector<Var>*> pools;
    for (auto* p : {&s_, &d_, &n_})
        if (!p->empty()) pools.push_back(p);
    const auto& pool = *pools[std::uniform_int_distribution<size_t>(0, pools.size() - 1)(rng_)];
    switch (k) {
    case 0: return eq(pick_or_nil(pool), pick_or_nil(pool));
    case 1: return neq(pick_or_nil(pool), pick_or_nil(pool));
    case 2: {
        const Var& x = pick(pool);
        if (*x.sort == Sort::S) return pto_s(x, pick_or_nil(s_));
        if (*x.sort == Sort::D) return pto_d(x, pick_or_nil(d_), pick_or_nil(d_));
        return pto_n(x, pick_or_nil(s_), pick_or_nil(n_));
    }
    case 3: return sls(pick_or_nil(s_), pick_or_nil(s_));
    case 4: return dls(pick_or_nil(d_), pick_or_nil(d_), pick_or_nil(d_), pick_or_nil(d_));
    default: return nls(pick_or_nil(n_), pick_or_nil(n_), pick_or_nil(s_));
    }
}

Formula FormulaGenerator::gen(int depth) {
    if (depth <= 0 || std::bernoulli_distribution(cfg_.atom_prob)(rng_)) return atom();
    Formula a = gen(depth - 1), b = gen(depth - 1);
    switch (std::uniform_int_distribution<int>(0, 3)(rng_)) {
    case 0: return star(a, b);
    case 1: return conj(a, b);
    case 2: return disj(a, b);
    default: return gneg(a, b);
    }
}

}  // namespace bsl
