#include "bsl/bounds.hpp"

#include <map>

namespace bsl {

namespace {

int sort_weight2(Sort s) { return s == Sort::D ? 3 : 4; }

}  // namespace

int chunk_weight2(const Var& x, const SLGraph* g) {
    if (x.is_nil()) return 0;
    if (g) {
        int i = g->index(x);
        if (i >= 0 && g->eq(i, g->nil_index())) return 0;
        if (i >= 0 && g->must_pointer(i)) return 2;
    }
    return sort_weight2(*x.sort);
}

double chunk_weight(const Var& x, const SLGraph* g) { return chunk_weight2(x, g) / 2.0; }

int class_weight2_sum(const std::vector<int>& idx, const SLGraph& g, Sort sort) {
    std::map<int, int> per_class;
    for (int i : idx) {
        const Var& v = g.vars()[i];
        if (v.is_nil() || v.sort != sort) continue;
        int r = g.rep(i);
        int w = chunk_weight2(v, &g);
        auto it = per_class.find(r);
        if (it == per_class.end()) {
            per_class[r] = w;
        } else {
            // Any must-pointer member makes the whole class cost 1.
            it->second = std::min(it->second, w);
        }
    }
    int sum = 0;
    for (auto& [r, w] : per_class) sum += w;
    return sum;
}

BoundProfile location_bounds(const Formula& phi, const SLGraph* g) {
    int halves[3] = {0, 0, 0};
    Sort sorts[3] = {Sort::S, Sort::D, Sort::N};
    if (g && !g->vars().empty()) {
        std::vector<int> all;
        for (auto& v : vars(phi)) {
            int i = g->index(v);
            if (i >= 0) all.push_back(i);
        }
        for (int k = 0; k < 3; k++) halves[k] = class_weight2_sum(all, *g, sorts[k]);
    } else {
        for (auto& v : vars(phi)) {
            if (v.is_nil()) continue;
            halves[(int)*v.sort] += chunk_weight2(v);
        }
    }
    BoundProfile b;
    b.s = halves[0] / 2;
    b.d = halves[1] / 2;
    b.n = halves[2] / 2;
    b.total = 1 + (halves[0] + halves[1] + halves[2]) / 2;
    return b;
}

}  // namespace bsl
