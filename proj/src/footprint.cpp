#include "bsl/footprint.hpp"

namespace bsl {

void FootprintSet::add(const Term& x) {
    Term n = normalize(x);
    for (auto& y : terms)
        if (same(y, n)) return;
    terms.push_back(n);
}

StarStrategy choose_strategy(size_t fp_left, size_t fp_right, const StrategyConfig& cfg) {
    if (cfg.mode == StrategyMode::Enum) return StarStrategy::Enumerate;
    if (cfg.mode == StrategyMode::Quantif) return StarStrategy::Quantify;
    return fp_left * fp_right <= cfg.limit ? StarStrategy::Enumerate : StarStrategy::Quantify;
}

namespace {

// The element of a one-element literal set, if it is a formula variable.
const TNode* singleton_var(const Term& x) {
    if (x->k != TK::SetLit || x->args.size() != 1) return nullptr;
    const Term& e = x->args[0];
    return e->k == TK::Const || e->k == TK::Loc ? e.get() : nullptr;
}

}  // namespace

bool FootprintCalculator::compatible(const Term& a, const Term& b) const {
    const TNode* x = singleton_var(a);
    const TNode* y = singleton_var(b);
    if (!x || !y) return true;
    if (same(a->args[0], b->args[0])) return false;
    if (!g_ || g_->contradiction() || x->k != TK::Const || y->k != TK::Const) return true;
    int i = -1, j = -1;
    for (int k = 0; k < g_->size(); k++) {
        if (g_->vars()[k].name == x->name) i = k;
        if (g_->vars()[k].name == y->name) j = k;
    }
    return i < 0 || j < 0 || !g_->eq(i, j);
}

const FootprintSet& FootprintCalculator::of(const Formula& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    FootprintSet out;
    switch (f->op) {
    case Op::Eq:
    case Op::Neq: out.add(t::empty()); break;
    case Op::Pto: {
        const Var& x = f->args[0];
        out.add(t::set_lit({x.is_nil() ? t::nil_loc() : t::cst(x.name)}));
        break;
    }
    case Op::Sls:
    case Op::Dls:
    case Op::Nls: out.add(atom_fp_(f)); break;
    case Op::GNeg: out = of(f->lhs); break;
    case Op::Or: {
        out = of(f->lhs);
        for (auto& x : of(f->rhs).terms) out.add(x);
        break;
    }
    case Op::And: {
        const auto& a = of(f->lhs);
        const auto& b = of(f->rhs);
        out = a.size() <= b.size() ? a : b;
        break;
    }
    case Op::Star: {
        const FootprintSet a = of(f->lhs);
        const FootprintSet b = of(f->rhs);
        for (auto& x : a.terms)
            for (auto& y : b.terms)
                if (compatible(x, y)) out.add(t::unite({x, y}));
        // Every pair overlapping: the star is unsatisfiable, but FP# must
        // stay nonempty.
        if (out.terms.empty()) out.add(t::unite({a.terms[0], b.terms[0]}));
        break;
    }
    }
    return memo_[f.get()] = out;
}

FootprintSet compute_fp(const Formula& f, const FootprintCalculator::AtomFp& atom_fp) {
    FootprintCalculator c(atom_fp);
    return c.of(f);
}

}  // namespace bsl
