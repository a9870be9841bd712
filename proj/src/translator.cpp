#include "bsl/translator.hpp"

#include <algorithm>
#include <functional>

namespace bsl {

LocSort SmtScript::sort_of(int index) const {
    if (index == 0) return LocSort::Nil;
    if (index <= bounds.s) return LocSort::S;
    if (index <= bounds.s + bounds.d) return LocSort::D;
    return LocSort::N;
}

int SmtScript::index_of(LocSort s, int i) const {
    switch (s) {
    case LocSort::Nil: return 0;
    case LocSort::S: return i;
    case LocSort::D: return bounds.s + i;
    case LocSort::N: return bounds.s + bounds.d + i;
    }
    return 0;
}

Term reach(Field f, const Term& x, const Term& y, PathBound b) {
    std::vector<Term> xs;
    for (int i = b.lower; i <= b.upper; i++) xs.push_back(t::eq(t::power(f, x, i), y));
    return t::lor(std::move(xs));
}

namespace {

Term prefix(Field f, const Term& x, int len) {
    std::vector<Term> cells;
    for (int i = 0; i < len; i++) cells.push_back(t::power(f, x, i));
    return t::set_lit(std::move(cells));
}

}  // namespace

Term path_simple(Field f, const Term& x, const Term& y, PathBound b) {
    Term acc = t::empty();
    for (int i = b.upper; i >= b.lower; i--)
        acc = t::ite(t::eq(t::power(f, x, i), y), prefix(f, x, i), acc);
    return acc;
}

Term path_nested(const Term& x, const Term& y, const Term& z, PathBound top, PathBound inner) {
    Term acc = t::empty();
    for (int i = top.upper; i >= top.lower; i--) {
        std::vector<Term> parts;
        for (int j = 0; j < i; j++) parts.push_back(path_simple(Field::n, t::power(Field::t, x, j), z, inner));
        acc = t::ite(t::eq(t::power(Field::t, x, i), y), t::unite(std::move(parts)), acc);
    }
    return acc;
}

Translator::Translator(Formula phi, TranslateConfig cfg)
    : phi_(std::move(phi)),
      cfg_(cfg),
      g_(saturate(build(phi_))),
      fp_([this](const Formula& a) { return atom_fp(a); }, &g_) {
    use_graph_ = cfg_.tighten && !g_.contradiction();
    bounds_ = location_bounds(phi_, use_graph_ ? &g_ : nullptr);
    if (use_graph_)
        for (int i = 0; i < g_.size(); i++) graph_index_[g_.vars()[i].name] = i;
}

std::optional<std::vector<int>> Translator::literal(const Term& x) const {
    if (!use_graph_) return std::nullopt;
    std::vector<int> out;
    auto elem = [&](const Term& e) {
        if (e->k != TK::Const) return false;
        auto it = graph_index_.find(e->name);
        if (it == graph_index_.end()) return false;
        out.push_back(it->second);
        return true;
    };
    std::function<bool(const Term&)> walk = [&](const Term& s) {
        switch (s->k) {
        case TK::Empty: return true;
        case TK::SetLit:
            for (auto& e : s->args)
                if (!elem(e)) return false;
            return true;
        case TK::Union:
            for (auto& a : s->args)
                if (!walk(a)) return false;
            return true;
        default: return false;
        }
    };
    if (!walk(x)) return std::nullopt;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (size_t i = 0; i < out.size(); i++)
        for (size_t j = i + 1; j < out.size(); j++)
            if (!g_.neq(out[i], out[j])) return std::nullopt;
    return out;
}

Term Translator::set_eq(const Term& a, const Term& b) const {
    auto la = literal(a), lb = literal(b);
    if (la && lb && literal(t::unite({a, b}))) return *la == *lb ? t::tru() : t::fls();
    return t::eq(a, b);
}

Term Translator::disjoint(const Term& a, const Term& b) const {
    auto la = literal(a), lb = literal(b);
    if (la && lb && literal(t::unite({a, b}))) {
        for (int i : *la)
            if (std::binary_search(lb->begin(), lb->end(), i)) return t::fls();
        return t::tru();
    }
    return t::eq(t::inter(a, b), t::empty());
}

Term Translator::var_term(const Var& v) const { return v.is_nil() ? t::nil_loc() : t::cst(v.name); }

Term Translator::sort_set(Sort s) const { return t::set_sym(std::string("D_") + sort_name(s)); }

std::string Translator::fresh(const char* prefix) { return std::string(prefix) + "!" + std::to_string(fresh_++); }

PathBound Translator::main_bound(const Formula& a) const {
    const Var& x = a->args[0];
    const Var& y = a->args[1];
    Field f = a->op == Op::Nls ? Field::t : Field::n;
    if (x.is_nil()) return {0, 0};
    if (use_graph_) return path_bound(g_, phi_, f, x, y);
    Sort s = a->op == Op::Sls ? Sort::S : a->op == Op::Dls ? Sort::D : Sort::N;
    return {0, bounds_.of(s)};
}

PathBound Translator::inner_bound(const Formula& a) const {
    const Var& x = a->args[0];
    const Var& z = a->args[2];
    if (x.is_nil()) return {1, 1};
    if (use_graph_) return {1, std::max(1, region_bound(g_, phi_, Field::n, x, z).upper)};
    return {1, 1 + bounds_.s};
}

Term Translator::atom_fp(const Formula& a) const {
    PathBound b = main_bound(a);
    Term x = var_term(a->args[0]), y = var_term(a->args[1]);
    if (b.lower > b.upper) return t::empty();
    if (a->op == Op::Nls) return path_nested(x, y, var_term(a->args[2]), b, inner_bound(a));
    return path_simple(Field::n, x, y, b);
}

Term Translator::axioms() const {
    std::vector<Term> xs;
    xs.push_back(t::lnot(t::member(t::nil_loc(), t::set_sym("D"))));
    const Sort sorts[3] = {Sort::S, Sort::D, Sort::N};
    for (Sort s : sorts) {
        std::vector<Term> elems{t::nil_loc()};
        for (int i = 1; i <= bounds_.of(s); i++) elems.push_back(t::loc(loc_sort_of(s), i));
        xs.push_back(t::eq(sort_set(s), t::set_lit(std::move(elems))));
        for (auto& v : vars_of_sort(phi_, s))
            if (!v.is_nil()) xs.push_back(t::member(var_term(v), sort_set(s)));
    }
    return t::land(std::move(xs));
}

Term Translator::tr_sls(const Formula& a, const Term& F) {
    PathBound b = main_bound(a);
    recorded_[to_string(a)] = b;
    if (b.lower > b.upper) return t::fls();
    Term x = var_term(a->args[0]), y = var_term(a->args[1]);
    return t::land({reach(Field::n, x, y, b), t::eq(F, path_simple(Field::n, x, y, b)),
                    t::subset(F, sort_set(Sort::S)), t::lnot(t::member(y, F))});
}

Term Translator::tr_dls(const Formula& a, const Term& F) {
    PathBound b = main_bound(a);
    recorded_[to_string(a)] = b;
    Term x = var_term(a->args[0]), y = var_term(a->args[1]);
    Term xb = var_term(a->args[2]), yb = var_term(a->args[3]);
    Term empty = t::land({t::eq(x, y), t::eq(xb, yb), t::eq(F, t::empty())});
    if (b.lower > b.upper) return empty;

    Term links;
    auto link = [&](const Term& l) {
        return t::implies(t::land({t::member(l, F), t::lnot(t::eq(l, xb))}),
                          t::eq(t::select(Field::p, t::select(Field::n, l)), l));
    };
    if (cfg_.path_quantifiers && b.upper <= bounds_.d / 2) {
        std::vector<Term> xs;
        for (int i = 0; i < b.upper; i++) xs.push_back(link(t::power(Field::n, x, i)));
        links = t::land(std::move(xs));
    } else {
        std::string l = fresh("l");
        links = t::forall({l}, link(t::bound_loc(l)));
    }
    Term nonempty = t::land({t::lnot(t::eq(x, y)), t::lnot(t::eq(xb, yb)), reach(Field::n, x, y, b),
                             t::eq(F, path_simple(Field::n, x, y, b)), t::eq(t::select(Field::p, x), yb),
                             t::eq(t::select(Field::n, xb), y), t::member(xb, F), t::lnot(t::member(yb, F)),
                             t::lnot(t::member(y, F)), t::subset(F, sort_set(Sort::D)), links});
    return t::lor({empty, nonempty});
}

Term Translator::tr_nls(const Formula& a, const Term& F) {
    PathBound b = main_bound(a);
    PathBound ib = inner_bound(a);
    recorded_[to_string(a)] = b;
    if (b.lower > b.upper) return t::fls();
    Term x = var_term(a->args[0]), y = var_term(a->args[1]), z = var_term(a->args[2]);
    Term top = path_simple(Field::t, x, y, b);
    Term DS = sort_set(Sort::S), DN = sort_set(Sort::N);

    auto inner = [&](const Term& l) { return t::implies(t::member(l, t::inter(F, DN)), reach(Field::n, l, z, ib)); };
    auto succ = [&](const Term& l) { return t::implies(t::member(l, F), t::member(t::select(Field::n, l), DS)); };
    auto disjoint = [&](const Term& l1, const Term& l2) {
        Term n1 = t::select(Field::n, l1);
        return t::implies(t::land({t::member(l1, F), t::member(l2, F), t::lnot(t::eq(l1, l2)),
                                   t::eq(n1, t::select(Field::n, l2))}),
                          t::lnot(t::member(n1, F)));
    };

    std::vector<Term> inv;
    bool expand = cfg_.path_quantifiers && b.upper <= bounds_.n / 2 && ib.upper <= (bounds_.s + 1) / 2;
    if (expand) {
        std::vector<Term> tops, cells;
        for (int i = 0; i < b.upper; i++) {
            Term l = t::power(Field::t, x, i);
            tops.push_back(l);
            for (int j = 0; j < ib.upper; j++) cells.push_back(t::power(Field::n, l, j));
        }
        for (auto& l : tops) inv.push_back(inner(l));
        for (auto& l : cells) inv.push_back(succ(l));
        for (size_t i = 0; i < cells.size(); i++)
            for (size_t j = i + 1; j < cells.size(); j++) inv.push_back(disjoint(cells[i], cells[j]));
    } else {
        std::string l = fresh("l"), l1 = fresh("l"), l2 = fresh("l");
        inv.push_back(t::forall({l}, t::land({inner(t::bound_loc(l)), succ(t::bound_loc(l))})));
        inv.push_back(t::forall({l1, l2}, disjoint(t::bound_loc(l1), t::bound_loc(l2))));
    }

    std::vector<Term> xs{reach(Field::t, x, y, b),
                         t::eq(F, path_nested(x, y, z, b, ib)),
                         t::lnot(t::member(y, F)),
                         t::lnot(t::member(z, F)),
                         t::subset(top, DN),
                         t::subset(t::diff(F, top), DS),
                         t::subset(top, F)};
    xs.insert(xs.end(), inv.begin(), inv.end());
    return t::land(std::move(xs));
}

Term Translator::tr_star(const Formula& a, const Term& F) {
    const FootprintSet left = fp_.of(a->lhs);
    const FootprintSet right = fp_.of(a->rhs);
    StarStrategy s = choose_strategy(left.size(), right.size(), cfg_.strategy);
    stars_.push_back({to_string(a), left.size(), right.size(), s});
    if (s == StarStrategy::Enumerate) {
        std::vector<Term> xs;
        for (auto& F1 : left.terms)
            for (auto& F2 : right.terms) {
                if (!fp_.compatible(F1, F2)) continue;
                Term side = t::land({disjoint(F1, F2), set_eq(F, t::unite({F1, F2}))});
                if (side->k == TK::False) continue;
                xs.push_back(t::land({side, translate(a->lhs, F1), translate(a->rhs, F2)}));
            }
        return t::lor(std::move(xs));
    }
    std::string f1 = fresh("F"), f2 = fresh("F");
    Term F1 = t::bound_set(f1), F2 = t::bound_set(f2);
    return t::exists({f1, f2}, t::land({translate(a->lhs, F1), translate(a->rhs, F2),
                                        t::eq(t::inter(F1, F2), t::empty()), t::eq(F, t::unite({F1, F2}))}));
}

Term Translator::translate(const Formula& f, const Term& F) {
    auto key = std::make_pair(f.get(), F.get());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Term r = translate_node(f, F);
    memo_[key] = r;
    return r;
}

Term Translator::translate_node(const Formula& f, const Term& F) {
    const auto& a = f->args;
    switch (f->op) {
    case Op::Eq: return t::land({set_eq(F, t::empty()), t::eq(var_term(a[0]), var_term(a[1]))});
    case Op::Neq: return t::land({set_eq(F, t::empty()), t::lnot(t::eq(var_term(a[0]), var_term(a[1])))});
    case Op::Pto: {
        std::vector<Term> xs{set_eq(F, t::set_lit({var_term(a[0])}))};
        for (auto& [fld, v] : f->fields) xs.push_back(t::eq(t::select(fld, var_term(a[0])), var_term(v)));
        return t::land(std::move(xs));
    }
    case Op::Sls: return tr_sls(f, F);
    case Op::Dls: return tr_dls(f, F);
    case Op::Nls: return tr_nls(f, F);
    case Op::And: return t::land({translate(f->lhs, F), translate(f->rhs, F)});
    case Op::Or: return t::lor({translate(f->lhs, F), translate(f->rhs, F)});
    case Op::GNeg: return t::land({translate(f->lhs, F), t::lnot(translate(f->rhs, F))});
    case Op::Star: return tr_star(f, F);
    }
    return t::fls();
}

SmtScript Translator::script() {
    SmtScript s;
    s.bounds = bounds_;
    for (auto& v : vars(phi_))
        if (!v.is_nil()) s.consts.push_back(v.name);
    stars_.clear();
    recorded_.clear();
    memo_.clear();
    // Disequalities the graph derives hold in every model of φ; stated
    // explicitly since set relations may have been decided from them.
    std::vector<Term> facts{axioms()};
    if (use_graph_)
        for (int i = 0; i < g_.size(); i++)
            for (int j = i + 1; j < g_.size(); j++)
                if (g_.neq(i, j) && !g_.vars()[i].is_nil() && !g_.vars()[j].is_nil())
                    facts.push_back(t::lnot(t::eq(var_term(g_.vars()[i]), var_term(g_.vars()[j]))));
    facts.push_back(translate(phi_, t::set_sym("D")));
    s.assertion = t::land(std::move(facts));
    s.path_bounds = recorded_;
    s.stars = stars_;
    return s;
}

Formula entailment_query(const Formula& lhs, const Formula& rhs) { return gneg(lhs, rhs); }

namespace {

bool star_of_atoms(const Formula& f, std::vector<Formula>& atoms) {
    if (is_atom(f)) {
        atoms.push_back(f);
        return true;
    }
    if (f->op != Op::Star) return false;
    return star_of_atoms(f->lhs, atoms) && star_of_atoms(f->rhs, atoms);
}

}  // namespace

bool entailment_reduces_to_lhs(const Formula& lhs, const Formula& rhs) {
    std::vector<Formula> atoms;
    if (!star_of_atoms(rhs, atoms)) return false;
    auto lv = vars(lhs);
    for (auto& a : atoms) {
        if (!is_spatial_atom(a)) continue;
        const Var& r = a->args[0];
        if (r.is_nil() || lv.count(r)) continue;
        if (a->op == Op::Pto || !(a->args[1] == r)) return true;
    }
    return false;
}

}  // namespace bsl
