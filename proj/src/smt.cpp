#include "bsl/smt.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace bsl {

namespace {

Term mk(TK k, TSort s, std::vector<Term> args = {}) {
    auto n = std::make_shared<TNode>();
    n->k = k;
    n->sort = s;
    n->args = std::move(args);
    return n;
}

bool is(const Term& x, TK k) { return x->k == k; }

}  // namespace

namespace t {

Term tru() {
    static Term x = mk(TK::True, TSort::Bool);
    return x;
}
Term fls() {
    static Term x = mk(TK::False, TSort::Bool);
    return x;
}

Term lnot(Term a) {
    if (is(a, TK::True)) return fls();
    if (is(a, TK::False)) return tru();
    if (is(a, TK::Not)) return a->args[0];
    return mk(TK::Not, TSort::Bool, {a});
}

Term land(std::vector<Term> xs) {
    std::vector<Term> out;
    for (auto& x : xs) {
        if (is(x, TK::True)) continue;
        if (is(x, TK::False)) return fls();
        if (is(x, TK::And))
            out.insert(out.end(), x->args.begin(), x->args.end());
        else
            out.push_back(x);
    }
    if (out.empty()) return tru();
    if (out.size() == 1) return out[0];
    return mk(TK::And, TSort::Bool, std::move(out));
}

Term lor(std::vector<Term> xs) {
    std::vector<Term> out;
    for (auto& x : xs) {
        if (is(x, TK::False)) continue;
        if (is(x, TK::True)) return tru();
        if (is(x, TK::Or))
            out.insert(out.end(), x->args.begin(), x->args.end());
        else
            out.push_back(x);
    }
    if (out.empty()) return fls();
    if (out.size() == 1) return out[0];
    return mk(TK::Or, TSort::Bool, std::move(out));
}

Term implies(Term a, Term b) {
    if (is(a, TK::False) || is(b, TK::True)) return tru();
    if (is(a, TK::True)) return b;
    return mk(TK::Implies, TSort::Bool, {a, b});
}

Term ite(Term c, Term a, Term b) {
    if (is(c, TK::True)) return a;
    if (is(c, TK::False)) return b;
    if (same(a, b)) return a;
    return mk(TK::Ite, a->sort, {c, a, b});
}

Term eq(Term a, Term b) {
    if (same(a, b)) return tru();
    if (is(a, TK::Loc) && is(b, TK::Loc)) return fls();
    return mk(TK::Eq, TSort::Bool, {a, b});
}

Term member(Term x, Term s) {
    if (is(s, TK::Empty)) return fls();
    return mk(TK::Member, TSort::Bool, {x, s});
}

Term subset(Term a, Term b) {
    if (is(a, TK::Empty) || same(a, b)) return tru();
    return mk(TK::Subset, TSort::Bool, {a, b});
}

Term forall(std::vector<std::string> binders, Term body) {
    if (is(body, TK::True) || is(body, TK::False)) return body;
    auto n = std::make_shared<TNode>();
    n->k = TK::Forall;
    n->binders = std::move(binders);
    n->args = {body};
    return n;
}

Term exists(std::vector<std::string> binders, Term body) {
    if (is(body, TK::True) || is(body, TK::False)) return body;
    auto n = std::make_shared<TNode>();
    n->k = TK::Exists;
    n->binders = std::move(binders);
    n->args = {body};
    return n;
}

Term loc(LocSort s, int index) {
    auto n = std::make_shared<TNode>();
    n->k = TK::Loc;
    n->sort = TSort::Loc;
    n->loc_sort = s;
    n->index = s == LocSort::Nil ? 0 : index;
    return n;
}

Term nil_loc() {
    static Term x = loc(LocSort::Nil, 0);
    return x;
}

Term cst(const std::string& name) {
    auto n = std::make_shared<TNode>();
    n->k = TK::Const;
    n->sort = TSort::Loc;
    n->name = name;
    return n;
}

Term bound_loc(const std::string& name) {
    auto n = std::make_shared<TNode>();
    n->k = TK::Bound;
    n->sort = TSort::Loc;
    n->name = name;
    return n;
}

Term bound_set(const std::string& name) {
    auto n = std::make_shared<TNode>();
    n->k = TK::Bound;
    n->sort = TSort::Set;
    n->name = name;
    return n;
}

Term select(Field f, Term x) {
    auto n = std::make_shared<TNode>();
    n->k = TK::Select;
    n->sort = TSort::Loc;
    n->field = f;
    n->args = {x};
    return n;
}

Term power(Field f, Term x, int k) {
    for (int i = 0; i < k; i++) x = select(f, x);
    return x;
}

Term empty() {
    static Term x = mk(TK::Empty, TSort::Set);
    return x;
}

Term set_lit(std::vector<Term> elems) {
    if (elems.empty()) return empty();
    return mk(TK::SetLit, TSort::Set, std::move(elems));
}

Term unite(std::vector<Term> xs) {
    std::vector<Term> out;
    for (auto& x : xs) {
        if (is(x, TK::Empty)) continue;
        if (is(x, TK::Union))
            out.insert(out.end(), x->args.begin(), x->args.end());
        else
            out.push_back(x);
    }
    if (out.empty()) return empty();
    if (out.size() == 1) return out[0];
    return mk(TK::Union, TSort::Set, std::move(out));
}

Term inter(Term a, Term b) {
    if (is(a, TK::Empty) || is(b, TK::Empty)) return empty();
    return mk(TK::Inter, TSort::Set, {a, b});
}

Term diff(Term a, Term b) {
    if (is(a, TK::Empty)) return empty();
    if (is(b, TK::Empty)) return a;
    return mk(TK::Diff, TSort::Set, {a, b});
}

Term set_sym(const std::string& name) {
    auto n = std::make_shared<TNode>();
    n->k = TK::SetSym;
    n->sort = TSort::Set;
    n->name = name;
    return n;
}

}  // namespace t

namespace {

const char* head(TK k) {
    switch (k) {
    case TK::Not: return "not";
    case TK::And: return "and";
    case TK::Or: return "or";
    case TK::Implies: return "=>";
    case TK::Ite: return "ite";
    case TK::Eq: return "=";
    case TK::Member: return "member";
    case TK::Subset: return "subset";
    case TK::SetLit: return "set";
    case TK::Union: return "union";
    case TK::Inter: return "inter";
    case TK::Diff: return "diff";
    default: return "?";
    }
}

void print(std::ostream& os, const Term& x) {
    switch (x->k) {
    case TK::True: os << "true"; return;
    case TK::False: os << "false"; return;
    case TK::Empty: os << "empty"; return;
    case TK::Loc:
        if (x->loc_sort == LocSort::Nil)
            os << "lnil";
        else
            os << "l" << loc_sort_name(x->loc_sort) << x->index;
        return;
    case TK::Const: os << x->name; return;
    case TK::Bound: os << x->name; return;
    case TK::SetSym: os << x->name; return;
    case TK::Select:
        os << "(h_" << field_name(x->field) << " ";
        print(os, x->args[0]);
        os << ")";
        return;
    case TK::Forall:
    case TK::Exists: {
        os << (x->k == TK::Forall ? "(forall (" : "(exists (");
        for (size_t i = 0; i < x->binders.size(); i++) os << (i ? " " : "") << x->binders[i];
        os << ") ";
        print(os, x->args[0]);
        os << ")";
        return;
    }
    default: break;
    }
    os << "(" << head(x->k);
    for (auto& a : x->args) {
        os << " ";
        print(os, a);
    }
    os << ")";
}

}  // namespace

std::string to_string(const Term& x) {
    std::ostringstream os;
    print(os, x);
    return os.str();
}

bool same(const Term& a, const Term& b) {
    if (a == b) return true;
    if (a->k != b->k || a->sort != b->sort || a->name != b->name || a->loc_sort != b->loc_sort ||
        a->index != b->index || a->field != b->field || a->binders != b->binders ||
        a->args.size() != b->args.size())
        return false;
    for (size_t i = 0; i < a->args.size(); i++)
        if (!same(a->args[i], b->args[i])) return false;
    return true;
}

size_t node_count(const Term& x) {
    // Distinct nodes: shared subterms are emitted once.
    std::unordered_set<const TNode*> seen;
    std::vector<const TNode*> todo{x.get()};
    while (!todo.empty()) {
        const TNode* n = todo.back();
        todo.pop_back();
        if (!seen.insert(n).second) continue;
        for (auto& a : n->args) todo.push_back(a.get());
    }
    return seen.size();
}

bool has_quantifier(const Term& x) {
    std::unordered_set<const TNode*> seen;
    std::vector<const TNode*> todo{x.get()};
    while (!todo.empty()) {
        const TNode* n = todo.back();
        todo.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->k == TK::Forall || n->k == TK::Exists) return true;
        for (auto& a : n->args) todo.push_back(a.get());
    }
    return false;
}

namespace {

struct Skolem {
    std::vector<std::string>& freed;
    std::map<std::pair<const TNode*, bool>, Term> memo;

    Term run(const Term& x, bool positive) {
        auto key = std::make_pair(x.get(), positive);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Term r = step(x, positive);
        memo[key] = r;
        return r;
    }

    Term step(const Term& x, bool positive) {
        switch (x->k) {
        case TK::Exists:
            if (!positive) return x;
            freed.insert(freed.end(), x->binders.begin(), x->binders.end());
            return run(x->args[0], positive);
        case TK::And:
        case TK::Or: {
            std::vector<Term> args;
            for (auto& a : x->args) args.push_back(run(a, positive));
            return x->k == TK::And ? t::land(std::move(args)) : t::lor(std::move(args));
        }
        case TK::Not: return t::lnot(run(x->args[0], !positive));
        case TK::Implies: return t::implies(run(x->args[0], !positive), run(x->args[1], positive));
        default: return x;
        }
    }
};

}  // namespace

Term skolemize(const Term& x, std::vector<std::string>& freed) { return Skolem{freed, {}}.run(x, true); }

Term normalize(const Term& x) {
    if (x->args.empty()) return x;
    std::vector<Term> args;
    for (auto& a : x->args) args.push_back(normalize(a));
    if (x->k == TK::Union || x->k == TK::SetLit) {
        std::vector<std::pair<std::string, Term>> parts;
        auto add = [&](const Term& p) {
            if (p->k == TK::SetLit) {
                for (auto& e : p->args) {
                    Term s = t::set_lit({e});
                    parts.push_back({to_string(s), s});
                }
            } else if (p->k != TK::Empty) {
                parts.push_back({to_string(p), p});
            }
        };
        for (auto& a : args) {
            if (a->k == TK::Union)
                for (auto& b : a->args) add(b);
            else if (x->k == TK::SetLit)
                add(t::set_lit({a}));
            else
                add(a);
        }
        std::sort(parts.begin(), parts.end(),
                  [](auto& p, auto& q) { return p.first < q.first; });
        parts.erase(std::unique(parts.begin(), parts.end(),
                                [](auto& p, auto& q) { return p.first == q.first; }),
                    parts.end());
        if (parts.empty()) return t::empty();
        // Right-leaning binary chain.
        Term acc = parts.back().second;
        for (int i = (int)parts.size() - 2; i >= 0; i--)
            acc = mk(TK::Union, TSort::Set, {parts[i].second, acc});
        return acc;
    }
    auto n = std::make_shared<TNode>(*x);
    n->args = std::move(args);
    return n;
}

}  // namespace bsl
