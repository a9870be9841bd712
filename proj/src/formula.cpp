#include "bsl/formula.hpp"

#include <algorithm>
#include <sstream>

namespace bsl {

const char* sort_name(Sort s) {
    switch (s) {
    case Sort::S: return "S";
    case Sort::D: return "D";
    case Sort::N: return "N";
    }
    return "?";
}

const char* field_name(Field f) {
    switch (f) {
    case Field::n: return "n";
    case Field::p: return "p";
    case Field::t: return "t";
    }
    return "?";
}

Var nil_var() { return Var{"nil", std::nullopt}; }
Var var(std::string name, Sort s) { return Var{std::move(name), s}; }

namespace {

Formula make(Op op, std::vector<Var> args) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

Formula make_bin(Op op, Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

}  // namespace

Formula eq(const Var& x, const Var& y) { return make(Op::Eq, {x, y}); }
Formula neq(const Var& x, const Var& y) { return make(Op::Neq, {x, y}); }

Formula pto(const Var& x, std::vector<std::pair<Field, Var>> fields) {
    auto n = std::make_shared<Node>();
    n->op = Op::Pto;
    n->args = {x};
    std::sort(fields.begin(), fields.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    n->fields = std::move(fields);
    return n;
}

Formula pto_s(const Var& x, const Var& n) { return pto(x, {{Field::n, n}}); }
Formula pto_d(const Var& x, const Var& n, const Var& p) {
    return pto(x, {{Field::n, n}, {Field::p, p}});
}
Formula pto_n(const Var& x, const Var& n, const Var& t) {
    return pto(x, {{Field::n, n}, {Field::t, t}});
}

Formula sls(const Var& x, const Var& y) { return make(Op::Sls, {x, y}); }
Formula dls(const Var& x, const Var& y, const Var& xb, const Var& yb) {
    return make(Op::Dls, {x, y, xb, yb});
}
Formula nls(const Var& x, const Var& y, const Var& z) { return make(Op::Nls, {x, y, z}); }

Formula star(Formula a, Formula b) { return make_bin(Op::Star, std::move(a), std::move(b)); }
Formula conj(Formula a, Formula b) { return make_bin(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make_bin(Op::Or, std::move(a), std::move(b)); }
Formula gneg(Formula guard, Formula neg) {
    return make_bin(Op::GNeg, std::move(guard), std::move(neg));
}

Formula star_all(const std::vector<Formula>& parts) {
    if (parts.empty()) throw std::invalid_argument("star_all: no operands");
    Formula acc = parts[0];
    for (size_t i = 1; i < parts.size(); i++) acc = star(acc, parts[i]);
    return acc;
}

bool is_atom(const Formula& f) {
    switch (f->op) {
    case Op::Star: case Op::And: case Op::Or: case Op::GNeg: return false;
    default: return true;
    }
}

bool is_pure_atom(const Formula& f) { return f->op == Op::Eq || f->op == Op::Neq; }
bool is_spatial_atom(const Formula& f) { return is_atom(f) && !is_pure_atom(f); }

namespace {

void collect_vars(const Formula& f, std::set<Var>& out) {
    if (is_atom(f)) {
        for (auto& v : f->args) out.insert(v);
        for (auto& [fld, v] : f->fields) out.insert(v);
        return;
    }
    collect_vars(f->lhs, out);
    collect_vars(f->rhs, out);
}

void collect_roots(const Formula& f, std::set<Var>& out) {
    if (is_atom(f)) {
        if (!is_pure_atom(f)) out.insert(f->args[0]);
        return;
    }
    collect_roots(f->lhs, out);
    collect_roots(f->rhs, out);
}

bool sort_ok(const Var& v, Sort s) { return v.is_nil() || v.sort == s; }

void check(const Formula& f, const std::string& at) {
    auto fail = [&](const std::string& msg) { throw SortError(msg, at.empty() ? "root" : at); };
    switch (f->op) {
    case Op::Eq:
    case Op::Neq:
        return;
    case Op::Pto: {
        const Var& r = f->args[0];
        if (r.is_nil()) fail("points-to root is nil");
        std::vector<Field> want;
        switch (*r.sort) {
        case Sort::S: want = {Field::n}; break;
        case Sort::D: want = {Field::n, Field::p}; break;
        case Sort::N: want = {Field::n, Field::t}; break;
        }
        std::vector<Field> got;
        for (auto& [fld, v] : f->fields) got.push_back(fld);
        if (got != want)
            fail(std::string("points-to record does not match sort ") + sort_name(*r.sort) +
                 " of " + r.name);
        return;
    }
    case Op::Sls:
        for (auto& v : f->args)
            if (!sort_ok(v, Sort::S)) fail("sls argument " + v.name + " is not of sort S");
        return;
    case Op::Dls:
        for (auto& v : f->args)
            if (!sort_ok(v, Sort::D)) fail("dls argument " + v.name + " is not of sort D");
        return;
    case Op::Nls:
        if (!sort_ok(f->args[0], Sort::N)) fail("nls argument " + f->args[0].name + " is not of sort N");
        if (!sort_ok(f->args[1], Sort::N)) fail("nls argument " + f->args[1].name + " is not of sort N");
        if (!sort_ok(f->args[2], Sort::S)) fail("nls argument " + f->args[2].name + " is not of sort S");
        return;
    default:
        if (!f->lhs || !f->rhs) fail("connective with missing operand");
        check(f->lhs, at + "0");
        check(f->rhs, at + "1");
    }
}

void print(const Formula& f, std::ostream& os) {
    auto args = [&](const char* head) {
        os << '(' << head;
        for (auto& v : f->args) os << ' ' << v.name;
        os << ')';
    };
    auto bin = [&](const char* head) {
        os << '(' << head << ' ';
        print(f->lhs, os);
        os << ' ';
        print(f->rhs, os);
        os << ')';
    };
    switch (f->op) {
    case Op::Eq: args("="); break;
    case Op::Neq: args("distinct"); break;
    case Op::Sls: args("sls"); break;
    case Op::Dls: args("dls"); break;
    case Op::Nls: args("nls"); break;
    case Op::Pto: {
        const Var& r = f->args[0];
        os << "(pto " << r.name << " (";
        if (r.is_nil() || r.sort == Sort::S) {
            os << "c_sls";
        } else if (r.sort == Sort::D) {
            os << "c_dls";
        } else {
            os << "c_nls";
        }
        for (auto& [fld, v] : f->fields) os << ' ' << v.name;
        os << "))";
        break;
    }
    case Op::Star: bin("sep"); break;
    case Op::And: bin("and"); break;
    case Op::Or: bin("or"); break;
    case Op::GNeg: bin("gneg"); break;
    }
}

}  // namespace

std::set<Var> vars(const Formula& f) {
    std::set<Var> out;
    collect_vars(f, out);
    out.insert(nil_var());
    return out;
}

std::set<Var> vars_of_sort(const Formula& f, Sort s) {
    std::set<Var> out;
    for (auto& v : vars(f))
        if (v.is_nil() || v.sort == s) out.insert(v);
    return out;
}

std::set<Var> roots_of_spatial(const Formula& f) {
    std::set<Var> out;
    collect_roots(f, out);
    return out;
}

void check_sorts(const Formula& f) { check(f, ""); }

std::string to_string(const Formula& f) {
    std::ostringstream os;
    print(f, os);
    return os.str();
}

size_t node_count(const Formula& f) {
    if (is_atom(f)) return 1;
    return 1 + node_count(f->lhs) + node_count(f->rhs);
}

size_t depth(const Formula& f) {
    if (is_atom(f)) return 1;
    return 1 + std::max(depth(f->lhs), depth(f->rhs));
}

bool equal(const Formula& a, const Formula& b) {
    if (a->op != b->op) return false;
    if (is_atom(a)) {
        if (a->args.size() != b->args.size() || a->fields.size() != b->fields.size()) return false;
        for (size_t i = 0; i < a->args.size(); i++)
            if (a->args[i].name != b->args[i].name || a->args[i].sort != b->args[i].sort)
                return false;
        for (size_t i = 0; i < a->fields.size(); i++)
            if (a->fields[i].first != b->fields[i].first ||
                a->fields[i].second.name != b->fields[i].second.name)
                return false;
        return true;
    }
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

void collect_atoms(const Formula& f, std::vector<Formula>& out) {
    if (is_atom(f)) {
        out.push_back(f);
        return;
    }
    collect_atoms(f->lhs, out);
    collect_atoms(f->rhs, out);
}

}  // namespace bsl
