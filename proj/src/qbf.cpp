#include "bsl/qbf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace bsl {

namespace q {

QMatrix var(int v) {
    auto n = std::make_shared<QNode>();
    n->kind = QNode::Var;
    n->var = v;
    return n;
}

QMatrix lnot(QMatrix a) {
    auto n = std::make_shared<QNode>();
    n->kind = QNode::Not;
    n->args = {std::move(a)};
    return n;
}

QMatrix land(QMatrix a, QMatrix b) {
    auto n = std::make_shared<QNode>();
    n->kind = QNode::And;
    n->args = {std::move(a), std::move(b)};
    return n;
}

QMatrix lor(QMatrix a, QMatrix b) {
    auto n = std::make_shared<QNode>();
    n->kind = QNode::Or;
    n->args = {std::move(a), std::move(b)};
    return n;
}

}  // namespace q

namespace {

void print(std::ostream& os, const QMatrix& m) {
    switch (m->kind) {
    case QNode::Var: os << "p" << m->var; return;
    case QNode::Not: os << "!"; print(os, m->args[0]); return;
    default:
        os << "(";
        print(os, m->args[0]);
        os << (m->kind == QNode::And ? " & " : " | ");
        print(os, m->args[1]);
        os << ")";
    }
}

bool eval_matrix(const QMatrix& m, unsigned assignment) {
    switch (m->kind) {
    case QNode::Var: return assignment >> m->var & 1;
    case QNode::Not: return !eval_matrix(m->args[0], assignment);
    case QNode::And: return eval_matrix(m->args[0], assignment) && eval_matrix(m->args[1], assignment);
    case QNode::Or: return eval_matrix(m->args[0], assignment) || eval_matrix(m->args[1], assignment);
    }
    return false;
}

bool eval_from(const Qbf& f, size_t i, unsigned assignment) {
    if (i == f.prefix.size()) return eval_matrix(f.matrix, assignment);
    const Quantifier& qu = f.prefix[i];
    bool a = eval_from(f, i + 1, assignment & ~(1u << qu.var));
    if (qu.forall ? !a : a) return a;
    return eval_from(f, i + 1, assignment | 1u << qu.var);
}

// Reduction. The heap is a subset of {x ↦ nil | x ∈ X}; a variable is true
// iff its cell is allocated.
// Repeated subformulas are built once so that translation can share them.
struct Reducer {
    std::vector<Var> xs;
    std::vector<Formula> cells, optionals, arbitrary_except;
    Formula emp_, all_;

    explicit Reducer(int n) {
        for (int v = 0; v < n; v++) xs.push_back(var("q" + std::to_string(v), Sort::S));
        emp_ = n ? eq(xs[0], xs[0]) : eq(nil_var(), nil_var());
        for (int v = 0; v < n; v++) {
            cells.push_back(pto_s(xs[v], nil_var()));
            optionals.push_back(disj(cells[v], emp_));
        }
        for (int v = 0; v < n; v++) arbitrary_except.push_back(build_arbitrary(v));
        all_ = build_arbitrary(-1);
    }

    Formula build_arbitrary(int except) const {
        std::vector<Formula> parts;
        for (int v = 0; v < (int)xs.size(); v++)
            if (v != except) parts.push_back(optionals[v]);
        return parts.empty() ? emp_ : star_all(parts);
    }

    Formula emp() const { return emp_; }
    Formula cell(int v) const { return cells[v]; }
    Formula optional(int v) const { return optionals[v]; }
    Formula arbitrary(int except) const { return except < 0 ? all_ : arbitrary_except[except]; }
    Formula all() const { return all_; }

    Formula matrix(const QMatrix& m) const {
        switch (m->kind) {
        case QNode::Var: return star(all(), cell(m->var));
        case QNode::Not:
            if (m->args[0]->kind == QNode::Var) return arbitrary(m->args[0]->var);
            return gneg(all(), matrix(m->args[0]));
        case QNode::And: return conj(matrix(m->args[0]), matrix(m->args[1]));
        case QNode::Or: return disj(matrix(m->args[0]), matrix(m->args[1]));
        }
        return emp();
    }

    // R(¬F) for the remaining prefix from position i.
    Formula negated(const Qbf& f, size_t i) const { return gneg(all(), quantified(f, i)); }

    Formula quantified(const Qbf& f, size_t i) const {
        if (i == f.prefix.size()) return matrix(f.matrix);
        const Quantifier& qu = f.prefix[i];
        if (!qu.forall) return star(optional(qu.var), quantified(f, i + 1));
        return gneg(all(), star(optional(qu.var), negated(f, i + 1)));
    }
};

}  // namespace

std::string to_string(const Qbf& f) {
    std::ostringstream os;
    for (auto& qu : f.prefix) os << (qu.forall ? "A" : "E") << " p" << qu.var << ". ";
    print(os, f.matrix);
    return os.str();
}

bool eval_qbf(const Qbf& f) {
    if (f.n_vars > 12) throw TooManyVariables(std::to_string(f.n_vars) + " variables");
    return eval_from(f, 0, 0);
}

Formula reduce_qbf(const Qbf& f) {
    Reducer r(f.n_vars);
    if (r.cells.empty()) return conj(r.quantified(f, 0), r.emp());
    return conj(r.quantified(f, 0), star_all(r.cells));
}

Qbf random_qbf(const QbfGenConfig& cfg, std::mt19937_64& rng) {
    Qbf f;
    f.n_vars = cfg.vars;
    std::vector<int> order(cfg.vars);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(0.5);
    for (int v : order) f.prefix.push_back({coin(rng), v});
    std::uniform_int_distribution<int> pick(0, cfg.vars - 1);
    std::function<QMatrix(int)> gen = [&](int depth) -> QMatrix {
        std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 4);
        switch (kind(rng)) {
        case 0: return q::var(pick(rng));
        case 1: return q::lnot(q::var(pick(rng)));
        case 2: return q::lnot(gen(depth - 1));
        case 3: return q::land(gen(depth - 1), gen(depth - 1));
        default: return q::lor(gen(depth - 1), gen(depth - 1));
        }
    };
    f.matrix = gen(cfg.depth);
    return f;
}

}  // namespace bsl
