#include "bsl/slgraph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "bsl/bounds.hpp"

namespace bsl {

namespace {

SLGraph::Matrix square(int n) { return SLGraph::Matrix(n, std::vector<char>(n, 0)); }

constexpr Field kFields[3] = {Field::n, Field::p, Field::t};

}  // namespace

SLGraph::SLGraph(std::vector<Var> vars) : vars_(std::move(vars)) {
    int n = size();
    for (int i = 0; i < n; i++)
        if (vars_[i].is_nil()) nil_ = i;
    if (nil_ < 0) {
        vars_.push_back(nil_var());
        nil_ = n++;
    }
    eq_ = square(n);
    neq_ = square(n);
    for (int k = 0; k < 3; k++) {
        pto_[k] = square(n);
        path_[k] = square(n);
    }
    for (int i = 0; i < n; i++) eq_[i][i] = 1;
}

int SLGraph::index(const Var& v) const {
    for (int i = 0; i < size(); i++)
        if (vars_[i].name == v.name) return i;
    return -1;
}

bool SLGraph::must_pointer(int a) const {
    for (int k = 0; k < 3; k++)
        for (int b = 0; b < size(); b++)
            if (pto_[k][a][b]) return true;
    return false;
}

int SLGraph::rep(int a) const {
    for (int i = 0; i < size(); i++)
        if (eq_[a][i]) return i;
    return a;
}

void SLGraph::add_eq(int a, int b) { eq_[a][b] = eq_[b][a] = 1; }
void SLGraph::add_neq(int a, int b) { neq_[a][b] = neq_[b][a] = 1; }
void SLGraph::add_pto(Field f, int a, int b) { pto_[fi(f)][a][b] = 1; }
void SLGraph::add_path(Field f, int a, int b) { path_[fi(f)][a][b] = 1; }
void SLGraph::add_disjoint(Field f, int a, int b, int c, int d) {
    disj_[fi(f)].insert({a, b, c, d});
    disj_[fi(f)].insert({c, d, a, b});
}

void SLGraph::close() {
    int n = size();
    // Equivalence closure.
    for (int k = 0; k < n; k++)
        for (int i = 0; i < n; i++)
            if (eq_[i][k])
                for (int j = 0; j < n; j++)
                    if (eq_[k][j]) eq_[i][j] = 1;
    std::vector<int> r(n);
    for (int i = 0; i < n; i++) r[i] = rep(i);
    // Congruence: lift every relation to classes and expand back.
    auto lift2 = [&](Matrix& m, bool sym) {
        Matrix cls = square(n);
        for (int a = 0; a < n; a++)
            for (int b = 0; b < n; b++)
                if (m[a][b]) {
                    cls[r[a]][r[b]] = 1;
                    if (sym) cls[r[b]][r[a]] = 1;
                }
        for (int a = 0; a < n; a++)
            for (int b = 0; b < n; b++) m[a][b] = cls[r[a]][r[b]];
    };
    lift2(neq_, true);
    for (int k = 0; k < 3; k++) {
        lift2(pto_[k], false);
        lift2(path_[k], false);
        for (int a = 0; a < n; a++)
            for (int b = 0; b < n; b++)
                if (eq_[a][b]) path_[k][a][b] = 0;
        std::set<Quad> cls;
        for (auto& q : disj_[k]) {
            cls.insert({r[q[0]], r[q[1]], r[q[2]], r[q[3]]});
            cls.insert({r[q[2]], r[q[3]], r[q[0]], r[q[1]]});
        }
        std::vector<std::vector<int>> members(n);
        for (int i = 0; i < n; i++) members[r[i]].push_back(i);
        disj_[k].clear();
        for (auto& q : cls)
            for (int a : members[q[0]])
                for (int b : members[q[1]])
                    for (int c : members[q[2]])
                        for (int d : members[q[3]]) disj_[k].insert({a, b, c, d});
    }
    for (int a = 0; a < n && !bottom_; a++)
        for (int b = 0; b < n; b++)
            if (eq_[a][b] && neq_[a][b]) {
                bottom_ = true;
                break;
            }
}

std::set<int> SLGraph::alloc() const {
    std::set<int> out{nil_};
    for (int k = 0; k < 3; k++)
        for (int a = 0; a < size(); a++)
            for (int b = 0; b < size(); b++)
                if (pto_[k][a][b] || (path_[k][a][b] && neq_[a][b])) out.insert(a);
    return out;
}

namespace {

SLGraph bottom_like(const SLGraph& g) {
    SLGraph b(g.vars());
    b.set_contradiction();
    return b;
}

}  // namespace

SLGraph join(const SLGraph& a, const SLGraph& b) {
    if (a.bottom_) return a;
    if (b.bottom_) return b;
    SLGraph g = a;
    int n = g.size();
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            g.eq_[i][j] |= b.eq_[i][j];
            g.neq_[i][j] |= b.neq_[i][j];
            for (int k = 0; k < 3; k++) {
                g.pto_[k][i][j] |= b.pto_[k][i][j];
                g.path_[k][i][j] |= b.path_[k][i][j];
            }
        }
    for (int k = 0; k < 3; k++) g.disj_[k].insert(b.disj_[k].begin(), b.disj_[k].end());
    g.close();
    return g;
}

SLGraph meet(const SLGraph& a, const SLGraph& b) {
    if (a.bottom_) return b;
    if (b.bottom_) return a;
    SLGraph g = a;
    int n = g.size();
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            g.eq_[i][j] &= b.eq_[i][j];
            g.neq_[i][j] &= b.neq_[i][j];
            for (int k = 0; k < 3; k++) {
                g.pto_[k][i][j] &= b.pto_[k][i][j];
                g.path_[k][i][j] &= b.path_[k][i][j];
            }
        }
    for (int k = 0; k < 3; k++) {
        std::set<SLGraph::Quad> both;
        for (auto& q : a.disj_[k])
            if (b.disj_[k].count(q)) both.insert(q);
        g.disj_[k] = both;
    }
    g.close();
    return g;
}

SLGraph disjoint_union(const SLGraph& a, const SLGraph& b) {
    if (a.bottom_) return a;
    if (b.bottom_) return b;
    SLGraph g = join(a, b);
    if (g.bottom_) return g;
    int nil = g.nil_;
    for (int x : a.alloc())
        for (int y : b.alloc())
            if (x != nil || y != nil) g.add_neq(x, y);
    int n = g.size();
    for (int k = 0; k < 3; k++) {
        std::vector<std::pair<int, int>> pa, pb;
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                if (a.pto_[k][i][j] || a.path_[k][i][j]) pa.push_back({i, j});
                if (b.pto_[k][i][j] || b.path_[k][i][j]) pb.push_back({i, j});
            }
        for (auto& e1 : pa)
            for (auto& e2 : pb) g.add_disjoint(kFields[k], e1.first, e1.second, e2.first, e2.second);
    }
    g.close();
    return g;
}

bool SLGraph::operator==(const SLGraph& o) const {
    if (bottom_ || o.bottom_) return bottom_ == o.bottom_;
    return eq_ == o.eq_ && neq_ == o.neq_ && pto_ == o.pto_ && path_ == o.path_ && disj_ == o.disj_;
}

bool SLGraph::includes(const SLGraph& o) const {
    if (bottom_) return true;
    if (o.bottom_) return false;
    int n = size();
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            if (o.eq_[i][j] && !eq_[i][j]) return false;
            if (o.neq_[i][j] && !neq_[i][j]) return false;
            for (int k = 0; k < 3; k++) {
                if (o.pto_[k][i][j] && !pto_[k][i][j]) return false;
                if (o.path_[k][i][j] && !path_[k][i][j] && !eq_[i][j]) return false;
            }
        }
    for (int k = 0; k < 3; k++)
        for (auto& q : o.disj_[k])
            if (!disj_[k].count(q)) return false;
    return true;
}

std::string SLGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph slgraph {\n";
    if (bottom_) os << "  label=\"contradiction\";\n";
    for (int i = 0; i < size(); i++) os << "  v" << i << " [label=\"" << vars_[i].name << "\"];\n";
    for (int i = 0; i < size(); i++)
        for (int j = i + 1; j < size(); j++) {
            if (eq_[i][j]) os << "  v" << i << " -> v" << j << " [dir=none, label=\"=\"];\n";
            if (neq_[i][j]) os << "  v" << i << " -> v" << j << " [dir=none, style=dotted, label=\"!=\"];\n";
        }
    for (int k = 0; k < 3; k++)
        for (int i = 0; i < size(); i++)
            for (int j = 0; j < size(); j++) {
                if (pto_[k][i][j])
                    os << "  v" << i << " -> v" << j << " [label=\"" << field_name(kFields[k]) << "\"];\n";
                if (path_[k][i][j])
                    os << "  v" << i << " -> v" << j << " [style=dashed, label=\"" << field_name(kFields[k])
                       << "*\"];\n";
            }
    for (int k = 0; k < 3; k++)
        for (auto& q : disj_[k])
            if (std::make_pair(q[0], q[1]) < std::make_pair(q[2], q[3]))
                os << "  // disjoint_" << field_name(kFields[k]) << " (" << vars_[q[0]].name << ","
                   << vars_[q[1]].name << ") (" << vars_[q[2]].name << "," << vars_[q[3]].name << ")\n";
    os << "}\n";
    return os.str();
}

//
// Construction
//

namespace {

SLGraph build_rec(const Formula& f, const std::vector<Var>& u);

SLGraph atom_graph(const Formula& f, const std::vector<Var>& u) {
    SLGraph g(u);
    auto ix = [&](const Var& v) { return g.index(v); };
    const auto& a = f->args;
    switch (f->op) {
    case Op::Eq: g.add_eq(ix(a[0]), ix(a[1])); break;
    case Op::Neq: g.add_neq(ix(a[0]), ix(a[1])); break;
    case Op::Pto:
        for (auto& [fld, v] : f->fields) g.add_pto(fld, ix(a[0]), ix(v));
        break;
    case Op::Sls: g.add_path(Field::n, ix(a[0]), ix(a[1])); break;
    case Op::Dls:
        g.add_path(Field::n, ix(a[0]), ix(a[1]));
        g.add_path(Field::p, ix(a[2]), ix(a[3]));
        break;
    case Op::Nls:
        g.add_path(Field::n, ix(a[0]), ix(a[2]));
        g.add_path(Field::t, ix(a[0]), ix(a[1]));
        break;
    default: break;
    }
    g.close();
    return saturate(g);
}

SLGraph build_rec(const Formula& f, const std::vector<Var>& u) {
    if (is_atom(f)) return atom_graph(f, u);
    switch (f->op) {
    case Op::GNeg: return build_rec(f->lhs, u);
    case Op::And: return saturate(join(build_rec(f->lhs, u), build_rec(f->rhs, u)));
    case Op::Or: return saturate(meet(build_rec(f->lhs, u), build_rec(f->rhs, u)));
    case Op::Star: return saturate(disjoint_union(build_rec(f->lhs, u), build_rec(f->rhs, u)));
    default: break;
    }
    return SLGraph(u);
}

}  // namespace

SLGraph build(const Formula& f, const std::vector<Var>& universe) { return build_rec(f, universe); }

SLGraph build(const Formula& f) {
    auto vs = vars(f);
    return build(f, std::vector<Var>(vs.begin(), vs.end()));
}

SLGraph saturate(SLGraph g) {
    if (g.contradiction()) return g;
    int n = g.size();
    bool changed = true;
    while (changed && !g.contradiction()) {
        changed = false;
        for (Field f : kFields)
            for (int x = 0; x < n; x++) {
                int first = -1;
                // pto is congruent, so all targets of x's class are row x.
                for (int y = 0; y < n; y++) {
                    if (!g.pto(f, x, y)) continue;
                    if (first < 0) {
                        first = y;
                    } else if (!g.eq(first, y)) {
                        g.add_eq(first, y);
                        changed = true;
                    }
                }
            }
        if (changed) g.close();
    }
    return g;
}

//
// Path bounds
//

namespace {

// Sort whose bound limits an f-path rooted at a, and the sort of the
// variables whose chunks are subtracted. Inner nls paths start at an N cell
// and continue over S cells.
struct PathSort {
    bool empty = false;  // rooted at nil
    int base = 0;        // bound of the sort
    int extra = 0;       // locations outside the sort (the N root of an inner path)
    Sort sub = Sort::S;
};

PathSort path_sort(const SLGraph& g, const BoundProfile& b, Field f, int a) {
    PathSort ps;
    const Var& v = g.vars()[a];
    if (v.is_nil() || g.eq(a, g.nil_index())) {
        ps.empty = true;
        return ps;
    }
    Sort s = *v.sort;
    if (f == Field::t) s = Sort::N;
    if (f == Field::p) s = Sort::D;
    if (f == Field::n && s == Sort::N) {
        ps.base = b.s;
        ps.extra = 1;
        ps.sub = Sort::S;
        return ps;
    }
    ps.base = b.of(s);
    ps.sub = s;
    return ps;
}

int default_upper(const SLGraph& g, const BoundProfile& b, Field f, int x) {
    PathSort ps = path_sort(g, b, f, x);
    return ps.empty ? 0 : ps.base + ps.extra;
}

PathBound edge_bound(const SLGraph& g, const BoundProfile& b, Field f, int a, int bb,
                     bool use_pointer = true) {
    if (use_pointer && g.pto(f, a, bb)) return {1, 1};
    PathSort ps = path_sort(g, b, f, a);
    PathBound r;
    r.lower = g.neq(a, bb) ? 1 : 0;
    if (ps.empty) {
        r.upper = 0;
        return r;
    }
    std::vector<int> V;
    for (int v = 0; v < g.size(); v++) {
        if (g.vars()[v].is_nil() || g.vars()[v].sort != ps.sub || g.eq(v, a)) continue;
        bool dis = false;
        for (int u = 0; u < g.size() && !dis; u++)
            if (g.disjoint(f, v, u, a, bb)) dis = true;
        if (dis) V.push_back(v);
    }
    int sub = class_weight2_sum(V, g, ps.sub) / 2;
    r.upper = std::max(0, ps.base - sub) + ps.extra;
    return r;
}

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

PathBound initial_bound(const SLGraph& g, const Formula& phi, Field f, const Var& a, const Var& b) {
    BoundProfile bp = location_bounds(phi, &g);
    return edge_bound(g, bp, f, g.index(a), g.index(b));
}

PathBound region_bound(const SLGraph& g, const Formula& phi, Field f, const Var& a, const Var& b) {
    BoundProfile bp = location_bounds(phi, &g);
    return edge_bound(g, bp, f, g.index(a), g.index(b), false);
}

PathBound path_bound(const SLGraph& g, const Formula& phi, Field f, const Var& xv, const Var& yv) {
    BoundProfile bp = location_bounds(phi, &g);
    int n = g.size();
    int x = g.index(xv), y = g.index(yv);
    int cap = default_upper(g, bp, f, x);
    PathBound def{0, cap};
    if (g.contradiction()) return def;
    bool rooted = false;
    for (int b = 0; b < n && !rooted; b++)
        if (g.pto(f, x, b) || g.path(f, x, b)) rooted = true;
    if (!rooted) return def;
    if (g.eq(x, y)) return {0, 0};

    std::vector<int> r(n);
    for (int i = 0; i < n; i++) r[i] = g.rep(i);

    // Upper bound: shortest path from x to y over paths_f.
    std::vector<std::vector<int>> wu(n, std::vector<int>(n, kInf));
    std::vector<std::vector<int>> wl(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++) {
            if (!(g.pto(f, a, b) || g.path(f, a, b))) continue;
            PathBound e = edge_bound(g, bp, f, a, b);
            wu[r[a]][r[b]] = std::min(wu[r[a]][r[b]], e.upper);
            // Lower graph: edges whose domain cannot contain y.
            bool keep = false;
            if (g.pto(f, a, b) && g.neq(a, y)) keep = true;
            if (!keep && g.path(f, a, b)) {
                for (int w = 0; w < n && !keep; w++) {
                    bool nonempty = g.pto(f, y, w) || (g.path(f, y, w) && g.neq(y, w));
                    if (nonempty && g.disjoint(f, y, w, a, b)) keep = true;
                }
            }
            if (keep) wl[r[a]][r[b]] = std::max(wl[r[a]][r[b]], e.lower);
        }
    std::vector<int> dist(n, kInf);
    std::vector<char> done(n, 0);
    dist[r[x]] = 0;
    for (int it = 0; it < n; it++) {
        int u = -1;
        for (int i = 0; i < n; i++)
            if (!done[i] && dist[i] < kInf && (u < 0 || dist[i] < dist[u])) u = i;
        if (u < 0) break;
        done[u] = 1;
        for (int v = 0; v < n; v++)
            if (wu[u][v] < kInf) dist[v] = std::min(dist[v], dist[u] + wu[u][v]);
    }
    int upper = std::min(cap, dist[r[y]] < kInf ? dist[r[y]] : cap);

    // Lower bound: longest path from x, over the SCC condensation. A cycle
    // of positive weight makes the length unbounded; we cap at the bound.
    std::vector<int> comp(n, -1);
    {
        // Tarjan.
        std::vector<int> idx(n, -1), low(n, 0), st;
        std::vector<char> on(n, 0);
        int counter = 0, ncomp = 0;
        std::function<void(int)> dfs = [&](int v) {
            idx[v] = low[v] = counter++;
            st.push_back(v);
            on[v] = 1;
            for (int w = 0; w < n; w++) {
                if (wl[v][w] < 0) continue;
                if (idx[w] < 0) {
                    dfs(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            }
            if (low[v] == idx[v]) {
                int w;
                do {
                    w = st.back();
                    st.pop_back();
                    on[w] = 0;
                    comp[w] = ncomp;
                } while (w != v);
                ncomp++;
            }
        };
        for (int v = 0; v < n; v++)
            if (idx[v] < 0) dfs(v);
    }
    std::vector<int> memo(n, -2);
    std::function<int(int)> longest = [&](int c) -> int {
        if (memo[c] != -2) return memo[c];
        memo[c] = cap;  // guards against revisiting
        int best = 0;
        bool positive_cycle = false;
        for (int v = 0; v < n; v++) {
            if (comp[v] != c) continue;
            for (int w = 0; w < n; w++) {
                if (wl[v][w] < 0) continue;
                if (comp[w] == c) {
                    if (wl[v][w] > 0) positive_cycle = true;
                } else {
                    best = std::max(best, wl[v][w] + longest(comp[w]));
                }
            }
        }
        int res = positive_cycle ? cap : std::min(cap, best);
        memo[c] = res;
        return res;
    };
    int lower = std::min(cap, longest(comp[r[x]]));
    return {lower, upper};
}

}  // namespace bsl
