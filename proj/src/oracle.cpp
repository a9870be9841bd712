#include "bsl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace bsl {

const char* loc_sort_name(LocSort s) {
    switch (s) {
    case LocSort::Nil: return "nil";
    case LocSort::S: return "S";
    case LocSort::D: return "D";
    case LocSort::N: return "N";
    }
    return "?";
}

LocSort loc_sort_of(Sort s) {
    switch (s) {
    case Sort::S: return LocSort::S;
    case Sort::D: return LocSort::D;
    case Sort::N: return LocSort::N;
    }
    return LocSort::Nil;
}

std::set<int> Model::locs() const {
    std::set<int> out;
    for (auto& [v, l] : stack) out.insert(l);
    for (auto& [l, r] : heap) {
        out.insert(l);
        for (int x : {r.n, r.p, r.t})
            if (x >= 0) out.insert(x);
    }
    return out;
}

Model empty_model(int n_s, int n_d, int n_n) {
    Model m;
    m.sorts.push_back(LocSort::Nil);
    for (int i = 0; i < n_s; i++) m.sorts.push_back(LocSort::S);
    for (int i = 0; i < n_d; i++) m.sorts.push_back(LocSort::D);
    for (int i = 0; i < n_n; i++) m.sorts.push_back(LocSort::N);
    m.stack["nil"] = 0;
    return m;
}

bool well_formed(const Model& m, std::string* why) {
    auto bad = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    auto it = m.stack.find("nil");
    if (it == m.stack.end()) return bad("nil is not on the stack");
    if (m.allocated(it->second)) return bad("nil is allocated");
    int U = (int)m.sorts.size();
    for (auto& [v, l] : m.stack)
        if (l < 0 || l >= U) return bad("stack value of " + v + " out of range");
    for (auto& [l, r] : m.heap) {
        if (l < 0 || l >= U) return bad("heap location out of range");
        LocSort s = m.sorts[l];
        bool need_p = s == LocSort::D, need_t = s == LocSort::N;
        if (s == LocSort::Nil) return bad("nil-tagged location allocated");
        if (r.n < 0 || (r.p >= 0) != need_p || (r.t >= 0) != need_t)
            return bad("record shape does not match location sort");
        for (int x : {r.n, r.p, r.t})
            if (x >= U) return bad("field value out of range");
    }
    return true;
}

//
// Compiled formulae
//

namespace {

using Mask = uint64_t;
using Masks = std::vector<Mask>;

struct CNode {
    Op op;
    int a[4] = {-1, -1, -1, -1};
    int nf = 0;
    Field fld[2];
    int tgt[2];
    LocSort root_sort = LocSort::Nil;
    int l = -1, r = -1;
};

struct Compiled {
    std::vector<CNode> nodes;
    std::vector<Var> slots;
    int root = -1;
    int nil_slot = -1;
};

int slot_of(Compiled& c, const Var& v) {
    for (size_t i = 0; i < c.slots.size(); i++)
        if (c.slots[i].name == v.name) return (int)i;
    c.slots.push_back(v);
    return (int)c.slots.size() - 1;
}

int compile_rec(Compiled& c, const Formula& f) {
    CNode n;
    n.op = f->op;
    if (is_atom(f)) {
        for (size_t i = 0; i < f->args.size(); i++) n.a[i] = slot_of(c, f->args[i]);
        if (f->op == Op::Pto) {
            n.nf = (int)f->fields.size();
            for (int i = 0; i < n.nf; i++) {
                n.fld[i] = f->fields[i].first;
                n.tgt[i] = slot_of(c, f->fields[i].second);
            }
            const Var& r = f->args[0];
            n.root_sort = r.is_nil() ? LocSort::Nil : loc_sort_of(*r.sort);
        }
    } else {
        n.l = compile_rec(c, f->lhs);
        n.r = compile_rec(c, f->rhs);
    }
    c.nodes.push_back(n);
    return (int)c.nodes.size() - 1;
}

Compiled compile(const Formula& f) {
    Compiled c;
    c.nil_slot = slot_of(c, nil_var());
    c.root = compile_rec(c, f);
    return c;
}

struct HeapView {
    const std::vector<LocSort>* sorts;
    std::vector<Record> rec;
    std::vector<char> alloc;

    LocSort sort(int l) const { return (*sorts)[l]; }
};

HeapView view_of(const Model& m) {
    if (m.sorts.size() > 64) throw std::runtime_error("model universe exceeds 64 locations");
    HeapView h;
    h.sorts = &m.sorts;
    h.rec.assign(m.sorts.size(), Record{});
    h.alloc.assign(m.sorts.size(), 0);
    for (auto& [l, r] : m.heap) {
        h.rec[l] = r;
        h.alloc[l] = 1;
    }
    return h;
}

std::vector<int> stack_of(const Compiled& c, const Model& m) {
    std::vector<int> s(c.slots.size());
    for (size_t i = 0; i < c.slots.size(); i++) {
        auto it = m.stack.find(c.slots[i].name);
        if (it == m.stack.end()) throw UnboundVariable("unbound variable " + c.slots[i].name);
        s[i] = it->second;
    }
    return s;
}

inline Mask bit(int l) { return Mask(1) << l; }

void normalize(Masks& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Footprint of sls(x,y): the n-path from x to y over allocated S cells.
bool sls_path(const HeapView& h, int x, int y, Mask& out) {
    Mask m = 0;
    int l = x;
    while (l != y) {
        if (!h.alloc[l] || h.sort(l) != LocSort::S || (m & bit(l))) return false;
        m |= bit(l);
        l = h.rec[l].n;
    }
    out = m;
    return true;
}

bool dls_fp(const HeapView& h, int x, int y, int xb, int yb, Mask& out) {
    if (x == y && xb == yb) {
        out = 0;
        return true;
    }
    if (x == y || xb == yb) return false;
    Mask m = 0;
    int l = x;
    while (l != y) {
        if (!h.alloc[l] || h.sort(l) != LocSort::D || (m & bit(l))) return false;
        m |= bit(l);
        l = h.rec[l].n;
    }
    // Back links inside the segment.
    for (int c = 0; c < 64; c++) {
        if (!(m & bit(c)) || c == xb) continue;
        int nx = h.rec[c].n;
        if (!(m & bit(nx)) || h.rec[nx].p != c) return false;
    }
    if (!(m & bit(xb)) || h.rec[xb].n != y) return false;
    if (h.rec[x].p != yb || (m & bit(yb))) return false;
    out = m;
    return true;
}

// Footprint of nls(x,y,z). Inner lists run over S cells only, so they are
// disjoint from the top-level path and from each other.
bool nls_fp(const HeapView& h, int x, int y, int z, Mask& out) {
    Mask top = 0;
    int l = x;
    std::vector<int> tops;
    while (l != y) {
        if (!h.alloc[l] || h.sort(l) != LocSort::N || (top & bit(l))) return false;
        top |= bit(l);
        tops.push_back(l);
        l = h.rec[l].t;
    }
    Mask all = top;
    for (int c : tops) {
        int i = h.rec[c].n;
        while (i != z) {
            if (!h.alloc[i] || h.sort(i) != LocSort::S || (all & bit(i))) return false;
            all |= bit(i);
            i = h.rec[i].n;
        }
    }
    out = all;
    return true;
}

void fp(const Compiled& c, int i, const std::vector<int>& s, const HeapView& h, Masks& out) {
    const CNode& n = c.nodes[i];
    out.clear();
    Mask m;
    switch (n.op) {
    case Op::Eq:
        if (s[n.a[0]] == s[n.a[1]]) out.push_back(0);
        return;
    case Op::Neq:
        if (s[n.a[0]] != s[n.a[1]]) out.push_back(0);
        return;
    case Op::Pto: {
        int l = s[n.a[0]];
        if (!h.alloc[l] || h.sort(l) != n.root_sort) return;
        Record want;
        for (int k = 0; k < n.nf; k++) {
            int v = s[n.tgt[k]];
            if (n.fld[k] == Field::n) want.n = v;
            else if (n.fld[k] == Field::p) want.p = v;
            else want.t = v;
        }
        if (h.rec[l] == want) out.push_back(bit(l));
        return;
    }
    case Op::Sls:
        if (sls_path(h, s[n.a[0]], s[n.a[1]], m)) out.push_back(m);
        return;
    case Op::Dls:
        if (dls_fp(h, s[n.a[0]], s[n.a[1]], s[n.a[2]], s[n.a[3]], m)) out.push_back(m);
        return;
    case Op::Nls:
        if (nls_fp(h, s[n.a[0]], s[n.a[1]], s[n.a[2]], m)) out.push_back(m);
        return;
    default:
        break;
    }
    Masks a, b;
    fp(c, n.l, s, h, a);
    if (a.empty() && n.op != Op::Or) return;
    fp(c, n.r, s, h, b);
    switch (n.op) {
    case Op::Star:
        for (Mask x : a)
            for (Mask y : b)
                if (!(x & y)) out.push_back(x | y);
        normalize(out);
        return;
    case Op::And:
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return;
    case Op::Or:
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return;
    case Op::GNeg:
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return;
    default:
        return;
    }
}

Mask dom_mask(const HeapView& h) {
    Mask m = 0;
    for (size_t l = 0; l < h.alloc.size(); l++)
        if (h.alloc[l]) m |= bit((int)l);
    return m;
}

bool eval_compiled(const Compiled& c, const std::vector<int>& s, const HeapView& h, Mask dom) {
    Masks out;
    fp(c, c.root, s, h, out);
    return std::binary_search(out.begin(), out.end(), dom);
}

std::set<int> mask_to_set(Mask m) {
    std::set<int> out;
    for (int l = 0; l < 64; l++)
        if (m & bit(l)) out.insert(l);
    return out;
}

}  // namespace

bool evaluate(const Model& m, const Formula& f) {
    Compiled c = compile(f);
    auto s = stack_of(c, m);
    HeapView h = view_of(m);
    return eval_compiled(c, s, h, dom_mask(h));
}

std::set<std::set<int>> footprints(const Model& m, const Formula& f) {
    Compiled c = compile(f);
    auto s = stack_of(c, m);
    HeapView h = view_of(m);
    Masks out;
    fp(c, c.root, s, h, out);
    std::set<std::set<int>> res;
    for (Mask x : out) res.insert(mask_to_set(x));
    return res;
}

Model restrict_heap(const Model& m, const std::set<int>& dom) {
    Model r = m;
    r.heap.clear();
    for (auto& [l, rec] : m.heap)
        if (dom.count(l)) r.heap[l] = rec;
    return r;
}

std::set<std::set<int>> footprints_bruteforce(const Model& m, const Formula& f) {
    std::vector<int> dom;
    for (auto& [l, r] : m.heap) dom.push_back(l);
    std::set<std::set<int>> res;
    for (uint64_t sub = 0; sub < (uint64_t(1) << dom.size()); sub++) {
        std::set<int> F;
        for (size_t i = 0; i < dom.size(); i++)
            if (sub & (uint64_t(1) << i)) F.insert(dom[i]);
        if (evaluate(restrict_heap(m, F), f)) res.insert(F);
    }
    return res;
}

bool evaluate_by_splits(const Model& m, const Formula& f) {
    if (is_atom(f)) return evaluate(m, f);
    switch (f->op) {
    case Op::And: return evaluate_by_splits(m, f->lhs) && evaluate_by_splits(m, f->rhs);
    case Op::Or: return evaluate_by_splits(m, f->lhs) || evaluate_by_splits(m, f->rhs);
    case Op::GNeg: return evaluate_by_splits(m, f->lhs) && !evaluate_by_splits(m, f->rhs);
    default: break;
    }
    std::vector<int> dom;
    for (auto& [l, r] : m.heap) dom.push_back(l);
    for (uint64_t sub = 0; sub < (uint64_t(1) << dom.size()); sub++) {
        std::set<int> A, B;
        for (size_t i = 0; i < dom.size(); i++)
            ((sub & (uint64_t(1) << i)) ? A : B).insert(dom[i]);
        if (evaluate_by_splits(restrict_heap(m, A), f->lhs) &&
            evaluate_by_splits(restrict_heap(m, B), f->rhs))
            return true;
    }
    return false;
}

//
// Enumeration
//

namespace {

class Enumerator {
public:
    Enumerator(const Formula& f, Budget b) : c_(compile(f)), budget_(b) {
        sorts_.push_back(LocSort::Nil);
        for (int i = 0; i < b.s; i++) sorts_.push_back(LocSort::S);
        for (int i = 0; i < b.d; i++) sorts_.push_back(LocSort::D);
        for (int i = 0; i < b.n; i++) sorts_.push_back(LocSort::N);
        start_[0] = 1;
        start_[1] = 1 + b.s;
        start_[2] = 1 + b.s + b.d;
        size_[0] = b.s;
        size_[1] = b.d;
        size_[2] = b.n;
        h_.sorts = &sorts_;
        h_.rec.assign(sorts_.size(), Record{});
        h_.alloc.assign(sorts_.size(), 0);
        for (auto& row : named_targets_)
            for (int& m : row) m = 0;
        std::vector<Formula> atoms;
        collect_atoms(f, atoms);
        for (auto& a : atoms) {
            if (a->op != Op::Pto || a->args[0].is_nil()) continue;
            int rs = sidx(loc_sort_of(*a->args[0].sort));
            for (auto& [fld, v] : a->fields)
                if (!v.is_nil()) named_targets_[rs][(int)fld] |= 1 << sidx(loc_sort_of(*v.sort));
        }
    }

    std::optional<Model> run(EnumStats* stats) {
        std::vector<int> s(c_.slots.size(), 0);
        std::vector<int> used(3, 0);
        build_stacks(0, s, used);
        if (stats) stats->stacks = stacks_.size();
        for (int k = 0; k <= budget_.total(); k++) {
            for (auto& st : stacks_) {
                stack_ = &st.first;
                if (search_stack(st.second, k)) {
                    if (stats) stats->heaps = heaps_;
                    return result();
                }
            }
        }
        if (stats) stats->heaps = heaps_;
        return std::nullopt;
    }

private:
    static int sidx(LocSort s) { return s == LocSort::S ? 0 : s == LocSort::D ? 1 : 2; }

    // Stacks up to renaming of locations within a sort: each variable maps
    // to nil, a location already used by an earlier variable, or the next
    // unused one. Used locations of a sort therefore form a prefix.
    void build_stacks(size_t i, std::vector<int>& s, std::vector<int>& used) {
        if (i == c_.slots.size()) {
            stacks_.push_back({s, used});
            return;
        }
        const Var& v = c_.slots[i];
        if (v.is_nil()) {
            s[i] = 0;
            build_stacks(i + 1, s, used);
            return;
        }
        int k = sidx(loc_sort_of(*v.sort));
        s[i] = 0;
        build_stacks(i + 1, s, used);
        for (int j = 0; j < used[k]; j++) {
            s[i] = start_[k] + j;
            build_stacks(i + 1, s, used);
        }
        if (used[k] < size_[k]) {
            s[i] = start_[k] + used[k];
            used[k]++;
            build_stacks(i + 1, s, used);
            used[k]--;
        }
    }

    // Every allocated cell of a model lies on the footprint of some atom,
    // and every field value of such a cell is either stack-labelled or
    // allocated. So only heaps reachable from the stack need to be visited,
    // and anonymous locations can be numbered in discovery order.
    bool search_stack(const std::vector<int>& used, int k) {
        k_ = k;
        queue_.clear();
        named_.assign(sorts_.size(), 0);
        known_.assign(sorts_.size(), 0);
        for (int l : *stack_)
            if (l != 0 && !named_[l]) {
                named_[l] = 1;
                known_[l] = 1;
            }
        for (size_t l = 1; l < sorts_.size(); l++)
            if (named_[l]) queue_.push_back((int)l);
        for (int j = 0; j < 3; j++) next_[j] = used[j];
        pending_anon_ = 0;
        allocated_ = 0;
        return dfs(0);
    }

    bool dfs(size_t qi) {
        if (qi == queue_.size()) {
            if (allocated_ != k_) return false;
            heaps_++;
            Mask dom = 0;
            for (size_t l = 0; l < sorts_.size(); l++)
                if (h_.alloc[l]) dom |= bit((int)l);
            return eval_compiled(c_, *stack_, h_, dom);
        }
        int l = queue_[qi];
        if (named_[l]) {
            // Leave unallocated.
            if (dfs(qi + 1)) return true;
        } else {
            pending_anon_--;
        }
        bool found = false;
        if (allocated_ + 1 + pending_anon_ <= k_) {
            allocated_++;
            h_.alloc[l] = 1;
            found = fill_fields(qi, l, 0);
            if (!found) {
                h_.alloc[l] = 0;
                h_.rec[l] = Record{};
                allocated_--;
            }
        }
        if (!named_[l] && !found) pending_anon_++;
        return found;
    }

    std::vector<Field> fields_of(LocSort s) const {
        switch (s) {
        case LocSort::S: return {Field::n};
        case LocSort::D: return {Field::n, Field::p};
        case LocSort::N: return {Field::n, Field::t};
        default: return {};
        }
    }

    static void set_field(Record& r, Field f, int v) {
        if (f == Field::n) r.n = v;
        else if (f == Field::p) r.p = v;
        else r.t = v;
    }

    // A cell lies on the footprint of some atom. List cells point to nil or
    // to locations of the list's sort; points-to cells point to variables,
    // whose sorts are collected in named_targets_.
    static int target_sort(LocSort s, Field f) {
        if (s == LocSort::N) return f == Field::t ? 2 : 0;
        return s == LocSort::D ? 1 : 0;
    }

    bool allowed_target(int l, Field f, int ts, size_t v) const {
        if (v == 0) return true;
        int vs = sidx(sorts_[v]);
        return vs == ts || (named_[v] && (named_targets_[sidx(sorts_[l])][(int)f] >> vs & 1));
    }

    bool fill_fields(size_t qi, int l, size_t fi) {
        auto fs = fields_of(sorts_[l]);
        if (fi == fs.size()) return dfs(qi + 1);
        Field f = fs[fi];
        int ts = target_sort(sorts_[l], f);
        for (size_t v = 0; v < sorts_.size(); v++) {
            if (v != 0 && !known_[v]) continue;
            if (!allowed_target(l, f, ts, v)) continue;
            set_field(h_.rec[l], f, (int)v);
            if (fill_fields(qi, l, fi + 1)) return true;
        }
        // A fresh anonymous location; it has to be allocated later.
        if (allocated_ + pending_anon_ + 1 <= k_ && next_[ts] < size_[ts]) {
            int fresh = start_[ts] + next_[ts];
            next_[ts]++;
            known_[fresh] = 1;
            queue_.push_back(fresh);
            pending_anon_++;
            set_field(h_.rec[l], f, fresh);
            if (fill_fields(qi, l, fi + 1)) return true;
            pending_anon_--;
            queue_.pop_back();
            known_[fresh] = 0;
            next_[ts]--;
        }
        set_field(h_.rec[l], f, -1);
        return false;
    }

    Model result() const {
        Model m;
        m.sorts = sorts_;
        for (size_t i = 0; i < c_.slots.size(); i++) m.stack[c_.slots[i].name] = (*stack_)[i];
        for (size_t l = 0; l < sorts_.size(); l++)
            if (h_.alloc[l]) m.heap[(int)l] = h_.rec[l];
        return m;
    }

    Compiled c_;
    Budget budget_;
    std::vector<LocSort> sorts_;
    int start_[3], size_[3], next_[3];
    std::vector<std::pair<std::vector<int>, std::vector<int>>> stacks_;
    const std::vector<int>* stack_ = nullptr;
    HeapView h_;
    std::vector<int> queue_;
    std::vector<char> named_, known_;
    int named_targets_[3][3];
    int k_ = 0, allocated_ = 0, pending_anon_ = 0;
    uint64_t heaps_ = 0;
};

}  // namespace

std::optional<Model> enumerate(const Formula& f, Budget budget, int cap, EnumStats* stats) {
    if (budget.s < 0 || budget.d < 0 || budget.n < 0) throw BudgetTooLarge("negative budget");
    if (budget.total() > cap)
        throw BudgetTooLarge("universe of " + std::to_string(budget.total()) +
                             " locations exceeds cap " + std::to_string(cap));
    Enumerator e(f, budget);
    return e.run(stats);
}

//
// Chunks and reduction
//

const char* chunk_kind_name(ChunkKind k) {
    switch (k) {
    case ChunkKind::Pointer: return "pointer";
    case ChunkKind::Sls: return "sls";
    case ChunkKind::Dls: return "dls";
    case ChunkKind::Nls: return "nls";
    }
    return "?";
}

namespace {

// Footprints of all atom instances over stack-labelled locations. A sub-heap
// is positive iff it can be partitioned into such footprints.
std::vector<Chunk> atom_instances(const Model& m) {
    HeapView h = view_of(m);
    std::set<int> labels;
    for (auto& [v, l] : m.stack) labels.insert(l);
    std::vector<Chunk> out;
    auto add = [&](ChunkKind k, Mask mk, int a, int b, int c, int d, int e) {
        if (!mk) return;
        Chunk ch{k};
        ch.root = a;
        ch.sink = b;
        ch.last = c;
        ch.back = d;
        ch.inner = e;
        ch.cells = mask_to_set(mk);
        out.push_back(ch);
    };
    for (int a : labels) {
        if (!h.alloc[a]) continue;
        const Record& r = h.rec[a];
        bool all_lab = true;
        for (int x : {r.n, r.p, r.t})
            if (x >= 0 && !labels.count(x)) all_lab = false;
        if (all_lab) add(ChunkKind::Pointer, bit(a), a, -1, -1, -1, -1);
        for (int b : labels) {
            Mask mk;
            switch (h.sort(a)) {
            case LocSort::S:
                if (sls_path(h, a, b, mk)) add(ChunkKind::Sls, mk, a, b, -1, -1, -1);
                break;
            case LocSort::D:
                for (int xb : labels)
                    for (int yb : labels)
                        if (dls_fp(h, a, b, xb, yb, mk)) add(ChunkKind::Dls, mk, a, b, xb, yb, -1);
                break;
            case LocSort::N:
                for (int z : labels)
                    if (nls_fp(h, a, b, z, mk)) add(ChunkKind::Nls, mk, a, b, -1, -1, z);
                break;
            default:
                break;
            }
        }
    }
    return out;
}

Mask set_to_mask(const std::set<int>& s) {
    Mask m = 0;
    for (int l : s) m |= bit(l);
    return m;
}

class Positivity {
public:
    explicit Positivity(const std::vector<Chunk>& atoms) {
        for (auto& a : atoms) masks_.push_back(set_to_mask(a.cells));
        normalize(masks_);
    }

    bool positive(Mask m) {
        if (!m) return true;
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        Mask low = m & (~m + 1);
        bool ok = false;
        for (Mask a : masks_)
            if ((a & low) && (a & ~m) == 0 && positive(m & ~a)) {
                ok = true;
                break;
            }
        memo_[m] = ok;
        return ok;
    }

    // No split into two non-empty positive parts.
    bool atomic(Mask m) {
        for (Mask sub = (m - 1) & m; sub; sub = (sub - 1) & m)
            if (positive(sub) && positive(m & ~sub)) return false;
        return true;
    }

private:
    Masks masks_;
    std::map<Mask, bool> memo_;
};

bool subset(const std::set<int>& a, const std::set<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<Chunk> chunks(const Model& m) {
    auto atoms = atom_instances(m);
    Positivity pos(atoms);
    // Atomic models are footprints of atom instances; a pointer instance wins
    // the classification of a one-cell chunk.
    std::vector<Chunk> cand;
    for (auto& a : atoms) {
        if (!pos.atomic(set_to_mask(a.cells))) continue;
        bool seen = false;
        for (auto& c : cand)
            if (c.cells == a.cells) {
                if (a.kind == ChunkKind::Pointer) c = a;
                seen = true;
            }
        if (!seen) cand.push_back(a);
    }
    std::vector<Chunk> out;
    for (auto& c : cand) {
        bool maximal = true;
        for (auto& d : cand)
            if (c.cells != d.cells && subset(c.cells, d.cells)) maximal = false;
        if (maximal) out.push_back(c);
    }
    std::set<int> covered;
    for (auto& c : out)
        for (int l : c.cells)
            if (!covered.insert(l).second) throw NotPositive("overlapping chunks");
    for (auto& [l, r] : m.heap)
        if (!covered.count(l)) throw NotPositive("location " + std::to_string(l) + " is in no chunk");
    std::sort(out.begin(), out.end(),
              [](const Chunk& a, const Chunk& b) { return *a.cells.begin() < *b.cells.begin(); });
    return out;
}

Model reduce_model(const Model& m, const std::set<std::string>& X) {
    Model r;
    r.sorts = m.sorts;
    for (auto& [v, l] : m.stack)
        if (v == "nil" || X.count(v)) r.stack[v] = l;
    Model base = r;
    base.heap = m.heap;
    for (auto& c : chunks(base)) {
        switch (c.kind) {
        case ChunkKind::Pointer:
            r.heap[c.root] = m.heap.at(c.root);
            break;
        case ChunkKind::Sls: {
            int l = m.heap.at(c.root).n;
            r.heap[c.root] = Record{l};
            r.heap[l] = Record{c.sink};
            break;
        }
        case ChunkKind::Dls: {
            int l = m.heap.at(c.root).n;
            r.heap[c.root] = Record{l, c.back};
            r.heap[l] = Record{c.last, c.root};
            r.heap[c.last] = Record{c.sink, l};
            break;
        }
        case ChunkKind::Nls: {
            int l = m.heap.at(c.root).t;
            r.heap[c.root] = Record{c.inner, -1, l};
            r.heap[l] = Record{c.inner, -1, c.sink};
            break;
        }
        }
    }
    return r;
}

//
// Serialization
//

std::string to_json(const Model& m) {
    nlohmann::ordered_json j;
    j["locations"] = nlohmann::ordered_json::array();
    for (size_t l = 0; l < m.sorts.size(); l++)
        j["locations"].push_back({{"id", l}, {"sort", loc_sort_name(m.sorts[l])}});
    j["stack"] = nlohmann::ordered_json::object();
    for (auto& [v, l] : m.stack) j["stack"][v] = l;
    j["heap"] = nlohmann::ordered_json::object();
    for (auto& [l, r] : m.heap) {
        nlohmann::ordered_json rec;
        rec["n"] = r.n;
        if (r.p >= 0) rec["p"] = r.p;
        if (r.t >= 0) rec["t"] = r.t;
        j["heap"][std::to_string(l)] = rec;
    }
    return j.dump(2);
}

Model model_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Model m;
    for (auto& loc : j.at("locations")) {
        std::string s = loc.at("sort");
        size_t id = loc.at("id");
        if (m.sorts.size() <= id) m.sorts.resize(id + 1, LocSort::Nil);
        m.sorts[id] = s == "S" ? LocSort::S : s == "D" ? LocSort::D : s == "N" ? LocSort::N : LocSort::Nil;
    }
    for (auto& [v, l] : j.at("stack").items()) m.stack[v] = l.get<int>();
    for (auto& [l, rec] : j.at("heap").items()) {
        Record r;
        r.n = rec.at("n");
        if (rec.contains("p")) r.p = rec["p"];
        if (rec.contains("t")) r.t = rec["t"];
        m.heap[std::stoi(l)] = r;
    }
    return m;
}

std::string to_dot(const Model& m) {
    std::ostringstream os;
    os << "digraph model {\n  node [shape=box];\n";
    std::map<int, std::vector<std::string>> names;
    for (auto& [v, l] : m.stack) names[l].push_back(v);
    for (int l : m.locs()) {
        os << "  l" << l << " [label=\"" << l << ':' << loc_sort_name(m.sorts[l]);
        for (auto& v : names[l]) os << "\\n" << v;
        os << '"';
        if (m.allocated(l)) os << ", style=bold";
        os << "];\n";
    }
    for (auto& [l, r] : m.heap) {
        os << "  l" << l << " -> l" << r.n << " [label=n];\n";
        if (r.p >= 0) os << "  l" << l << " -> l" << r.p << " [label=p, style=dashed];\n";
        if (r.t >= 0) os << "  l" << l << " -> l" << r.t << " [label=t, style=bold];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace bsl
