#include "support.hpp"

#include "bsl/generator.hpp"
#include "bsl/slgraph.hpp"

using namespace test;

TEST_CASE("graph of an equality") {
    SLGraph g = build(eq(x, y));
    CHECK(g.eq(x, y));
    CHECK(g.eq(x, x));
    CHECK_FALSE(g.neq(x, y));
    CHECK_FALSE(g.pto(Field::n, x, y));
}

TEST_CASE("disjoint union of two pointers") {
    SLGraph g = build(star(pto_s(a, b), pto_s(c, d)));
    CHECK(g.pto(Field::n, a, b));
    CHECK(g.pto(Field::n, c, d));
    CHECK(g.neq(a, c));
    CHECK(g.neq(c, a));
    CHECK(g.disjoint(Field::n, a, b, c, d));
    CHECK(g.disjoint(Field::n, c, d, a, b));
    CHECK(g.neq(a, nil));
}

TEST_CASE("graph of the path-bound example") {
    SLGraph g = saturate(build(cyclic_lists()));
    CHECK(g.path(Field::n, a, b));
    CHECK(g.pto(Field::n, b, c));
    CHECK(g.pto(Field::n, c, d));
    CHECK(g.path(Field::n, d, a));
    CHECK(g.disjoint(Field::n, a, b, b, c));
    CHECK(g.disjoint(Field::n, a, b, c, d));
    CHECK(g.disjoint(Field::n, a, b, d, a));
    CHECK(g.disjoint(Field::n, b, c, d, a));
    CHECK_FALSE(g.contradiction());
}

TEST_CASE("pointer matching and contradiction") {
    SLGraph g = saturate(build(conj(conj(pto_s(x, a), pto_s(y, b)), eq(x, y))));
    CHECK(g.eq(a, b));
    SLGraph bad = saturate(build(conj(eq(x, y), neq(x, y))));
    CHECK(bad.contradiction());
    SLGraph plain = build(star(pto_s(a, b), pto_s(c, d)));
    CHECK(saturate(plain) == plain);
}

TEST_CASE("path bounds of the example") {
    Formula f = cyclic_lists();
    SLGraph g = saturate(build(f));
    CHECK(path_bound(g, f, Field::n, a, c) == PathBound{1, 3});
    CHECK(initial_bound(g, f, Field::n, a, b) == PathBound{0, 2});
    CHECK(initial_bound(g, f, Field::n, d, a) == PathBound{0, 2});
    CHECK(path_bound(g, f, Field::n, b, c) == PathBound{1, 1});
}

TEST_CASE("a bare pointer is a path of length one") {
    Formula f = pto_s(x, y);
    SLGraph g = saturate(build(f));
    CHECK(initial_bound(g, f, Field::n, x, y) == PathBound{1, 1});
    // x = y is possible, so the path itself may be empty
    CHECK(path_bound(g, f, Field::n, x, y) == PathBound{0, 1});
    Formula apart = star(pto_s(x, y), pto_s(y, nil));
    SLGraph h = saturate(build(apart));
    CHECK(path_bound(h, apart, Field::n, x, y) == PathBound{1, 1});
}

TEST_CASE("unrelated roots get the default bound") {
    Formula f = star(sls(x, y), pto_s(z, nil));
    SLGraph g = saturate(build(f));
    PathBound p = path_bound(g, f, Field::n, y, x);
    CHECK(p.lower == 0);
    CHECK(p.upper == location_bounds(f, &g).s);
}

TEST_CASE("saturation is idempotent and monotone") {
    FormulaGenerator gen({4, 1, 1, 4, true, true, true, true}, 3);
    for (int i = 0; i < 150; i++) {
        Formula f = gen.formula();
        SLGraph g = build(f), s = saturate(g);
        if (s.contradiction()) continue;
        CHECK(s.includes(g));
        CHECK(saturate(s) == s);
    }
}

TEST_CASE("build ignores reassociation of conjunctions and disjunctions") {
    Formula p = sls(x, y), q = pto_s(y, z), r = neq(z, w);
    CHECK(build(conj(conj(p, q), r)) == build(conj(p, conj(q, r))));
    CHECK(build(disj(disj(p, q), r)) == build(disj(p, disj(q, r))));
}

namespace {

// Atoms that every model of f realizes: reached through ⋆, ∧ and guards only.
void spine(const Formula& f, std::vector<Formula>& out) {
    if (is_atom(f)) {
        out.push_back(f);
        return;
    }
    if (f->op == Op::Star || f->op == Op::And) {
        spine(f->lhs, out);
        spine(f->rhs, out);
    } else if (f->op == Op::GNeg) {
        spine(f->lhs, out);
    }
}

}  // namespace

TEST_CASE("path bounds contain the witnessed path lengths") {
    FormulaGenerator gen({3, 0, 0, 3}, 21);
    int seen = 0;
    for (int i = 0; i < 400 && seen < 200; i++) {
        Formula f = gen.formula();
        BoundProfile u = location_bounds(f);
        auto m = enumerate(f, {u.s, 0, 0}, 9);
        if (!m) continue;
        SLGraph g = saturate(build(f));
        std::vector<Formula> atoms;
        spine(f, atoms);
        for (auto& at : atoms) {
            if (at->op != Op::Sls) continue;
            const Var &p = at->args[0], &q = at->args[1];
            int l = m->stack.at(p.name), goal = m->stack.at(q.name), len = 0;
            while (l != goal && m->allocated(l) && len <= (int)m->heap.size()) {
                l = m->heap.at(l).n;
                len++;
            }
            REQUIRE(l == goal);
            PathBound pb = path_bound(g, f, Field::n, p, q);
            CHECK_MESSAGE(pb.lower <= len, to_string(f));
            CHECK_MESSAGE(len <= pb.upper, to_string(f));
            seen++;
        }
    }
    CHECK(seen >= 50);
}
