#include "support.hpp"

#include "bsl/generator.hpp"
#include "bsl/slgraph.hpp"

using namespace test;

TEST_CASE("chunk weights") {
    CHECK(chunk_weight(nil) == 0);
    CHECK(chunk_weight(x) == 2);
    CHECK(chunk_weight(var("u", Sort::D)) == 1.5);
    CHECK(chunk_weight(var("m", Sort::N)) == 2);
    SLGraph g = saturate(build(cyclic_lists()));
    CHECK(chunk_weight(b, &g) == 1);
    CHECK(chunk_weight(c, &g) == 1);
    CHECK(chunk_weight(a, &g) == 2);
}

TEST_CASE("untightened bounds") {
    BoundProfile p = location_bounds(sls(x, y));
    CHECK(p.s == 4);
    CHECK(p.total == 5);
    BoundProfile q = location_bounds(eq(var("u", Sort::D), var("u", Sort::D)));
    CHECK(q.d == 1);
    CHECK(q.total == 2);
}

TEST_CASE("tightened S bound of the path-bound example") {
    SLGraph g = saturate(build(cyclic_lists()));
    CHECK(location_bounds(cyclic_lists(), &g).s == 6);
    CHECK(location_bounds(cyclic_lists()).s == 8);
}

TEST_CASE("must-equal variables are charged once") {
    Formula f = conj(eq(x, y), eq(x, y));
    SLGraph g = saturate(build(f));
    CHECK(location_bounds(f, &g).s == 2);
    Formula to_nil = conj(eq(x, nil), eq(x, nil));
    SLGraph h = saturate(build(to_nil));
    CHECK(location_bounds(to_nil, &h).s == 0);
}

TEST_CASE("tightening never increases bounds") {
    FormulaGenerator gen({4, 1, 1, 4, true, true, true, true}, 5);
    for (int i = 0; i < 200; i++) {
        Formula f = gen.formula();
        SLGraph g = saturate(build(f));
        if (g.contradiction()) continue;
        BoundProfile t = location_bounds(f, &g), u = location_bounds(f);
        CHECK(t.s <= u.s);
        CHECK(t.d <= u.d);
        CHECK(t.n <= u.n);
        CHECK(t.total <= u.total);
    }
}

TEST_CASE("tightened budgets still find models") {
    FormulaGenerator gen({3, 0, 0, 3}, 8);
    int sat = 0;
    for (int i = 0; i < 120 && sat < 40; i++) {
        Formula f = gen.formula();
        BoundProfile u = location_bounds(f);
        auto m = enumerate(f, {u.s, u.d, u.n}, 9);
        if (!m) continue;
        sat++;
        SLGraph g = saturate(build(f));
        REQUIRE_FALSE(g.contradiction());
        BoundProfile t = location_bounds(f, &g);
        CHECK_MESSAGE(enumerate(f, {t.s, t.d, t.n}, 9).has_value(), to_string(f));
    }
    CHECK(sat >= 20);
}
