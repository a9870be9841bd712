#include "support.hpp"

#include "bsl/generator.hpp"

using namespace test;

namespace {

// nil = 0, then S locations 1..k
Model s_model(int k, std::map<std::string, int> stack, std::map<int, int> next) {
    Model m = empty_model(k, 0, 0);
    for (auto& [v, l] : stack) m.stack[v] = l;
    for (auto& [l, n] : next) m.heap[l] = Record{n, -1, -1};
    return m;
}

}  // namespace

TEST_CASE("single pointer") {
    Model m = s_model(2, {{"x", 1}, {"y", 2}}, {{1, 2}});
    CHECK(evaluate(m, pto_s(x, y)));
    CHECK_FALSE(evaluate(m, pto_s(y, x)));
    CHECK_FALSE(evaluate(m, eq(x, x)));  // precise: heap must be empty
}

TEST_CASE("empty list between equal variables") {
    Model m = s_model(2, {{"x", 1}, {"y", 1}}, {});
    CHECK(evaluate(m, sls(x, y)));
    CHECK(evaluate(m, eq(x, y)));
}

TEST_CASE("list of length two satisfies sls minus a single pointer") {
    Model m = s_model(3, {{"x", 1}, {"y", 3}}, {{1, 2}, {2, 3}});
    Formula at_least_two = gneg(star(sls(x, y), neq(x, y)), pto_s(x, y));
    CHECK(evaluate(m, at_least_two));
    CHECK(evaluate_by_splits(m, at_least_two));
    CHECK_FALSE(evaluate(s_model(2, {{"x", 1}, {"y", 2}}, {{1, 2}}), at_least_two));
}

TEST_CASE("sls rejects paths through its sink and cycles") {
    CHECK_FALSE(evaluate(s_model(2, {{"x", 1}, {"y", 1}}, {{1, 2}, {2, 1}}), sls(x, y)));
    CHECK_FALSE(evaluate(s_model(3, {{"x", 1}, {"y", 3}}, {{1, 2}, {2, 1}}), sls(x, y)));
}

TEST_CASE("footprints by brute force") {
    Model m = s_model(2, {{"x", 1}, {"y", 2}}, {{1, 2}});
    CHECK(footprints_bruteforce(m, disj(pto_s(x, y), eq(x, x))) == std::set<std::set<int>>{{1}, {}});
    Model same = s_model(1, {{"x", 1}, {"y", 1}}, {});
    CHECK(footprints_bruteforce(same, eq(x, y)) == std::set<std::set<int>>{{}});
    CHECK(footprints_bruteforce(same, neq(x, y)).empty());
}

TEST_CASE("unbound variables are reported") {
    Model m = s_model(1, {{"x", 1}}, {});
    CHECK_THROWS_AS(evaluate(m, eq(x, y)), UnboundVariable);
}

TEST_CASE("enumeration") {
    auto cyc = enumerate(star(pto_s(x, y), pto_s(y, x)), {3, 0, 0});
    REQUIRE(cyc);
    CHECK(cyc->heap.size() == 2);
    CHECK(cyc->stack.at("x") != cyc->stack.at("y"));

    CHECK_FALSE(enumerate(conj(pto_s(x, y), eq(x, y)), {3, 0, 0}));

    auto one = enumerate(star(sls(x, y), neq(x, y)), {3, 0, 0});
    REQUIRE(one);
    CHECK(one->heap.size() == 1);
    CHECK(one->heap.at(one->stack.at("x")).n == one->stack.at("y"));

    CHECK_THROWS_AS(enumerate(sls(x, y), {8, 0, 0}), BudgetTooLarge);
}

TEST_CASE("enumeration follows pointers across sorts") {
    Var u = var("u", Sort::D);
    auto m = enumerate(star(pto_s(x, u), pto_d(u, x, nil)), {2, 2, 0});
    REQUIRE(m);
    CHECK(m->heap.at(m->stack.at("x")).n == m->stack.at("u"));
    CHECK(m->heap.at(m->stack.at("u")).n == m->stack.at("x"));
}

TEST_CASE("chunks") {
    // x -> 1 -> 2 -> 3 -> y: interior not labelled
    Model list = s_model(5, {{"x", 1}, {"y", 5}}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto cs = chunks(list);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].kind == ChunkKind::Sls);
    CHECK(cs[0].cells.size() == 4);

    auto single = chunks(s_model(2, {{"x", 1}, {"y", 2}}, {{1, 2}}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].kind == ChunkKind::Pointer);

    auto two = chunks(s_model(4, {{"x", 1}, {"y", 2}, {"z", 3}, {"w", 4}}, {{1, 2}, {3, 4}}));
    CHECK(two.size() == 2);

    // an unlabelled cell pointing to itself cannot be described
    CHECK_THROWS_AS(chunks(s_model(2, {{"x", 1}}, {{2, 2}})), NotPositive);
}

TEST_CASE("reduce_model shrinks a long list to two pointers") {
    Model list = s_model(6, {{"x", 1}, {"y", 6}}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
    Model r = reduce_model(list, {"x", "y"});
    CHECK(r.heap.size() == 2);
    Formula f = gneg(star(sls(x, y), neq(x, y)), pto_s(x, y));
    CHECK(evaluate(list, f));
    CHECK(evaluate(r, f));

    Model ptr = s_model(2, {{"x", 1}, {"y", 2}}, {{1, 2}});
    Model rp = reduce_model(ptr, {"x", "y"});
    CHECK(rp.heap == ptr.heap);
}

TEST_CASE("reduce_model keeps two nested tops sharing the inner target") {
    Var X = var("x", Sort::N), Z = var("z", Sort::S);
    // tops 1 -> 2 -> 3 -> nil over t, each with an inner list of length 2 to z
    Model m = empty_model(7, 0, 3);
    int n1 = 8, n2 = 9, n3 = 10;
    m.stack["x"] = n1;
    m.stack["z"] = 7;
    m.heap[n1] = Record{1, -1, n2};
    m.heap[n2] = Record{3, -1, n3};
    m.heap[n3] = Record{5, -1, 0};
    m.heap[1] = Record{2, -1, -1};
    m.heap[2] = Record{7, -1, -1};
    m.heap[3] = Record{4, -1, -1};
    m.heap[4] = Record{7, -1, -1};
    m.heap[5] = Record{6, -1, -1};
    m.heap[6] = Record{7, -1, -1};
    Formula f = nls(X, nil, Z);
    REQUIRE(evaluate(m, f));
    Model r = reduce_model(m, {"x", "z"});
    CHECK(evaluate(r, f));
    int tops = 0;
    for (auto& [l, rec] : r.heap)
        if (r.sorts[l] == LocSort::N) tops++;
    CHECK(tops == 2);
}

TEST_CASE("compositional star agrees with all splits") {
    FormulaGenerator gen({3, 0, 0, 3}, 11);
    int checked = 0;
    for (int i = 0; i < 60; i++) {
        Formula f = gen.formula();
        auto m = enumerate(f, {3, 0, 0});
        if (!m) continue;
        CHECK(evaluate_by_splits(*m, f));
        CHECK(footprints(*m, f) == footprints_bruteforce(*m, f));
        checked++;
    }
    CHECK(checked > 10);
}

TEST_CASE("models serialize") {
    Model m = s_model(2, {{"x", 1}, {"y", 2}}, {{1, 2}});
    Model back = model_from_json(to_json(m));
    CHECK(back.heap == m.heap);
    CHECK(back.stack == m.stack);
    CHECK(back.sorts == m.sorts);
    CHECK(to_dot(m).find("digraph") != std::string::npos);
}
