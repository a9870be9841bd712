#include "support.hpp"

using namespace test;

TEST_CASE("points-to shapes are checked against the root sort") {
    CHECK_NOTHROW(check_sorts(pto_s(x, y)));
    CHECK_THROWS_AS(check_sorts(pto(x, {{Field::n, y}, {Field::p, z}})), SortError);
    Var u = var("u", Sort::D), v = var("v", Sort::D);
    CHECK_NOTHROW(check_sorts(pto_d(u, v, nil)));
    CHECK_THROWS_AS(check_sorts(pto_s(u, v)), SortError);
}

TEST_CASE("predicate arguments must have the predicate's sorts") {
    CHECK_THROWS_AS(check_sorts(dls(x, y, z, w)), SortError);
    Var m = var("m", Sort::N);
    CHECK_NOTHROW(check_sorts(nls(m, nil, x)));
    CHECK_THROWS_AS(check_sorts(nls(x, nil, m)), SortError);
    CHECK_THROWS_AS(check_sorts(sls(m, nil)), SortError);
}

TEST_CASE("sort errors name the offending subterm") {
    try {
        check_sorts(star(sls(x, y), conj(eq(x, y), pto(x, {{Field::t, y}}))));
        FAIL("no error");
    } catch (const SortError& e) {
        CHECK(e.path == "11");
    }
}

TEST_CASE("roots of spatial atoms") {
    CHECK(roots_of_spatial(star(sls(x, y), pto_s(y, z))) == std::set<Var>{x, y});
    CHECK(roots_of_spatial(eq(x, y)).empty());
    Var A = var("a", Sort::N), B = var("b", Sort::N);
    CHECK(roots_of_spatial(conj(nls(A, B, c), pto_n(A, c, B))) == std::set<Var>{A});
}

TEST_CASE("vars includes nil and is monotone") {
    Formula f = star(sls(x, y), pto_s(y, z));
    auto v = vars(f);
    CHECK(v.count(nil));
    CHECK(v.size() == 4);
    for (auto& u : vars(sls(x, y))) CHECK(v.count(u));
    CHECK(vars(conj(f, eq(w, w))) == vars(conj(eq(w, w), f)));
    CHECK(vars_of_sort(f, Sort::D) == std::set<Var>{nil});
}

TEST_CASE("printing and structural measures") {
    Formula f = gneg(sls(x, y), star(pto_s(x, nil), neq(x, y)));
    CHECK(to_string(f) == "(gneg (sls x y) (sep (pto x (c_sls nil)) (distinct x y)))");
    CHECK(node_count(f) == 5);
    CHECK(depth(f) == 3);
    CHECK(equal(f, gneg(sls(x, y), star(pto_s(x, nil), neq(x, y)))));
    CHECK_FALSE(equal(f, gneg(sls(x, y), star(neq(x, y), pto_s(x, nil)))));
    std::vector<Formula> atoms;
    collect_atoms(f, atoms);
    REQUIRE(atoms.size() == 3);
    CHECK(atoms[0]->op == Op::Sls);
    CHECK(atoms[2]->op == Op::Neq);
}

TEST_CASE("star_all folds to the left") {
    Formula f = star_all({eq(x, x), eq(y, y), eq(z, z)});
    CHECK(f->op == Op::Star);
    CHECK(f->lhs->op == Op::Star);
    CHECK(star_all({eq(x, x)})->op == Op::Eq);
}
