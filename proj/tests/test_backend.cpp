#include "support.hpp"

#include <fstream>

#include <sys/stat.h>

#include "bsl/backend.hpp"
#include "bsl/translator.hpp"

using namespace test;

namespace {

SmtScript script_of(const Formula& f) {
    Translator tr(f);
    return tr.script();
}

std::string fake_solver(const std::string& name, const std::string& body) {
    std::string path = "/tmp/bsl_test_" + name + ".sh";
    std::ofstream out(path);
    out << "#!/bin/sh\ncat > /dev/null\n" << body << "\n";
    out.close();
    chmod(path.c_str(), 0755);
    return path;
}

}  // namespace

TEST_CASE("bitvector rendering of set operations") {
    SmtScript s = script_of(pto_s(x, y));
    std::string bv = render(s, Encoding::Bitvectors);
    int w = s.universe();
    CHECK(bv.find("(_ BitVec " + std::to_string(w) + ")") != std::string::npos);
    CHECK(bv.find("(bvshl (_ bv1 " + std::to_string(w) + ") |v_x|)") != std::string::npos);
    CHECK(bv.find("(bvult (select h_n (_ bv0 " + std::to_string(w) + "))") != std::string::npos);
    std::string sets = render(s, Encoding::Sets);
    CHECK(sets.find("declare-datatypes ((Loc 0))") != std::string::npos);
    CHECK(sets.find("(Array Loc Bool)") != std::string::npos);
    CHECK(sets.find("bvshl") == std::string::npos);
}

TEST_CASE("subset and empty set in bitvectors") {
    Formula f = sls(x, y);
    SmtScript s = script_of(f);
    std::string bv = render(s, Encoding::Bitvectors, false);
    CHECK(bv.find("(bvor (bvnot ") != std::string::npos);
    CHECK(bv.find("(bvnot (_ bv0 ") != std::string::npos);
}

TEST_CASE("check command for quantified bitvector scripts") {
    SolverConfig z3;
    CHECK(z3.quantified_check().find("qe") != std::string::npos);
    SolverConfig other;
    other.command = "/opt/cvc5";
    CHECK(other.quantified_check().empty());

    TranslateConfig q;
    q.strategy.mode = StrategyMode::Quantif;
    Formula f = gneg(sls(x, y), star(sls(x, z), sls(z, y)));
    Translator tr(f, q);
    SmtScript s = tr.script();
    std::string bv = render(s, Encoding::Bitvectors, false, z3.quantified_check());
    CHECK(bv.find(z3.quantified_check()) != std::string::npos);
    CHECK(bv.find("(check-sat)") == std::string::npos);
    std::string sets = render(s, Encoding::Sets, false, z3.quantified_check());
    CHECK(sets.find("(check-sat)") != std::string::npos);
    std::string plain = render(script_of(pto_s(x, y)), Encoding::Bitvectors, false, z3.quantified_check());
    CHECK(plain.find("(check-sat)") != std::string::npos);
}

TEST_CASE("location decoding") {
    SmtScript s = script_of(star(sls(x, y), pto_s(z, nil)));
    CHECK(decode_loc("lnil", Encoding::Sets, s) == 0);
    CHECK(decode_loc("lS2", Encoding::Sets, s) == 2);
    CHECK(decode_loc("#b0011", Encoding::Bitvectors, s) == 3);
    CHECK(decode_loc("#x3", Encoding::Bitvectors, s) == 3);
    CHECK(decode_loc("(_ bv2 7)", Encoding::Bitvectors, s) == 2);
    CHECK(decode_loc("banana", Encoding::Sets, s) == -1);
}

TEST_CASE("solver round trips") {
    if (!have_solver()) return;
    SmtScript s = script_of(pto_s(x, y));
    auto v = run_solver(render(s, Encoding::Bitvectors), default_solver());
    CHECK(v.status == Status::Sat);
    label_model(v, s);
    CHECK(v.model.count("x"));
    CHECK(v.model.count("y"));
    SolverVerdict u = run_solver("(assert false)\n(check-sat)\n", default_solver());
    CHECK(u.status == Status::Unsat);
    CHECK(u.model.empty());
}

TEST_CASE("solver failures") {
    SolverConfig slow{fake_solver("slow", "sleep 5; echo sat"), {}, 0.5};
    CHECK(run_solver("(check-sat)\n", slow).status == Status::Unknown);
    SolverConfig dead{fake_solver("dead", "exit 3"), {}, 0};
    CHECK_THROWS_AS(run_solver("(check-sat)\n", dead), SolverCrash);
    SolverConfig missing{"/nonexistent/solver", {}, 0};
    CHECK_THROWS(run_solver("(check-sat)\n", missing));
}
