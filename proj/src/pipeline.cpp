#include "bsl/pipeline.hpp"

#include <chrono>

#include "bsl/reconstruct.hpp"

namespace bsl {

SolveResult solve_formula(const Formula& phi, const SolveOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    check_sorts(phi);
    SolveResult r;
    auto done = [&]() {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    if (opt.oracle) {
        r.bounds = location_bounds(phi);
        auto m = enumerate(phi, {r.bounds.s, r.bounds.d, r.bounds.n}, opt.oracle_cap);
        r.status = m ? Status::Sat : Status::Unsat;
        if (m) {
            r.model = m;
            r.verified = evaluate(*m, phi);
        }
        return done();
    }

    Translator tr(phi, opt.translate);
    r.bounds = tr.bounds();
    if (tr.graph().contradiction()) {
        r.contradiction = true;
        r.status = Status::Unsat;
        return done();
    }
    r.script = tr.script();
    r.term_size = node_count(r.script.assertion);
    std::string text = render(r.script, opt.encoding, true, opt.solver.quantified_check());
    if (opt.keep_smt) r.smt = text;
    SolverVerdict v = run_solver(text, opt.solver);
    r.status = v.status;
    if (v.status == Status::Sat) {
        label_model(v, r.script);
        r.model = inverse_translate(v, r.script, opt.encoding, phi);
        r.verified = verify_model(*r.model, phi);
    }
    return done();
}

SolveResult solve_entailment(const Formula& lhs, const Formula& rhs, const SolveOptions& opt) {
    if (opt.entailment_shortcut && !opt.oracle && entailment_reduces_to_lhs(lhs, rhs)) {
        check_sorts(rhs);
        SolveResult r = solve_formula(lhs, opt);
        r.shortcut = true;
        return r;
    }
    return solve_formula(entailment_query(lhs, rhs), opt);
}

}  // namespace bsl
