#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "bsl/parser.hpp"
#include "bsl/pipeline.hpp"
#include "bsl/qbf.hpp"
#include "bsl/slgraph.hpp"

using namespace bsl;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string encoding = "bitvectors";
    std::string strategy = "auto";
    std::string solver;
    std::vector<std::string> solver_args;
    double timeout = 0;
    bool model = false;
    bool verify = false;
    bool oracle = false;
    bool stats = false;
    bool dump_smt = false;
    bool dump_slgraph = false;
    int jobs = 1;
};

SolveOptions options(const Flags& f) {
    SolveOptions o;
    o.encoding = f.encoding == "sets" ? Encoding::Sets : Encoding::Bitvectors;
    if (f.strategy == "enum")
        o.translate.strategy.mode = StrategyMode::Enum;
    else if (f.strategy == "quantif")
        o.translate.strategy.mode = StrategyMode::Quantif;
    if (!f.solver.empty()) {
        o.solver.command = f.solver;
        o.solver.args = f.solver_args;
    } else if (!f.solver_args.empty()) {
        o.solver.args = f.solver_args;
    }
    o.solver.timeout = f.timeout;
    o.oracle = f.oracle;
    o.keep_smt = f.dump_smt;
    return o;
}

SolveResult run(const Query& q, const SolveOptions& o) {
    if (q.mode == Query::Mode::Entailment) return solve_entailment(q.lhs, q.rhs, o);
    return solve_formula(q.formula, o);
}

std::string verdict(const Query& q, Status s) {
    if (q.mode == Query::Mode::Sat || s == Status::Unknown) return status_name(s);
    return s == Status::Unsat ? "valid" : "invalid";
}

bool matches(Expected e, Status s) {
    switch (e) {
    case Expected::Sat: return s == Status::Sat;
    case Expected::Unsat: return s == Status::Unsat;
    default: return true;
    }
}

json stats(const SolveResult& r) {
    json j;
    j["bounds"] = {{"S", r.bounds.s}, {"D", r.bounds.d}, {"N", r.bounds.n}, {"total", r.bounds.total}};
    json stars = json::array();
    for (auto& s : r.script.stars)
        stars.push_back({{"star", s.node},
                         {"left", s.left},
                         {"right", s.right},
                         {"strategy", s.strategy == StarStrategy::Enumerate ? "enum" : "quantif"}});
    j["footprints"] = stars;
    json paths = json::object();
    for (auto& [atom, b] : r.script.path_bounds) paths[atom] = {b.lower, b.upper};
    j["path_bounds"] = paths;
    j["term_size"] = r.term_size;
    j["contradiction"] = r.contradiction;
    j["shortcut"] = r.shortcut;
    j["seconds"] = r.seconds;
    return j;
}

int solve_cmd(const std::string& file, const Flags& flags) {
    Query q = parse_file(file);
    if (flags.dump_slgraph) std::cout << saturate(build(q.sat_formula())).to_dot();
    SolveResult r = run(q, options(flags));
    if (flags.dump_smt) std::cout << r.smt;
    std::cout << verdict(q, r.status) << "\n";
    if (flags.model && r.model) std::cout << to_json(*r.model) << "\n";
    if (flags.verify && r.model) std::cout << "model " << (r.verified ? "verified" : "REJECTED") << "\n";
    if (flags.stats) std::cout << stats(r).dump(2) << "\n";
    if (flags.verify && r.model && !r.verified) return 1;
    if (r.status != Status::Unknown && !matches(q.expected, r.status)) {
        std::cerr << "expected " << expected_name(q.expected) << "\n";
        return 2;
    }
    return 0;
}

struct Row {
    std::string name, expected, got;
    double seconds = 0;
    bool mismatch = false, unknown = false, error = false;
};

Row bench_one(const fs::path& p, const Flags& flags) {
    Row row;
    row.name = p.filename().string();
    auto t0 = std::chrono::steady_clock::now();
    try {
        Query q = parse_file(p.string());
        row.expected = expected_name(q.expected);
        SolveResult r = run(q, options(flags));
        row.got = status_name(r.status);
        row.unknown = r.status == Status::Unknown;
        row.mismatch = !row.unknown && !matches(q.expected, r.status);
        if (r.model && !r.verified) row.mismatch = true;
    } catch (const std::exception& e) {
        row.got = std::string("error: ") + e.what();
        std::replace(row.got.begin(), row.got.end(), ',', ';');
        std::replace(row.got.begin(), row.got.end(), '\n', ' ');
        row.error = true;
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

int bench_cmd(const std::string& dir, const Flags& flags) {
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(dir)) {
        auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".bsl" || ext == ".smt2")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Row> rows(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < files.size();) rows[i] = bench_one(files[i], flags);
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, flags.jobs); j++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::cout << "name,expected,got,time,encoding,strategy\n";
    size_t ok = 0, unknown = 0, bad = 0, errors = 0;
    for (auto& r : rows) {
        std::cout << r.name << "," << r.expected << "," << r.got << "," << std::fixed << std::setprecision(3)
                  << r.seconds << "," << flags.encoding << "," << flags.strategy << "\n";
        if (r.error)
            errors++;
        else if (r.unknown)
            unknown++;
        else if (r.mismatch)
            bad++;
        else
            ok++;
    }
    std::cout << ok << "/" << rows.size() << " OK";
    if (unknown) std::cout << ", " << unknown << " unknown";
    if (bad) std::cout << ", " << bad << " mismatch";
    if (errors) std::cout << ", " << errors << " error";
    std::cout << "\n";
    return bad ? 2 : errors ? 1 : 0;
}

int gen_qbf_cmd(const std::string& dir, int count, int max_vars, int depth, uint64_t seed) {
    fs::create_directories(dir);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nv(1, max_vars);
    for (int i = 0; i < count; i++) {
        Qbf f = random_qbf({nv(rng), depth}, rng);
        Query q;
        q.formula = reduce_qbf(f);
        q.expected = eval_qbf(f) ? Expected::Sat : Expected::Unsat;
        std::ostringstream name;
        name << "qbf_" << std::setw(3) << std::setfill('0') << i << ".bsl";
        std::ofstream out(fs::path(dir) / name.str());
        out << "; " << to_string(f) << "\n" << print_native(q);
    }
    return 0;
}

void add_solve_flags(CLI::App* c, Flags& f) {
    c->add_option("--encoding", f.encoding)->check(CLI::IsMember({"sets", "bitvectors"}));
    c->add_option("--strategy", f.strategy)->check(CLI::IsMember({"auto", "enum", "quantif"}));
    c->add_option("--solver", f.solver, "solver executable");
    c->add_option("--solver-arg", f.solver_args, "argument passed to the solver (repeatable)");
    c->add_option("--timeout", f.timeout, "seconds per query, 0 for none");
    c->add_flag("--oracle", f.oracle, "decide by bounded enumeration");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean separation logic satisfiability and entailment"};
    app.require_subcommand(1);
    Flags flags;
    std::string file, dir, out_dir = "qbf";
    int count = 20, max_vars = 4, depth = 3;
    uint64_t seed = 1;

    auto* solve = app.add_subcommand("solve", "decide one .bsl or .smt2 file");
    solve->add_option("file", file)->required()->check(CLI::ExistingFile);
    add_solve_flags(solve, flags);
    solve->add_flag("--model", flags.model, "print the witness as JSON");
    solve->add_flag("--verify-model", flags.verify, "check the witness against the formula");
    solve->add_flag("--stats", flags.stats, "print bounds, footprints and sizes as JSON");
    solve->add_flag("--dump-smt", flags.dump_smt, "print the SMT-LIB script");
    solve->add_flag("--dump-slgraph", flags.dump_slgraph, "print the saturated SL-graph (dot)");

    auto* bench = app.add_subcommand("bench", "run every file of a directory");
    bench->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
    add_solve_flags(bench, flags);
    bench->add_option("--jobs", flags.jobs);

    auto* gen = app.add_subcommand("gen-qbf", "write random QBF reductions as .bsl files");
    gen->add_option("--out", out_dir);
    gen->add_option("--count", count);
    gen->add_option("--max-vars", max_vars)->check(CLI::Range(1, 12));
    gen->add_option("--depth", depth);
    gen->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*solve) return solve_cmd(file, flags);
        if (*bench) return bench_cmd(dir, flags);
        return gen_qbf_cmd(out_dir, count, max_vars, depth, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
