#include "bsl/backend.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <unordered_map>
#include <algorithm>

namespace bsl {

const char* encoding_name(Encoding e) { return e == Encoding::Sets ? "sets" : "bitvectors"; }

const char* status_name(Status s) {
    switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    default: return "unknown";
    }
}

std::string SolverConfig::quantified_check() const {
    std::string base = command.substr(command.find_last_of('/') + 1);
    return base == "z3" ? "(check-sat-using (then simplify qe smt))" : "";
}

SolverConfig default_solver() {
    SolverConfig c;
    if (const char* env = std::getenv("BSL_SOLVER"); env && *env) {
        std::istringstream is(env);
        std::string w;
        std::vector<std::string> words;
        while (is >> w) words.push_back(w);
        if (!words.empty()) {
            c.command = words[0];
            c.args.assign(words.begin() + 1, words.end());
        }
    }
    return c;
}

namespace {

const char* fields[3] = {"n", "p", "t"};

class Printer {
public:
    Printer(const SmtScript& s, Encoding enc) : s_(s), enc_(enc), w_(s.universe()) {}

    std::string loc_sort() const { return enc_ == Encoding::Sets ? "Loc" : bv_sort(); }
    std::string set_sort() const { return enc_ == Encoding::Sets ? "(Array Loc Bool)" : bv_sort(); }
    std::string bv_sort() const { return "(_ BitVec " + std::to_string(w_) + ")"; }
    std::string bv(int v) const { return "(_ bv" + std::to_string(v) + " " + std::to_string(w_) + ")"; }

    std::string loc_name(int index) const {
        if (enc_ == Encoding::Bitvectors) return bv(index);
        LocSort ls = s_.sort_of(index);
        if (ls == LocSort::Nil) return "lnil";
        int base = s_.index_of(ls, 0);
        return std::string("l") + loc_sort_name(ls) + std::to_string(index - base);
    }

    std::string empty() const {
        return enc_ == Encoding::Sets ? "((as const (Array Loc Bool)) false)" : bv(0);
    }

    std::string singleton(const std::string& x) const {
        if (enc_ == Encoding::Sets) return "(store " + empty() + " " + x + " true)";
        return "(bvshl " + bv(1) + " " + x + ")";
    }

    std::string member(const std::string& x, const std::string& set) const {
        if (enc_ == Encoding::Sets) return "(select " + set + " " + x + ")";
        return "(not (= (bvand " + singleton(x) + " " + set + ") " + bv(0) + "))";
    }

    std::string binary(const char* sets_op, const char* bv_op, const std::vector<std::string>& xs) const {
        const char* op = enc_ == Encoding::Sets ? sets_op : bv_op;
        std::string acc = xs.back();
        for (int i = (int)xs.size() - 2; i >= 0; i--) acc = std::string("(") + op + " " + xs[i] + " " + acc + ")";
        return acc;
    }

    // Closed subterms referenced more than once get a define-fun of their own.
    void share(std::ostream& os, const Term& root) {
        std::unordered_map<const TNode*, int> refs;
        std::unordered_map<const TNode*, size_t> size;
        std::unordered_map<const TNode*, bool> closed;
        std::vector<const TNode*> order;
        std::vector<std::pair<const TNode*, bool>> todo{{root.get(), false}};
        while (!todo.empty()) {
            auto [n, done] = todo.back();
            todo.pop_back();
            if (done) {
                size_t sz = 1;
                bool c = n->k != TK::Bound && n->k != TK::Forall && n->k != TK::Exists;
                for (auto& a : n->args) {
                    sz = std::min<size_t>(sz + size[a.get()], 1 << 20);
                    c = c && closed[a.get()];
                }
                size[n] = sz;
                closed[n] = c;
                order.push_back(n);
                continue;
            }
            if (refs[n]++ > 0) continue;
            todo.push_back({n, true});
            for (auto& a : n->args) todo.push_back({a.get(), false});
        }
        for (const TNode* n : order) {
            if (refs[n] < 2 || !closed[n] || size[n] < 6) continue;
            std::string name = "|s!" + std::to_string(names_.size()) + "|";
            os << "(define-fun " << name << " () " << sort_of(n->sort) << " ";
            print_node(os, *n);
            os << ")\n";
            names_[n] = name;
        }
    }

    std::string sort_of(TSort s) const {
        return s == TSort::Bool ? "Bool" : s == TSort::Loc ? loc_sort() : set_sort();
    }

    void print(std::ostream& os, const Term& x) {
        auto it = names_.find(x.get());
        if (it != names_.end()) {
            os << it->second;
            return;
        }
        print_node(os, *x);
    }

    void print_node(std::ostream& os, const TNode& node) {
        const TNode* x = &node;
        switch (x->k) {
        case TK::True: os << "true"; return;
        case TK::False: os << "false"; return;
        case TK::Loc: os << loc_name(s_.index_of(x->loc_sort, x->index)); return;
        case TK::Const: os << "|v_" << x->name << "|"; return;
        case TK::Bound: os << "|" << x->name << "|"; return;
        case TK::SetSym: os << x->name; return;
        case TK::Empty: os << empty(); return;
        default: break;
        }
        std::vector<std::string> a;
        for (auto& c : x->args) a.push_back(str(c));
        switch (x->k) {
        case TK::Not: os << "(not " << a[0] << ")"; return;
        case TK::And:
        case TK::Or:
            os << (x->k == TK::And ? "(and" : "(or");
            for (auto& s : a) os << " " << s;
            os << ")";
            return;
        case TK::Implies: os << "(=> " << a[0] << " " << a[1] << ")"; return;
        case TK::Ite: os << "(ite " << a[0] << " " << a[1] << " " << a[2] << ")"; return;
        case TK::Eq: os << "(= " << a[0] << " " << a[1] << ")"; return;
        case TK::Select: os << "(select h_" << fields[(int)x->field] << " " << a[0] << ")"; return;
        case TK::Member: os << member(a[0], a[1]); return;
        case TK::Subset:
            if (enc_ == Encoding::Sets)
                os << "(subset " << a[0] << " " << a[1] << ")";
            else
                os << "(= (bvor (bvnot " << a[0] << ") " << a[1] << ") (bvnot " << bv(0) << "))";
            return;
        case TK::SetLit: {
            std::vector<std::string> xs;
            for (auto& e : a) xs.push_back(singleton(e));
            if (enc_ == Encoding::Sets) {
                std::string acc = empty();
                for (auto& e : a) acc = "(store " + acc + " " + e + " true)";
                os << acc;
            } else {
                os << binary("union", "bvor", xs);
            }
            return;
        }
        case TK::Union: os << binary("union", "bvor", a); return;
        case TK::Inter: os << binary("intersection", "bvand", a); return;
        case TK::Diff:
            if (enc_ == Encoding::Sets)
                os << "(setminus " << a[0] << " " << a[1] << ")";
            else
                os << "(bvand " << a[0] << " (bvnot " << a[1] << "))";
            return;
        case TK::Forall: {
            os << "(forall (";
            for (auto& b : x->binders) os << "(|" << b << "| " << loc_sort() << ")";
            os << ") ";
            if (enc_ == Encoding::Bitvectors) {
                os << "(=> (and";
                for (auto& b : x->binders) os << " (bvult |" << b << "| " << bv(s_.universe()) << ")";
                os << " true) " << a[0] << ")";
            } else {
                os << a[0];
            }
            os << ")";
            return;
        }
        case TK::Exists:
            os << "(exists (";
            for (auto& b : x->binders) os << "(|" << b << "| " << set_sort() << ")";
            os << ") " << a[0] << ")";
            return;
        default: throw UnsupportedTerm(head_name(x->k));
        }
    }

    std::string str(const Term& x) {
        std::ostringstream os;
        print(os, x);
        return os.str();
    }

private:
    static std::string head_name(TK k) { return "term kind " + std::to_string((int)k); }

    const SmtScript& s_;
    Encoding enc_;
    int w_;
    std::unordered_map<const TNode*, std::string> names_;
};

}  // namespace

std::string render(const SmtScript& s, Encoding enc, bool model_queries, const std::string& quantified_check) {
    Printer p(s, enc);
    std::ostringstream os;
    int n = s.universe();
    os << "(set-option :produce-models true)\n";
    if (enc == Encoding::Sets) {
        os << "(set-logic ALL)\n(declare-datatypes ((Loc 0)) ((";
        for (int i = 0; i < n; i++) os << "(" << p.loc_name(i) << ")";
        os << ")))\n";
    } else {
        os << "(set-logic ALL)\n";
    }
    for (auto& c : s.consts) os << "(declare-const |v_" << c << "| " << p.loc_sort() << ")\n";
    for (const char* f : fields) os << "(declare-const h_" << f << " (Array " << p.loc_sort() << " " << p.loc_sort() << "))\n";
    for (const char* d : {"D", "D_S", "D_D", "D_N"}) os << "(declare-const " << d << " " << p.set_sort() << ")\n";
    std::vector<std::string> freed;
    Term body = skolemize(s.assertion, freed);
    for (auto& f : freed) os << "(declare-const |" << f << "| " << p.set_sort() << ")\n";
    if (enc == Encoding::Bitvectors) {
        // Heap images stay inside the universe.
        for (int i = 0; i < n; i++)
            for (const char* f : fields)
                os << "(assert (bvult (select h_" << f << " " << p.bv(i) << ") " << p.bv(n) << "))\n";
    }
    p.share(os, body);
    os << "(assert ";
    p.print(os, body);
    os << ")\n";
    if (enc == Encoding::Bitvectors && !quantified_check.empty() && has_quantifier(body))
        os << quantified_check << "\n";
    else
        os << "(check-sat)\n";
    if (model_queries) {
        os << "(get-value (";
        for (auto& c : s.consts) os << "|v_" << c << "| ";
        for (int i = 0; i < n; i++) {
            std::string l = p.loc_name(i);
            os << p.member(l, "D") << " ";
            for (const char* f : fields) os << "(select h_" << f << " " << l << ") ";
        }
        os << "))\n";
    }
    os << "(exit)\n";
    return os.str();
}

namespace {

struct SExpr {
    std::string atom;
    std::vector<SExpr> list;
    bool is_list = false;
    std::string text;  // source text of the expression
};

class SReader {
public:
    explicit SReader(const std::string& s) : s_(s) {}

    bool next(SExpr& out) {
        skip();
        if (i_ >= s_.size()) return false;
        out = read();
        return true;
    }

private:
    void skip() {
        while (i_ < s_.size()) {
            if (isspace((unsigned char)s_[i_])) {
                i_++;
            } else if (s_[i_] == ';') {
                while (i_ < s_.size() && s_[i_] != '\n') i_++;
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip();
        if (i_ >= s_.size()) throw SolverOutputError("unexpected end of solver output");
        size_t start = i_;
        SExpr e;
        if (s_[i_] == '(') {
            e.is_list = true;
            i_++;
            for (;;) {
                skip();
                if (i_ >= s_.size()) throw SolverOutputError("unbalanced solver output");
                if (s_[i_] == ')') {
                    i_++;
                    break;
                }
                e.list.push_back(read());
            }
        } else if (s_[i_] == '"') {
            i_++;
            while (i_ < s_.size() && s_[i_] != '"') i_++;
            i_++;
            e.atom = s_.substr(start, i_ - start);
        } else if (s_[i_] == '|') {
            i_++;
            while (i_ < s_.size() && s_[i_] != '|') i_++;
            i_++;
            e.atom = s_.substr(start, i_ - start);
        } else if (s_[i_] == ')') {
            throw SolverOutputError("unbalanced solver output");
        } else {
            while (i_ < s_.size() && !isspace((unsigned char)s_[i_]) && s_[i_] != '(' && s_[i_] != ')') i_++;
            e.atom = s_.substr(start, i_ - start);
        }
        e.text = s_.substr(start, i_ - start);
        return e;
    }

    const std::string& s_;
    size_t i_ = 0;
};

std::string flat(const SExpr& e) {
    if (!e.is_list) return e.atom;
    std::string out = "(";
    for (size_t i = 0; i < e.list.size(); i++) out += (i ? " " : "") + flat(e.list[i]);
    return out + ")";
}

}  // namespace

SolverVerdict run_solver(const std::string& text, const SolverConfig& cfg) {
    int in[2], out[2];
    if (pipe(in) != 0 || pipe(out) != 0) throw SolverCrash("pipe failed");
    pid_t pid = fork();
    if (pid < 0) throw SolverCrash("fork failed");
    if (pid == 0) {
        dup2(in[0], 0);
        dup2(out[1], 1);
        dup2(out[1], 2);
        close(in[0]);
        close(in[1]);
        close(out[0]);
        close(out[1]);
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(cfg.command.c_str()));
        for (auto& a : cfg.args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        execvp(argv[0], argv.data());
        _exit(127);
    }
    close(in[0]);
    close(out[1]);
    fcntl(in[1], F_SETFL, O_NONBLOCK);
    signal(SIGPIPE, SIG_IGN);

    using clock = std::chrono::steady_clock;
    auto deadline = clock::now() + std::chrono::milliseconds((long)(cfg.timeout * 1000));
    size_t written = 0;
    std::string output;
    bool timed_out = false;
    int wfd = in[1];
    for (;;) {
        pollfd fds[2];
        int nf = 0;
        fds[nf++] = {out[0], POLLIN, 0};
        if (wfd >= 0) fds[nf++] = {wfd, POLLOUT, 0};
        int wait_ms = -1;
        if (cfg.timeout > 0) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
            if (left <= 0) {
                timed_out = true;
                break;
            }
            wait_ms = (int)left;
        }
        int r = poll(fds, nf, wait_ms);
        if (r < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (r == 0) continue;
        if (nf > 1 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t k = write(wfd, text.data() + written, text.size() - written);
            if (k > 0) written += k;
            if (k < 0 && errno != EAGAIN) written = text.size();
            if (written >= text.size()) {
                close(wfd);
                wfd = -1;
            }
        }
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            char buf[65536];
            ssize_t k = read(out[0], buf, sizeof buf);
            if (k <= 0) break;
            output.append(buf, k);
        }
    }
    if (wfd >= 0) close(wfd);
    close(out[0]);
    if (timed_out) kill(pid, SIGKILL);
    int status = 0;
    waitpid(pid, &status, 0);

    SolverVerdict v;
    v.raw = output;
    if (timed_out) return v;

    SReader rd(output);
    SExpr e;
    bool have_status = false;
    std::vector<std::string> errors;
    std::vector<SExpr> values;
    while (rd.next(e)) {
        if (!e.is_list) {
            if (!have_status && (e.atom == "sat" || e.atom == "unsat" || e.atom == "unknown")) {
                v.status = e.atom == "sat" ? Status::Sat : e.atom == "unsat" ? Status::Unsat : Status::Unknown;
                have_status = true;
            }
            continue;
        }
        if (!e.list.empty() && !e.list[0].is_list && e.list[0].atom == "error") {
            if (!have_status) errors.push_back(flat(e));
            continue;
        }
        if (have_status && values.empty()) values = e.list;
    }
    if (!have_status) {
        if (!errors.empty()) throw SolverCrash("solver error: " + errors[0]);
        if (WIFEXITED(status) && WEXITSTATUS(status) == 127) throw SolverCrash("cannot run " + cfg.command);
        throw SolverCrash("no verdict from solver");
    }
    if (!errors.empty()) throw SolverCrash("solver error: " + errors[0]);
    if (v.status == Status::Sat) {
        // Solvers may reprint the queried terms, so only the order is used.
        for (auto& p : values) {
            if (!p.is_list || p.list.size() != 2) throw SolverOutputError("malformed model value");
            v.values.push_back(flat(p.list[1]));
        }
    }
    return v;
}

std::vector<std::string> model_query_names(const SmtScript& s) {
    std::vector<std::string> names(s.consts.begin(), s.consts.end());
    for (int i = 0; i < s.universe(); i++) {
        std::string l = "[" + std::to_string(i) + "]";
        names.push_back("D" + l);
        for (const char* f : fields) names.push_back(std::string("h_") + f + l);
    }
    return names;
}

void label_model(SolverVerdict& v, const SmtScript& s) {
    auto names = model_query_names(s);
    if (v.values.size() != names.size()) throw SolverOutputError("model has " + std::to_string(v.values.size()) +
                                                                  " values, expected " + std::to_string(names.size()));
    v.model.clear();
    for (size_t i = 0; i < names.size(); i++) v.model[names[i]] = v.values[i];
}

int decode_loc(const std::string& value, Encoding enc, const SmtScript& s) {
    int n = s.universe();
    if (enc == Encoding::Sets) {
        for (int i = 0; i < n; i++) {
            LocSort ls = s.sort_of(i);
            std::string name = ls == LocSort::Nil ? "lnil"
                                                  : std::string("l") + loc_sort_name(ls) +
                                                        std::to_string(i - s.index_of(ls, 0));
            if (name == value) return i;
        }
        return -1;
    }
    long v = -1;
    if (value.rfind("#b", 0) == 0) {
        v = std::stol(value.substr(2), nullptr, 2);
    } else if (value.rfind("#x", 0) == 0) {
        v = std::stol(value.substr(2), nullptr, 16);
    } else if (value.rfind("(_ bv", 0) == 0) {
        v = std::stol(value.substr(5));
    }
    return v >= 0 && v < n ? (int)v : -1;
}

}  // namespace bsl
