#include "bsl/parser.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace bsl {

const char* expected_name(Expected e) {
    switch (e) {
    case Expected::Sat: return "sat";
    case Expected::Unsat: return "unsat";
    case Expected::Unknown: return "unknown";
    default: return "-";
    }
}

Formula Query::sat_formula() const { return mode == Mode::Sat ? formula : gneg(lhs, rhs); }

namespace {

struct Sx {
    bool list = false;
    std::string atom;
    std::vector<Sx> items;
    int line = 1, col = 1;

    bool is(const char* s) const { return !list && atom == s; }
    const std::string& head() const {
        static const std::string none;
        return list && !items.empty() && !items[0].list ? items[0].atom : none;
    }
};

[[noreturn]] void fail(const Sx& at, const std::string& msg) { throw ParseError(msg, at.line, at.col); }

std::vector<Sx> read_all(const std::string& s) {
    size_t i = 0;
    int line = 1, col = 1;
    auto adv = [&]() {
        if (s[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        i++;
    };
    auto skip = [&]() {
        while (i < s.size()) {
            if (isspace((unsigned char)s[i])) {
                adv();
            } else if (s[i] == ';') {
                while (i < s.size() && s[i] != '\n') adv();
            } else {
                break;
            }
        }
    };
    std::vector<Sx> stack;
    std::vector<Sx> top;
    for (;;) {
        skip();
        if (i >= s.size()) break;
        char c = s[i];
        if (c == '(') {
            Sx x;
            x.list = true;
            x.line = line;
            x.col = col;
            stack.push_back(x);
            adv();
        } else if (c == ')') {
            if (stack.empty()) throw ParseError("unexpected ')'", line, col);
            adv();
            Sx x = std::move(stack.back());
            stack.pop_back();
            (stack.empty() ? top : stack.back().items).push_back(std::move(x));
        } else {
            Sx x;
            x.line = line;
            x.col = col;
            if (c == '|') {
                adv();
                while (i < s.size() && s[i] != '|') {
                    x.atom += s[i];
                    adv();
                }
                if (i >= s.size()) throw ParseError("unterminated quoted symbol", x.line, x.col);
                adv();
            } else if (c == '"') {
                adv();
                while (i < s.size() && s[i] != '"') {
                    x.atom += s[i];
                    adv();
                }
                if (i >= s.size()) throw ParseError("unterminated string", x.line, x.col);
                adv();
            } else {
                while (i < s.size() && !isspace((unsigned char)s[i]) && s[i] != '(' && s[i] != ')' && s[i] != ';') {
                    x.atom += s[i];
                    adv();
                }
            }
            (stack.empty() ? top : stack.back().items).push_back(std::move(x));
        }
    }
    if (!stack.empty()) throw ParseError("missing ')'", stack.back().line, stack.back().col);
    return top;
}

Expected parse_status(const Sx& x) {
    if (x.is("sat")) return Expected::Sat;
    if (x.is("unsat")) return Expected::Unsat;
    if (x.is("unknown")) return Expected::Unknown;
    fail(x, "bad status");
}

void need(const Sx& x, size_t n, const char* what) {
    if (!x.list || x.items.size() != n) fail(x, std::string(what) + " expects " + std::to_string(n - 1) + " arguments");
}

// Native dialect.

class Native {
public:
    Var lookup(const Sx& x) const {
        if (x.list) fail(x, "expected a variable");
        if (x.atom == "nil") return nil_var();
        auto it = vars_.find(x.atom);
        if (it == vars_.end()) fail(x, "undeclared variable " + x.atom);
        return it->second;
    }

    void declare(const Sx& x) {
        need(x, 3, "decl-var");
        const Sx& name = x.items[1];
        const Sx& s = x.items[2];
        if (name.list || name.atom == "nil") fail(name, "bad variable name");
        Sort sort;
        if (s.is("S"))
            sort = Sort::S;
        else if (s.is("D"))
            sort = Sort::D;
        else if (s.is("N"))
            sort = Sort::N;
        else
            fail(s, "unknown sort");
        auto it = vars_.find(name.atom);
        if (it != vars_.end() && it->second.sort != sort) fail(name, "variable " + name.atom + " redeclared with another sort");
        vars_[name.atom] = var(name.atom, sort);
    }

    Formula formula(const Sx& x) const {
        if (!x.list || x.items.empty()) fail(x, "expected a formula");
        const std::string& h = x.head();
        auto args = [&](size_t n) {
            need(x, n + 1, h.c_str());
            std::vector<Var> out;
            for (size_t i = 1; i <= n; i++) out.push_back(lookup(x.items[i]));
            return out;
        };
        if (h == "=") {
            auto a = args(2);
            return eq(a[0], a[1]);
        }
        if (h == "distinct") {
            auto a = args(2);
            return neq(a[0], a[1]);
        }
        if (h == "sls") {
            auto a = args(2);
            return sls(a[0], a[1]);
        }
        if (h == "dls") {
            auto a = args(4);
            return dls(a[0], a[1], a[2], a[3]);
        }
        if (h == "nls") {
            auto a = args(3);
            return nls(a[0], a[1], a[2]);
        }
        if (h == "pto") {
            need(x, 3, "pto");
            Var root = lookup(x.items[1]);
            const Sx& rec = x.items[2];
            const std::string& c = rec.head();
            auto field_args = [&](size_t n) {
                need(rec, n + 1, c.c_str());
                std::vector<Var> out;
                for (size_t i = 1; i <= n; i++) out.push_back(lookup(rec.items[i]));
                return out;
            };
            if (c == "c_sls") return pto(root, {{Field::n, field_args(1)[0]}});
            if (c == "c_dls") {
                auto a = field_args(2);
                return pto(root, {{Field::n, a[0]}, {Field::p, a[1]}});
            }
            if (c == "c_nls") {
                auto a = field_args(2);
                return pto(root, {{Field::n, a[0]}, {Field::t, a[1]}});
            }
            fail(rec, "unknown record constructor");
        }
        if (h == "gneg") {
            need(x, 3, "gneg");
            return gneg(formula(x.items[1]), formula(x.items[2]));
        }
        if (h == "sep" || h == "and" || h == "or") {
            if (x.items.size() < 2) fail(x, h + " needs operands");
            Formula acc = formula(x.items[1]);
            for (size_t i = 2; i < x.items.size(); i++) {
                Formula b = formula(x.items[i]);
                acc = h == "sep" ? star(acc, b) : h == "and" ? conj(acc, b) : disj(acc, b);
            }
            return acc;
        }
        fail(x, "unknown formula head '" + h + "'");
    }

private:
    std::map<std::string, Var> vars_;
};

void checked(const Formula& f, const Sx& at) {
    try {
        check_sorts(f);
    } catch (const SortError& e) {
        throw ParseError(e.what(), at.line, at.col);
    }
}

}  // namespace

Query parse_native(const std::string& text) {
    Query q;
    Native p;
    bool have = false;
    for (auto& cmd : read_all(text)) {
        const std::string& h = cmd.head();
        if (h == "decl-var") {
            p.declare(cmd);
        } else if (h == "set-info") {
            if (cmd.items.size() == 3 && cmd.items[1].is(":status")) q.expected = parse_status(cmd.items[2]);
        } else if (h == "assert" || h == "entails") {
            if (have) fail(cmd, "more than one query");
            have = true;
            if (h == "assert") {
                need(cmd, 2, "assert");
                q.formula = p.formula(cmd.items[1]);
                checked(q.formula, cmd.items[1]);
            } else {
                need(cmd, 3, "entails");
                q.mode = Query::Mode::Entailment;
                q.lhs = p.formula(cmd.items[1]);
                q.rhs = p.formula(cmd.items[2]);
                checked(q.lhs, cmd.items[1]);
                checked(q.rhs, cmd.items[2]);
            }
        } else if (h == "check-sat") {
        } else {
            fail(cmd, "unknown command '" + h + "'");
        }
    }
    if (!have) throw ParseError("no assert or entails", 1, 1);
    return q;
}

namespace {

// SL-COMP subset: one location sort, one single-field record, list segments.
class SlComp {
public:
    void command(const Sx& c) {
        const std::string& h = c.head();
        if (h == "set-logic" || h == "check-sat" || h == "exit" || h == "get-model" || h == "declare-heap")
            return;
        if (h == "set-info") {
            if (c.items.size() == 3 && c.items[1].is(":status")) expected = parse_status(c.items[2]);
            return;
        }
        if (h == "declare-sort") {
            need(c, 3, "declare-sort");
            if (!loc_sort_.empty() && loc_sort_ != c.items[1].atom)
                throw UnsupportedFeature("more than one location sort");
            loc_sort_ = c.items[1].atom;
            return;
        }
        if (h == "declare-datatypes") {
            record(c);
            return;
        }
        if (h == "define-fun-rec" || h == "define-funs-rec") {
            predicate(c);
            return;
        }
        if (h == "declare-const" || h == "declare-fun") {
            const Sx& name = c.items.at(1);
            const Sx& sort = c.items.back();
            if (h == "declare-fun" && (c.items.size() != 4 || !c.items[2].list || !c.items[2].items.empty()))
                throw UnsupportedFeature("function symbols");
            if (sort.list || sort.atom != loc_sort_) throw UnsupportedFeature("data constraints (non-location constant " + name.atom + ")");
            vars_[name.atom] = var(name.atom, Sort::S);
            return;
        }
        if (h == "assert") {
            need(c, 2, "assert");
            asserts.push_back(c.items[1]);
            return;
        }
        throw UnsupportedFeature("command " + h);
    }

    Formula formula(const Sx& x) const {
        if (!x.list) {
            if (x.atom == "emp") return eq(nil_var(), nil_var());
            if (x.atom == "true" || x.atom == "false") throw UnsupportedFeature("boolean constant " + x.atom);
            fail(x, "expected a formula");
        }
        const std::string& h = x.head();
        if (h == "_" && x.items.size() >= 2 && x.items[1].is("emp")) return eq(nil_var(), nil_var());
        if (h == "wand") throw UnsupportedFeature("magic wand");
        if (h == "exists" || h == "forall") throw UnsupportedFeature("quantifiers");
        if (h == "=" || h == "distinct") {
            if (x.items.size() < 3) fail(x, h + " needs two operands");
            std::vector<Var> vs;
            for (size_t i = 1; i < x.items.size(); i++) vs.push_back(lookup(x.items[i]));
            Formula acc;
            for (size_t i = 0; i < vs.size(); i++)
                for (size_t j = i + 1; j < vs.size(); j++) {
                    if (h == "=" && j != i + 1) continue;
                    Formula a = h == "=" ? eq(vs[i], vs[j]) : neq(vs[i], vs[j]);
                    acc = acc ? conj(acc, a) : a;
                }
            return acc;
        }
        if (h == "pto") {
            need(x, 3, "pto");
            const Sx& rec = x.items[2];
            if (!rec.list || rec.head() != record_ || rec.items.size() != 2)
                throw UnsupportedFeature("points-to with an unsupported record");
            return pto_s(lookup(x.items[1]), lookup(rec.items[1]));
        }
        if (preds_.count(h)) {
            need(x, 3, h.c_str());
            return sls(lookup(x.items[1]), lookup(x.items[2]));
        }
        if (h == "sep" || h == "and" || h == "or") {
            if (x.items.size() < 2) fail(x, h + " needs operands");
            Formula acc = formula(x.items[1]);
            for (size_t i = 2; i < x.items.size(); i++) {
                Formula b = formula(x.items[i]);
                acc = h == "sep" ? star(acc, b) : h == "and" ? conj(acc, b) : disj(acc, b);
            }
            return acc;
        }
        if (h == "not") throw UnsupportedFeature("negation outside the entailment goal");
        throw UnsupportedFeature("symbol " + h);
    }

    Var lookup(const Sx& x) const {
        if (x.list) {
            // (as nil T)
            if (x.head() == "as" && x.items.size() == 3 && x.items[1].is("nil")) return nil_var();
            fail(x, "expected a variable");
        }
        if (x.atom == "nil") return nil_var();
        auto it = vars_.find(x.atom);
        if (it == vars_.end()) fail(x, "undeclared variable " + x.atom);
        return it->second;
    }

    Expected expected = Expected::Absent;
    std::vector<Sx> asserts;

private:
    void record(const Sx& c) {
        // (declare-datatypes ((R 0)) (((cons (f Loc)))))
        need(c, 3, "declare-datatypes");
        const Sx& defs = c.items[2];
        if (!defs.list || defs.items.size() != 1) throw UnsupportedFeature("several datatypes");
        const Sx& ctors = defs.items[0];
        if (!ctors.list || ctors.items.size() != 1) throw UnsupportedFeature("several record constructors");
        const Sx& ctor = ctors.items[0];
        if (!ctor.list || ctor.items.size() != 2) throw UnsupportedFeature("records with other than one field");
        const Sx& field = ctor.items[1];
        if (!field.list || field.items.size() != 2 || field.items[1].atom != loc_sort_)
            throw UnsupportedFeature("data fields");
        record_ = ctor.items[0].atom;
    }

    void predicate(const Sx& c) {
        // Only the list-segment predicate of the benchmark family is known.
        if (c.head() == "define-funs-rec") throw UnsupportedFeature("mutually recursive predicates");
        const Sx& name = c.items.at(1);
        const Sx& params = c.items.at(2);
        bool ok = (name.atom == "ls" || name.atom == "lseg" || name.atom == "ls_Sll_t") && params.list &&
                  params.items.size() == 2;
        for (auto& p : params.items)
            if (!p.list || p.items.size() != 2 || p.items[1].atom != loc_sort_) ok = false;
        if (!ok) throw UnsupportedFeature("user-defined predicate " + name.atom);
        preds_.insert({name.atom, true});
    }

    std::string loc_sort_, record_;
    std::map<std::string, Var> vars_;
    std::map<std::string, bool> preds_;
};

}  // namespace

Query parse_slcomp(const std::string& text) {
    SlComp p;
    for (auto& cmd : read_all(text)) p.command(cmd);
    Query q;
    q.expected = p.expected;
    if (p.asserts.size() == 1) {
        q.formula = p.formula(p.asserts[0]);
        checked(q.formula, p.asserts[0]);
    } else if (p.asserts.size() == 2 && p.asserts[1].head() == "not" && p.asserts[1].items.size() == 2) {
        q.mode = Query::Mode::Entailment;
        q.lhs = p.formula(p.asserts[0]);
        q.rhs = p.formula(p.asserts[1].items[1]);
        checked(q.lhs, p.asserts[0]);
        checked(q.rhs, p.asserts[1]);
    } else {
        throw UnsupportedFeature("assertion shape (expected one formula, or a formula and a negated goal)");
    }
    return q;
}

Query parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    bool sl = path.size() >= 5 && path.substr(path.size() - 5) == ".smt2";
    Query q = sl ? parse_slcomp(ss.str()) : parse_native(ss.str());
    q.source_name = path;
    return q;
}

std::string print_native(const Query& q) {
    std::ostringstream os;
    std::set<Var> vs;
    if (q.mode == Query::Mode::Sat) {
        vs = vars(q.formula);
    } else {
        vs = vars(q.lhs);
        for (auto& v : vars(q.rhs)) vs.insert(v);
    }
    for (auto& v : vs)
        if (!v.is_nil()) os << "(decl-var " << v.name << " " << sort_name(*v.sort) << ")\n";
    if (q.expected != Expected::Absent) os << "(set-info :status " << expected_name(q.expected) << ")\n";
    if (q.mode == Query::Mode::Sat)
        os << "(assert " << to_string(q.formula) << ")\n";
    else
        os << "(entails " << to_string(q.lhs) << "\n         " << to_string(q.rhs) << ")\n";
    return os.str();
}

}  // namespace bsl
