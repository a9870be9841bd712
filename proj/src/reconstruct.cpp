#include "bsl/reconstruct.hpp"

namespace bsl {

Model inverse_translate(const SolverVerdict& v, const SmtScript& s, Encoding enc, const Formula& phi) {
    if (v.status != Status::Sat) throw MalformedModel("no model");
    SolverVerdict named = v;
    if (named.model.empty()) label_model(named, s);
    auto value = [&](const std::string& key) {
        auto it = named.model.find(key);
        if (it == named.model.end()) throw MalformedModel("missing value for " + key);
        return it->second;
    };
    auto loc = [&](const std::string& key) {
        int l = decode_loc(value(key), enc, s);
        if (l < 0) throw MalformedModel("bad location " + value(key) + " for " + key);
        return l;
    };

    Model m = empty_model(s.bounds.s, s.bounds.d, s.bounds.n);
    m.stack["nil"] = 0;
    for (auto& x : vars(phi))
        if (!x.is_nil()) m.stack[x.name] = loc(x.name);
    for (int i = 0; i < s.universe(); i++) {
        std::string at = "[" + std::to_string(i) + "]";
        std::string d = value("D" + at);
        if (d != "true") {
            if (d != "false") throw MalformedModel("bad membership " + d);
            continue;
        }
        Record r;
        switch (s.sort_of(i)) {
        case LocSort::Nil: throw MalformedModel("nil allocated");
        case LocSort::S: r.n = loc("h_n" + at); break;
        case LocSort::D:
            r.n = loc("h_n" + at);
            r.p = loc("h_p" + at);
            break;
        case LocSort::N:
            r.n = loc("h_n" + at);
            r.t = loc("h_t" + at);
            break;
        }
        m.heap[i] = r;
    }
    return m;
}

bool verify_model(const Model& m, const Formula& phi) { return evaluate(m, phi); }

}  // namespace bsl
