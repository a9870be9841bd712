#pragma once

#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsl/formula.hpp"

namespace bsl {

// Propositional matrix over variables 0..n-1.
struct QNode;
using QMatrix = std::shared_ptr<const QNode>;

struct QNode {
    enum Kind { Var, Not, And, Or } kind = Var;
    int var = 0;
    std::vector<QMatrix> args;
};

namespace q {
QMatrix var(int v);
QMatrix lnot(QMatrix a);
QMatrix land(QMatrix a, QMatrix b);
QMatrix lor(QMatrix a, QMatrix b);
}  // namespace q

struct Quantifier {
    bool forall = false;
    int var = 0;
};

// Closed prenex QBF; every variable is bound exactly once.
struct Qbf {
    int n_vars = 0;
    std::vector<Quantifier> prefix;  // outermost first
    QMatrix matrix;
};

struct TooManyVariables : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string to_string(const Qbf& f);

// Truth value by expansion; refuses more than 12 variables.
bool eval_qbf(const Qbf& f);

// A BSL formula over S-variables q0.. that is satisfiable iff f is true.
Formula reduce_qbf(const Qbf& f);

struct QbfGenConfig {
    int vars = 4;
    int depth = 3;
};

Qbf random_qbf(const QbfGenConfig& cfg, std::mt19937_64& rng);

}  // namespace bsl
