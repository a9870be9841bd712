#pragma once

#include <stdexcept>

#include "bsl/backend.hpp"
#include "bsl/oracle.hpp"

namespace bsl {

struct MalformedModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stack from the variable constants, heap on D with records shaped by the
// sort block of each location. Location indices are kept as in the script.
Model inverse_translate(const SolverVerdict& v, const SmtScript& s, Encoding enc, const Formula& phi);

bool verify_model(const Model& m, const Formula& phi);

}  // namespace bsl
