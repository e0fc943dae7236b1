#pragma once

#include <stdexcept>
#include <string>

namespace gapcert {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

struct ArgumentError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct SymmetryError : Error {
    using Error::Error;
};

// Iterative solver failed to converge; carries the best residual reached.
struct ConvergenceError : Error {
    double best_residual;
    ConvergenceError(const std::string& msg, double resid)
        : Error(msg), best_residual(resid) {}
};

// A kernel/threshold cut fell inside the ambiguity band [0.1 t, 10 t].
struct DegeneracyAmbiguityError : Error {
    double borderline_eigenvalue;
    DegeneracyAmbiguityError(const std::string& msg, double lambda)
        : Error(msg), borderline_eigenvalue(lambda) {}
};

// Prop. 2 hypothesis g_tilde > 2*delta violated.
struct HypothesisError : Error {
    using Error::Error;
};

struct WitnessNotFoundError : Error {
    using Error::Error;
};

struct SplitNotFoundError : Error {
    using Error::Error;
};

// A registered closed form disagreed with the numerics it must reproduce.
struct ModelInconsistencyError : Error {
    using Error::Error;
};

} // namespace gapcert
