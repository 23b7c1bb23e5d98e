#pragma once

#include <stdexcept>
#include <string>

namespace slspec {

// Failure modes reported by the solvers. The CLI maps these to exit codes.
enum class ErrorKind {
    InvalidInput,
    OverflowError,
    NotAnEigenvalue,
    BracketFailure,
    MultipleRootSuspect,
    SignError,
    ContourThroughRoot,
    PositivityError,
    InterlacingViolation,
    NoConvergence,
    NoBracket,
    DomainError,
};

const char* to_string(ErrorKind kind);

class SolverError : public std::runtime_error {
public:
    SolverError(ErrorKind kind, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace slspec
