#include "slspec/errors.hpp"

namespace slspec {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::OverflowError: return "OverflowError";
        case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::MultipleRootSuspect: return "MultipleRootSuspect";
        case ErrorKind::SignError: return "SignError";
        case ErrorKind::ContourThroughRoot: return "ContourThroughRoot";
        case ErrorKind::PositivityError: return "PositivityError";
        case ErrorKind::InterlacingViolation: return "InterlacingViolation";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NoBracket: return "NoBracket";
        case ErrorKind::DomainError: return "DomainError";
    }
    return "Unknown";
}

SolverError::SolverError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw SolverError(kind, what); }

}  // namespace slspec
