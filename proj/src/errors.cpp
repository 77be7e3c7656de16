#include "gromov/errors.hpp"

namespace gromov {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::ZeroTuple: return "ZeroTuple";
        case ErrorKind::ZeroScale: return "ZeroScale";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::ConstantCurve: return "ConstantCurve";
        case ErrorKind::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NoSolution: return "NoSolution";
        case ErrorKind::DepthExceeded: return "DepthExceeded";
        case ErrorKind::ConservationViolated: return "ConservationViolated";
        case ErrorKind::ImageTooLarge: return "ImageTooLarge";
        case ErrorKind::NonzeroMean: return "NonzeroMean";
        case ErrorKind::RootHasNoPredecessor: return "RootHasNoPredecessor";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

bool Error::is_numerical() const noexcept {
    switch (kind_) {
        case ErrorKind::QuadratureBudgetExceeded:
        case ErrorKind::NoConvergence:
        case ErrorKind::NoSolution:
        case ErrorKind::DepthExceeded:
        case ErrorKind::ConservationViolated:
            return true;
        default:
            return false;
    }
}

}  // namespace gromov
