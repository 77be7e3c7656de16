#ifndef GROMOV_ERRORS_HPP
#define GROMOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gromov {

enum class ErrorKind {
    InvalidArgument,
    ZeroPolynomial,
    ZeroTuple,
    ZeroScale,
    ZeroVector,
    NotCoprime,
    ConstantCurve,
    QuadratureBudgetExceeded,
    NoConvergence,
    NoSolution,
    DepthExceeded,
    ConservationViolated,
    ImageTooLarge,
    NonzeroMean,
    RootHasNoPredecessor,
    ParseError,
    SchemaError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so the command line
/// front end can map it onto an exit code.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for failures of a numerical budget rather than of the input.
    bool is_numerical() const noexcept;

   private:
    ErrorKind kind_;
};

}  // namespace gromov

#endif
