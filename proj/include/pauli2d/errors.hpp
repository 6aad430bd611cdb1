#ifndef PAULI2D_ERRORS_HPP
#define PAULI2D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pauli2d {

// Base for everything this library throws beyond std::domain_error /
// std::invalid_argument, so callers can catch the whole family at once.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A quadrature or iterative solve did not reach its tolerance. Carries the
// best value/residual reached so callers can decide whether to accept it.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double best_residual)
        : Error(msg + " (best residual " + std::to_string(best_residual) + ")"),
          best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }
private:
    double best_residual_;
};

// An input violated a documented contract (non-symmetric matrix, mismatched
// dimensions, complex data where real is required, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

// Field not integrable / integral fails to converge.
class IntegrabilityError : public Error {
public:
    using Error::Error;
};

// Integral provably divergent (e.g. int A^2 with nonzero flux).
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Potential family fails the weighted-L1 / L^{1+delta} regularity needed by
// the weak-coupling expansion.
class RegularityError : public Error {
public:
    using Error::Error;
};

// A grid was too coarse or too small for the requested evaluation.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// A value left the representable floating-point range.
class RangeError : public Error {
public:
    RangeError(const std::string& msg, double value) : Error(msg), value_(value) {}
    double value() const { return value_; }
private:
    double value_ = 0.0;
};

// Operation applied to the wrong profile kind (e.g. radial-only op on a
// sampled planar field).
class KindMismatchError : public Error {
public:
    using Error::Error;
};

// Flux precondition violated (e.g. conjugate zero mode with F != 0).
class FluxError : public Error {
public:
    using Error::Error;
};

// Parameter outside the regime where the underlying estimate is valid
// (e.g. kappa*R >= 1 in the tail bound).
class RegimeError : public Error {
public:
    using Error::Error;
};

// Requested evaluation outside the region where a grid quantity is known.
class ExtrapolationError : public Error {
public:
    using Error::Error;
};

// Scenario config rejected by schema validation.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace pauli2d

#endif
