#pragma once

#include <stdexcept>
#include <string>

namespace g2strom {

// Base class for everything this library throws on contract violations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape/precondition violations (mismatched dimensions, zero covector, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Wedge product would exceed the ambient dimension in a pointwise context.
// Always a caller bug, never silently clamped.
class DegreeOverflowError : public DomainError {
public:
    explicit DegreeOverflowError(const std::string& what) : DomainError(what) {}
};

// A candidate 3-form failed the positivity test, so it induces no metric.
class NotPositiveError : public Error {
public:
    explicit NotPositiveError(const std::string& what) : Error(what) {}
};

// (dphi, dstarphi) do not fit the torsion ansatz at the requested tolerance.
class InconsistentTorsionError : public Error {
public:
    InconsistentTorsionError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

// Poisson source with nonzero integral: the equation has no periodic solution.
class ObstructedSourceError : public Error {
public:
    ObstructedSourceError(const std::string& what, double integral_mismatch)
        : Error(what), integral_mismatch(integral_mismatch) {}
    double integral_mismatch;
};

// Instanton data cannot cancel the fiber source term at the given coupling.
class BalanceError : public Error {
public:
    BalanceError(const std::string& what, double required_integral,
                 double achievable_integral)
        : Error(what),
          required_integral(required_integral),
          achievable_integral(achievable_integral) {}
    double required_integral;    // integral of the t^2 |beta|^2 source
    double achievable_integral;  // integral the instanton block can supply
    double mismatch() const { return required_integral - achievable_integral; }
};

// Fiber data violates the scaled-integrality condition required for a dual.
class NotDualizableError : public Error {
public:
    NotDualizableError(const std::string& what, int beta_index)
        : Error(what), beta_index(beta_index) {}
    int beta_index;  // 1-based index of the offending curvature form
};

// A pair of symbol maps fed to the exactness checker does not compose to zero.
class NotAComplexError : public Error {
public:
    NotAComplexError(const std::string& what, double composition_norm)
        : Error(what), composition_norm(composition_norm) {}
    double composition_norm;
};

// Configuration file problems (unknown keys, malformed values).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace g2strom
