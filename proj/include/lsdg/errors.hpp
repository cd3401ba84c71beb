#pragma once

#include <stdexcept>
#include <string>

namespace lsdg {

/// Base class for all domain errors raised by the solver library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// A parameter violates its required sign (R1 < 0, P2 < 0, C < 0, T > 0).
class SignViolation : public Error {
public:
    explicit SignViolation(std::string field)
        : Error("sign violation: " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// B = 0 or Q = 0: the impulse/control coupling degenerates and the game is rejected.
class ZeroCoefficient : public Error {
public:
    explicit ZeroCoefficient(std::string field)
        : Error("zero coefficient: " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// The simulated state left the finite floating-point range.
class NonFiniteState : public Error {
public:
    explicit NonFiniteState(double t)
        : Error("state became non-finite at t = " + std::to_string(t)), t_(t) {}
    double time() const { return t_; }

private:
    double t_;
};

/// A trajectory segment carries too few samples for composite Simpson quadrature.
class GridTooCoarse : public Error {
public:
    explicit GridTooCoarse(const std::string& detail) : Error("grid too coarse: " + detail) {}
};

/// An equilibrium instant or regime margin sits within tolerance of a boundary,
/// so the strict-inequality classification is ambiguous.
class BoundaryDegenerate : public Error {
public:
    explicit BoundaryDegenerate(const std::string& detail)
        : Error("boundary degenerate: " + detail) {}
};

/// The inequality-based regime and the direct root-interiority test disagree.
/// This indicates an implementation bug, not a property of the parameters.
class InconsistentClassification : public Error {
public:
    explicit InconsistentClassification(const std::string& detail)
        : Error("inconsistent classification: " + detail) {}
};

/// Malformed configuration or input document.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& detail) : Error("config error: " + detail) {}
};

}  // namespace lsdg
