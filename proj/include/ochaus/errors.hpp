#pragma once

#include <stdexcept>
#include <string>

namespace ochaus {

/// Argument outside the documented parameter range.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation requested at (or too close to) a pole.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series failed to reach its tolerance inside the term budget.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double partial_abs, long terms)
        : std::runtime_error(what), partial_abs_(partial_abs), terms_(terms) {}
    double partial_abs() const noexcept { return partial_abs_; }
    long terms() const noexcept { return terms_; }

private:
    double partial_abs_;
    long terms_;
};

/// Adaptive quadrature ran out of subdivisions. Carries the partial result.
class QuadratureBudgetError : public std::runtime_error {
public:
    QuadratureBudgetError(const std::string& what, double partial_abs, double err)
        : std::runtime_error(what), partial_abs_(partial_abs), err_(err) {}
    double partial_abs() const noexcept { return partial_abs_; }
    double err_estimate() const noexcept { return err_; }

private:
    double partial_abs_;
    double err_;
};

}  // namespace ochaus
