#pragma once

#include <complex>
#include <functional>
#include <limits>

namespace ochaus {

/// Numerical knobs shared by every integral and grid search in the library.
struct QuadConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double truncation_x = 12.0;       ///< spatial cutoff
    double truncation_lambda = 40.0;  ///< spectral cutoff
    double truncation_t = 1e4;        ///< kernel-variable cutoff
    double lambda_min = 1e-6;         ///< excision radius around lambda = 0
    int extremum_grid = 2048;

    /// Throws DomainError when a field is out of range.
    void validate() const;

    friend bool operator==(const QuadConfig&, const QuadConfig&) = default;
};

template <class T>
struct IntegralResult {
    T value{};
    double err_estimate = 0.0;
    int subdivisions_used = 0;
    /// Set by the semi-infinite routines when the dyadic tail blocks do not shrink.
    bool divergent = false;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive Gauss-Kronrod (7/15) on (a, b). Nodes never touch the endpoints,
/// so integrable power singularities at a or b are fine. A node value of
/// +inf, or an end segment whose integral fails to shrink over 12 successive
/// halvings, marks the result divergent (value +inf) instead of throwing.
/// Throws QuadratureBudgetError when max_subdivisions is exhausted.
IntegralResult<double> integrate_finite(const RealIntegrand& f, double a, double b, const QuadConfig& cfg);
IntegralResult<std::complex<double>> integrate_finite(const ComplexIntegrand& f, double a, double b,
                                                      const QuadConfig& cfg);

/// Integral over (a, cutoff) after the substitution t = a + e^s - 1.
/// The last four dyadic blocks below the cutoff are integrated separately:
/// if they fail to shrink by a factor 1.05 the result is flagged divergent,
/// otherwise a geometric tail estimate is added to err_estimate.
/// A non-positive cutoff means cfg.truncation_t.
IntegralResult<double> integrate_to_infinity(const RealIntegrand& f, double a, const QuadConfig& cfg,
                                             double cutoff = 0.0);
IntegralResult<std::complex<double>> integrate_to_infinity(const ComplexIntegrand& f, double a,
                                                           const QuadConfig& cfg, double cutoff = 0.0);

/// Whole-line integral, split at 0 into two semi-infinite pieces.
/// With excise_radius > 0 the window (-r, r) is left out and
/// 2r * max(|f(r)|, |f(-r)|) is added to the error estimate.
/// A non-positive cutoff means cfg.truncation_x.
IntegralResult<double> integrate_real_line(const RealIntegrand& f, const QuadConfig& cfg, double cutoff = 0.0,
                                           double excise_radius = 0.0);
IntegralResult<std::complex<double>> integrate_real_line(const ComplexIntegrand& f, const QuadConfig& cfg,
                                                         double cutoff = 0.0, double excise_radius = 0.0);

/// Integral over (lo, hi) where either end may be infinite; infinite ends are
/// cut at `cutoff` (absolute coordinate) via integrate_to_infinity.
IntegralResult<double> integrate_interval(const RealIntegrand& f, double lo, double hi, const QuadConfig& cfg,
                                          double cutoff);
IntegralResult<std::complex<double>> integrate_interval(const ComplexIntegrand& f, double lo, double hi,
                                                        const QuadConfig& cfg, double cutoff);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ochaus
