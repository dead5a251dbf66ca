#pragma once

#include <complex>

#include "ochaus/params.hpp"
#include "ochaus/quad.hpp"

namespace ochaus {

using cplx = std::complex<double>;

struct ComplexEval {
    cplx value;
    double abs_err_estimate = 0.0;
    long terms_used = 0;
};

/// log Gamma(z), imaginary part reduced to (-pi, pi] (principal log of Gamma).
/// Throws PoleError within 1e-12 of a non-positive integer.
cplx log_gamma(cplx z);

/// Same value without the branch reduction: the analytic continuation along
/// the shift recurrence. Differences of these are safe to exponentiate.
cplx log_gamma_continuous(cplx z);

/// 1 / Gamma(z), exactly zero at the poles of Gamma.
cplx reciprocal_gamma(cplx z);

/// Digamma psi(z).
cplx digamma(cplx z);

/// Gauss 2F1(a, b; c; z) for real z <= 0.
///  - |z| <= 0.5: power series in z;
///  - otherwise Pfaff: (1-z)^{-a} 2F1(a, c-b; c; w), w = z/(z-1) in [0,1);
///  - when w > 0.75, the Pfaff series is re-expanded around w = 1
///    (Gauss connection, log form when c-a-(c-b) = b-a vanishes).
/// Throws DomainError for z > 0 or c in {0,-1,-2,...}, NonConvergenceError
/// when a series misses tolerance inside the 1e5 term budget.
ComplexEval gauss_2f1(cplx a, cplx b, cplx c, double z);

/// Plain power series, exposed for tests and the |z| < 1 path.
ComplexEval gauss_2f1_series(cplx a, cplx b, cplx c, double z, long max_terms = 100000);

/// Jacobi function phi_lambda^{(alpha,beta)}(x) = 2F1((rho+i l)/2, (rho-i l)/2; alpha+1; -sinh^2 x).
cplx jacobi_phi(const JacobiParams& p, double lambda, double x);

/// Opdam-Cherednik eigenfunction G_lambda(x) via the derivative-free form
/// phi^{a,b} + (rho+i l)/(4(alpha+1)) sinh 2x phi^{a+1,b+1}. G(0) = 1 exactly.
cplx eigenfunction_g(const JacobiParams& p, double lambda, double x);

/// A(x) = sinh|x|^{2a+1} cosh|x|^{2b+1}.
double weight_a(const JacobiParams& p, double x);
/// log A(x), stable for large |x|; -inf at 0.
double log_weight_a(const JacobiParams& p, double x);
/// log(A(u) / A(v)) without forming either logarithm when both are large.
double log_weight_ratio(const JacobiParams& p, double u, double v);

struct RatioExtrema {
    double sup = 0.0;  ///< may be +inf
    double inf = 0.0;  ///< may be 0
    double argsup = 0.0;  ///< u attaining sup; 0 or +inf for endpoint limits
    double arginf = 0.0;
};

/// sup and inf over u > 0 of A(u) / A(t u): log grid on [1e-6, 50] plus the
/// analytic limits t^{-(2a+1)} at u -> 0 and 0 / +inf at u -> +inf.
RatioExtrema weight_ratio_extrema(const JacobiParams& p, double t, const QuadConfig& cfg);

/// Harish-Chandra c-function. Throws PoleError for |lambda| < lambda_min.
cplx c_function(const JacobiParams& p, double lambda, double lambda_min = 1e-6);

/// Density of d sigma w.r.t. d lambda: (1 - rho/(i lambda)) / (8 pi |C(lambda)|^2).
cplx plancherel_density(const JacobiParams& p, double lambda, double lambda_min = 1e-6);

}  // namespace ochaus
