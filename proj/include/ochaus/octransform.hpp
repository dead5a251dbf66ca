#pragma once

#include <functional>

#include "ochaus/function_spec.hpp"
#include "ochaus/quad.hpp"
#include "ochaus/specfun.hpp"

namespace ochaus {

using SpectralFunction = std::function<cplx(double)>;
using ComplexFunction = std::function<cplx(double)>;

/// H(f)(lambda) = int f(x) G_lambda(-x) A(x) dx over f's support, cut at truncation_x.
IntegralResult<cplx> oc_transform_detailed(const FunctionSpec& f, const JacobiParams& p, double lambda,
                                           const QuadConfig& cfg);
cplx oc_transform(const FunctionSpec& f, const JacobiParams& p, double lambda, const QuadConfig& cfg);

/// Same transform for a function given already multiplied by A: int fa(x) G_lambda(-x) dx
/// over `support`, cut at truncation_x and split at 0.
IntegralResult<cplx> oc_transform_weighted(const RealIntegrand& fa, const Interval& support, const JacobiParams& p,
                                           double lambda, const QuadConfig& cfg);

/// Constant 4^rho multiplying dsigma in the inverse and Plancherel integrals.
/// plancherel_density is normalised for the weight (2 sinh)^{2a+1} (2 cosh)^{2b+1}
/// = 4^rho A; with A as the spatial measure the spectral side needs the same factor.
double spectral_normalization(const JacobiParams& p);

/// 4^rho int g(lambda) G_lambda(x) dsigma(lambda) over lambda_min < |lambda| < truncation_lambda.
/// The excised window adds lambda_min * max |integrand| to the error.
IntegralResult<cplx> oc_inverse_detailed(const SpectralFunction& g, const JacobiParams& p, double x,
                                         const QuadConfig& cfg);
cplx oc_inverse(const SpectralFunction& g, const JacobiParams& p, double x, const QuadConfig& cfg);

struct CherednikEval {
    cplx value;          ///< Richardson-extrapolated from steps h and h/2
    double step_gap = 0; ///< |D_h - D_{h/2}|, the derivative's step sensitivity
};

/// T f(x) = f'(x) + [(2a+1) coth x + (2b+1) tanh x] (f(x) - f(-x))/2 - rho f(-x),
/// f' by central differences. Throws DomainError for |x| < 10 h.
CherednikEval apply_jacobi_cherednik_detailed(const ComplexFunction& f, const JacobiParams& p, double x,
                                              double h = 1e-4);
cplx apply_jacobi_cherednik(const ComplexFunction& f, const JacobiParams& p, double x, double h = 1e-4);

struct PlancherelResult {
    double lhs = 0.0;  ///< int |f|^2 A dx
    cplx rhs;          ///< 4^rho int H(f)(l) conj(H(f~)(-l)) dsigma(l), f~(x) = f(-x)
    double rel_gap = 0.0;
    double err_estimate = 0.0;  ///< quadrature error of rhs
    int subdivisions = 0;       ///< outer (spectral) subdivisions
};

PlancherelResult plancherel_residual(const FunctionSpec& f, const JacobiParams& p, const QuadConfig& cfg);

}  // namespace ochaus
