#pragma once

#include "ochaus/function_spec.hpp"
#include "ochaus/kernel.hpp"
#include "ochaus/quad.hpp"
#include "ochaus/specfun.hpp"

namespace ochaus {

/// H f(x) = int phi(t)/t f(x/t) A(x/t)/A(x) dt over the kernel support.
/// For x < 0 the same formula is evaluated through f(-.) at -x (A is even).
/// A divergent integral comes back with value +inf and divergent = true.
/// Throws DomainError at x = 0.
IntegralResult<double> hausdorff_apply_detailed(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                                double x, const QuadConfig& cfg);
double hausdorff_apply(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p, double x,
                       const QuadConfig& cfg);

/// J(x) = value * exp(log_scale), value kept in range even where J itself underflows.
struct ScaledIntegral {
    IntegralResult<double> value;
    double log_scale = 0.0;
};

/// J with H f(x) = A(x)^{-c} J(x), c = f.weight_exponent(p). For the extremal
/// families J carries no power of A, so |H f|^p A = |J|^p stays exact at huge x.
ScaledIntegral hausdorff_apply_reduced(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p, double x,
                                       const QuadConfig& cfg);

/// A(x) * H f(x), finite near x = 0 where H f itself may blow up; 0 at x = 0.
IntegralResult<double> hausdorff_apply_weighted(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                                double x, const QuadConfig& cfg);

/// Interval outside which H f vanishes: supp f times supp phi, split by sign.
/// Returned as the hull of the negative and positive parts.
Interval hausdorff_support(const KernelSpec& k, const FunctionSpec& f);

/// The closed u-integral form of H f(x), x > 0, for the five named kernels:
///   hardy          (1/x) int_0^x f(u) A(u)/A(x) du
///   adjoint_hardy  int_x^inf f(u)/u A(u)/A(x) du
///   hlp            sum of the two
///   cesaro         gamma int_x^inf (u-x)^{gamma-1} u^{-gamma} f(u) A(u)/A(x) du
///   rl             x^{-mu} / Gamma(mu) int_0^x (x-u)^{mu-1} f(u) A(u)/A(x) du
/// Throws DomainError for other kernels or x <= 0.
IntegralResult<double> named_operator_form(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                           double x, const QuadConfig& cfg);

struct CommutationResult {
    cplx lhs;  ///< H(H_phi f)(lambda)
    cplx rhs;  ///< int H(f)(lambda t) phi(t) dt
    double abs_gap = 0.0;
    double lhs_err = 0.0;
    double rhs_err = 0.0;
};

/// Throws DomainError when phi is not in L1.
CommutationResult commutation_residual(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                       double lambda, const QuadConfig& cfg);

}  // namespace ochaus
