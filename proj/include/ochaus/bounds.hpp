#pragma once

#include <vector>

#include <json.hpp>

#include "ochaus/function_spec.hpp"
#include "ochaus/kernel.hpp"
#include "ochaus/quad.hpp"
#include "ochaus/specfun.hpp"

namespace ochaus {

/// value is +inf exactly when divergence was detected.
struct NormResult {
    double value = 0.0;
    double err_estimate = 0.0;
    nlohmann::json detail;
};

/// int_I A(x) dx.
double interval_measure(const JacobiParams& p, const Interval& I, const QuadConfig& cfg);

/// (int_domain |f|^p A dx)^{1/p}.
NormResult lp_norm(const FunctionSpec& f, double p_exp, const JacobiParams& params, const Interval& domain,
                   const QuadConfig& cfg);

/// (int_domain |H f|^q A dx)^{1/q}; the extremal families stay exact out to their 1e300 tail.
NormResult hausdorff_lp_norm(const KernelSpec& k, const FunctionSpec& f, double q_exp, const JacobiParams& params,
                             const Interval& domain, const QuadConfig& cfg);

/// sup over eps in (0, p-1) of eps^{1/(p-eps)} (A(I)^{-1} int_I |f|^{p-eps} A)^{1/(p-eps)}.
/// Geometric grid of `grid` points, endpoint refinement towards p-1, golden-section
/// polish around the best point. detail = {"eps": [...], "values": [...], "argmax": e}.
NormResult grand_norm(const FunctionSpec& f, double p_exp, const JacobiParams& params, const Interval& I,
                      const QuadConfig& cfg, int grid = 64);
/// Same norm of H f; H f is evaluated once per x and shared across eps.
NormResult hausdorff_grand_norm(const KernelSpec& k, const FunctionSpec& f, double p_exp, const JacobiParams& params,
                                const Interval& I, const QuadConfig& cfg, int grid = 64);

struct SupInf {
    NormResult sup;
    NormResult inf;
};

/// int (phi(t)/t) t^{1/p} (sup|inf_u A(u)/A(tu))^{1-1/p} dt over the kernel support.
SupInf a_constants(const KernelSpec& k, double p_exp, const JacobiParams& params, const QuadConfig& cfg);

/// eps^eps int_0^{1/eps} (phi(t)/t) t^{1/p+eps} (inf_u A(u)/A(tu))^{1-1/p} dt,
/// the value ||H f_eps||_p / ||f_eps||_p is shown to reach.
NormResult eps_witness_bound(const KernelSpec& k, double p_exp, double eps, const JacobiParams& params,
                             const QuadConfig& cfg);

/// max over the t_grid points inside supp phi of sup_u / inf_u of A(u)/A(tu);
/// +inf when some inf is 0 or some sup is infinite.
double ratio_spread(const KernelSpec& k, const JacobiParams& params, const std::vector<double>& t_grid,
                    const QuadConfig& cfg);

/// int_1^inf (phi(t)/t) t^{1/p} dt. DomainError unless supp phi is inside [1, inf).
NormResult e_constant(const KernelSpec& k, double p_exp, const QuadConfig& cfg);

/// (int phi(t)^p (sup|inf_u A(u)/A(tu))^{p-1} dt)^{1/p}, 0 < p < 1.
SupInf b_constants(const KernelSpec& k, double p_exp, const JacobiParams& params, const QuadConfig& cfg);

/// int (phi(t)/t) t^{1/q} (int_R (A(u)^{q-q/p} / A(tu)^{q-1})^{p/(p-q)} du)^{(p-q)/(pq)} dt, 1 < q < p.
NormResult lp_lq_constant(const KernelSpec& k, double p_exp, double q_exp, const JacobiParams& params,
                          const QuadConfig& cfg);
/// The inner u-integral over the whole line at fixed t (+inf when it diverges).
NormResult lp_lq_inner(double t, double p_exp, double q_exp, const JacobiParams& params, const QuadConfig& cfg);

/// A(1)^2 (p-1) inf_{0<s<p-1} s^{-1/(p-s)} E(phi, p-s), grid of `grid` points plus a
/// golden-section step. Throws NonConvergenceError when E is infinite at every grid point.
NormResult grand_bound_constant(const KernelSpec& k, double p_exp, const JacobiParams& params, const QuadConfig& cfg,
                                int grid = 64);

enum class ExtremalKind { eps, delta, zero };

/// f_eps (value = eps), f_delta (value = delta) or f_0 (value ignored).
FunctionSpec extremal_function(ExtremalKind kind, double p_exp, double value, const JacobiParams& params);

struct PowerLemma {
    double lhs = 0.0;  ///< (int_a^b h)^s
    double rhs = 0.0;  ///< s int_a^b h(t)^s (t-a)^{s-1} dt
};

/// h given by samples on [xs.front(), xs.back()]; ys must be non-negative and
/// non-increasing (DomainError otherwise).
PowerLemma power_lemma_check(const std::vector<double>& xs, const std::vector<double>& ys, Interp rule, double s,
                             const QuadConfig& cfg);

/// n points geometric between lo and hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int n);

/// True iff t -> phi(t)/t f(x/t) A(x/t)/A(x) is non-increasing on t_grid up to 1e-12 * max|.|.
bool mphi_check(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& params, double x,
                const std::vector<double>& t_grid);

}  // namespace ochaus
