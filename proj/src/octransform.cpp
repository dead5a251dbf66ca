#include "ochaus/octransform.hpp"

#include <algorithm>
#include <cmath>

#include "ochaus/errors.hpp"

namespace ochaus {

namespace {

template <class T>
void accumulate(IntegralResult<T>& acc, const IntegralResult<T>& r) {
    acc.value += r.value;
    acc.err_estimate += r.err_estimate;
    acc.subdivisions_used += r.subdivisions_used;
    acc.divergent = acc.divergent || r.divergent;
}

// Integrate g over `support`, clipped to [-truncation_x, truncation_x] and split at 0
// (A has a kink there).
template <class T>
IntegralResult<T> over_interval(const std::function<T(double)>& g, const Interval& support, const QuadConfig& cfg) {
    IntegralResult<T> out;
    const Interval s = intersect(support, {-cfg.truncation_x, cfg.truncation_x});
    if (s.empty()) return out;
    const Interval neg = intersect(s, {-kInf, 0.0});
    const Interval pos = intersect(s, {0.0, kInf});
    if (!neg.empty()) accumulate(out, integrate_finite(g, neg.lo, neg.hi, cfg));
    if (!pos.empty()) accumulate(out, integrate_finite(g, pos.lo, pos.hi, cfg));
    return out;
}

template <class T>
IntegralResult<T> over_support(const std::function<T(double)>& g, const FunctionSpec& f, const QuadConfig& cfg) {
    if (f.is_zero()) return {};
    return over_interval(g, f.support(), cfg);
}

// int |f| A 2 phi_0(|x|). |G_l(x)| <= 2 phi_0(|x|) for real l (checked numerically),
// so this bounds |H f| and sets the accuracy scale. The plain L1(A) norm is far
// too coarse once A grows like e^{2 rho x}.
double envelope_norm(const FunctionSpec& f, const JacobiParams& p, const QuadConfig& cfg) {
    const RealIntegrand g = [&](double x) {
        const double v = f.weighted_power(x, 1.0, p);
        return v == 0.0 ? 0.0 : 2.0 * v * jacobi_phi(p, 0.0, std::abs(x)).real();
    };
    return over_support(g, f, cfg).value;
}

QuadConfig transform_config(const FunctionSpec& f, const JacobiParams& p, const QuadConfig& cfg) {
    QuadConfig c = cfg;
    c.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * envelope_norm(f, p, cfg));
    return c;
}

IntegralResult<cplx> transform_with(const FunctionSpec& f, const JacobiParams& p, double lambda,
                                    const QuadConfig& cfg) {
    const ComplexIntegrand g = [&](double x) -> cplx {
        const double fa = f.scaled(x, log_weight_a(p, x));
        if (fa == 0.0) return 0.0;
        return fa * eigenfunction_g(p, lambda, -x);
    };
    return over_support(g, f, cfg);
}

}  // namespace

double spectral_normalization(const JacobiParams& p) { return std::exp2(2.0 * p.rho()); }

IntegralResult<cplx> oc_transform_detailed(const FunctionSpec& f, const JacobiParams& p, double lambda,
                                           const QuadConfig& cfg) {
    return transform_with(f, p, lambda, transform_config(f, p, cfg));
}

cplx oc_transform(const FunctionSpec& f, const JacobiParams& p, double lambda, const QuadConfig& cfg) {
    return oc_transform_detailed(f, p, lambda, cfg).value;
}

IntegralResult<cplx> oc_transform_weighted(const RealIntegrand& fa, const Interval& support, const JacobiParams& p,
                                           double lambda, const QuadConfig& cfg) {
    const ComplexIntegrand g = [&](double x) -> cplx {
        const double v = fa(x);
        if (v == 0.0) return 0.0;
        return v * eigenfunction_g(p, lambda, -x);
    };
    return over_interval(g, support, cfg);
}

IntegralResult<cplx> oc_inverse_detailed(const SpectralFunction& g, const JacobiParams& p, double x,
                                         const QuadConfig& cfg) {
    const double norm = spectral_normalization(p);
    auto integrand = [&](double lambda) -> cplx {
        const cplx gv = g(lambda);
        if (gv == 0.0) return 0.0;
        return gv * eigenfunction_g(p, lambda, x) * plancherel_density(p, lambda, cfg.lambda_min) * norm;
    };
    const ComplexIntegrand both = [&](double l) { return integrand(l) + integrand(-l); };
    IntegralResult<cplx> out;
    if (!(cfg.truncation_lambda > cfg.lambda_min)) return out;
    out = integrate_finite(both, cfg.lambda_min, cfg.truncation_lambda, cfg);
    const double edge = std::max(std::abs(integrand(cfg.lambda_min)), std::abs(integrand(-cfg.lambda_min)));
    out.err_estimate += 2.0 * cfg.lambda_min * edge;
    return out;
}

cplx oc_inverse(const SpectralFunction& g, const JacobiParams& p, double x, const QuadConfig& cfg) {
    return oc_inverse_detailed(g, p, x, cfg).value;
}

CherednikEval apply_jacobi_cherednik_detailed(const ComplexFunction& f, const JacobiParams& p, double x, double h) {
    if (!(h > 0.0)) throw DomainError("apply_jacobi_cherednik: step must be > 0");
    if (!(std::abs(x) >= 10.0 * h)) {
        throw DomainError("apply_jacobi_cherednik: |x| must be >= 10 h (coth is singular at 0)");
    }
    auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    const cplx d1 = central(h);
    const cplx d2 = central(0.5 * h);
    const cplx deriv = (4.0 * d2 - d1) / 3.0;
    const cplx fx = f(x);
    const cplx fm = f(-x);
    const double coef = p.sinh_power() / std::tanh(x) + p.cosh_power() * std::tanh(x);
    return {deriv + coef * 0.5 * (fx - fm) - p.rho() * fm, std::abs(d1 - d2)};
}

cplx apply_jacobi_cherednik(const ComplexFunction& f, const JacobiParams& p, double x, double h) {
    return apply_jacobi_cherednik_detailed(f, p, x, h).value;
}

PlancherelResult plancherel_residual(const FunctionSpec& f, const JacobiParams& p, const QuadConfig& cfg) {
    PlancherelResult out;
    if (f.is_zero()) return out;
    const RealIntegrand sq = [&](double x) { return f.weighted_power(x, 2.0, p); };
    out.lhs = over_support(sq, f, cfg).value;

    const FunctionSpec fr = f.reflected();
    const QuadConfig fc = transform_config(f, p, cfg);
    const QuadConfig rc = transform_config(fr, p, cfg);
    const bool even = f.is_even();
    const double norm = spectral_normalization(p);
    // f is real and G_{-l} = conj(G_l), so H(f)(-l) = conj(H(f)(l)) and the
    // integrand at -l is the conjugate of the one at l.
    auto integrand = [&](double lambda) -> cplx {
        const cplx a = transform_with(f, p, lambda, fc).value;
        const cplx b = even ? std::conj(a) : std::conj(transform_with(fr, p, lambda, rc).value);  // H(f~)(-l)
        return a * std::conj(b) * plancherel_density(p, lambda, cfg.lambda_min) * norm;
    };
    const ComplexIntegrand both = [&](double l) { return 2.0 * integrand(l).real(); };
    if (cfg.truncation_lambda > cfg.lambda_min) {
        const auto r = integrate_finite(both, cfg.lambda_min, cfg.truncation_lambda, cfg);
        out.rhs = r.value;
        out.subdivisions = r.subdivisions_used;
        const double edge = std::abs(integrand(cfg.lambda_min));
        out.err_estimate = r.err_estimate + 2.0 * cfg.lambda_min * edge;
    }
    out.rel_gap = out.lhs > 0.0 ? std::abs(out.lhs - out.rhs) / out.lhs : 0.0;
    return out;
}

}  // namespace ochaus
