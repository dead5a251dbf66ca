#include "ochaus/hausdorff.hpp"

#include <algorithm>
#include <cmath>

#include "ochaus/errors.hpp"
#include "ochaus/octransform.hpp"

namespace ochaus {

namespace {

// 0 * inf = 0 for interval endpoints
double ext_mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

template <class T>
void accumulate(IntegralResult<T>& acc, const IntegralResult<T>& r) {
    acc.value += r.value;
    acc.err_estimate += r.err_estimate;
    acc.subdivisions_used += r.subdivisions_used;
    acc.divergent = acc.divergent || r.divergent;
}

// Integrate g over (lo, hi) split at the kernel's breakpoints.
template <class T>
IntegralResult<T> over_kernel_pieces(const std::function<T(double)>& g, const KernelSpec& k, double lo, double hi,
                                     const QuadConfig& cfg, double cutoff) {
    std::vector<double> cuts{lo};
    for (double b : k.breakpoints()) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    IntegralResult<T> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        accumulate(out, integrate_interval(g, cuts[i], cuts[i + 1], cfg, cutoff));
        if (out.divergent) break;
    }
    if (out.divergent) {
        out.value = T(kInf);
        out.err_estimate = kInf;
    }
    return out;
}

// J(x) = int phi(t)/t g(x/t) (A(x/t)/A(x))^{1-c} dt for x > 0, f = g A^{-c};
// then H f(x) = A(x)^{-c} J(x). Past the support of g the ratio underflows, so
// the powers of A are taken against A(min(x, b)) and the rest goes to log_scale.
ScaledIntegral reduced_positive(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p, double x,
                                const QuadConfig& cfg) {
    ScaledIntegral out;
    if (f.is_zero()) return out;
    const Interval s = f.support();
    const double a = std::max(s.lo, 0.0);
    const double b = std::min(s.hi, f.tail_cutoff(cfg));
    if (!(b > a)) return out;
    const Interval ks = k.support();
    const double lo = std::max(x / b, ks.lo);
    const double hi = std::min(a > 0.0 ? x / a : kInf, ks.hi);
    if (!(hi > lo)) return out;
    const double c = f.weight_exponent(p);
    const double ref = std::min(x, b);
    out.log_scale = (1.0 - c) * log_weight_ratio(p, ref, x);
    // abs_tol is meant for H f and for H f A, not for the scaled J
    const double la = log_weight_a(p, x);
    QuadConfig rc = cfg;
    rc.abs_tol = std::max(cfg.abs_tol * std::exp(c * la - std::max(la, 0.0) - out.log_scale), 1e-300);
    const RealIntegrand g = [&](double t) {
        const double phi = k(t);
        if (phi == 0.0) return 0.0;
        const double u = x / t;
        // phi / t goes into the exponent: it can underflow where the ratio overflows
        return f.reduced(u, (1.0 - c) * log_weight_ratio(p, u, ref) + std::log(phi) - std::log(t), p);
    };
    // t cut where u = x/t drops below b / truncation_t, not at a fixed t
    out.value = over_kernel_pieces(g, k, lo, hi, rc, cfg.truncation_t * std::max(1.0, x / b));
    return out;
}

// multiply value and error by exp(log_factor)
IntegralResult<double> rescale(IntegralResult<double> r, double log_factor) {
    if (r.divergent || r.value == 0.0) return r;
    const double m = std::exp(log_factor);
    r.value *= m;
    r.err_estimate *= m;
    return r;
}

}  // namespace

ScaledIntegral hausdorff_apply_reduced(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p, double x,
                                       const QuadConfig& cfg) {
    if (x == 0.0) throw DomainError("hausdorff_apply: x = 0 is singular (A(0) = 0)");
    return x > 0.0 ? reduced_positive(k, f, p, x, cfg) : reduced_positive(k, f.reflected(), p, -x, cfg);
}

IntegralResult<double> hausdorff_apply_detailed(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                                double x, const QuadConfig& cfg) {
    const double c = f.weight_exponent(p);
    const auto j = hausdorff_apply_reduced(k, f, p, x, cfg);
    return rescale(j.value, j.log_scale - c * log_weight_a(p, x));
}

double hausdorff_apply(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p, double x,
                       const QuadConfig& cfg) {
    return hausdorff_apply_detailed(k, f, p, x, cfg).value;
}

IntegralResult<double> hausdorff_apply_weighted(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                                double x, const QuadConfig& cfg) {
    if (x == 0.0) return {};
    const double c = f.weight_exponent(p);
    const auto j = hausdorff_apply_reduced(k, f, p, x, cfg);
    return rescale(j.value, j.log_scale + (1.0 - c) * log_weight_a(p, x));
}

Interval hausdorff_support(const KernelSpec& k, const FunctionSpec& f) {
    const Interval s = f.support();
    const Interval ks = k.support();
    if (s.empty() || f.is_zero()) return {0.0, 0.0};
    double lo = kInf;
    double hi = -kInf;
    if (s.hi > 0.0) {
        lo = std::min(lo, ext_mul(std::max(s.lo, 0.0), ks.lo));
        hi = std::max(hi, ext_mul(s.hi, ks.hi));
    }
    if (s.lo < 0.0) {
        lo = std::min(lo, ext_mul(s.lo, ks.hi));
        hi = std::max(hi, ext_mul(std::min(s.hi, 0.0), ks.lo));
    }
    return {lo, hi};
}

IntegralResult<double> named_operator_form(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                           double x, const QuadConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("named_operator_form: needs x > 0");
    const double log_ax = log_weight_a(p, x);
    const Interval s = intersect(f.support(), {0.0, kInf});
    const double cut = f.tail_cutoff(cfg);

    // int over (lo, hi) ∩ supp f of w(u) f(u) A(u)/A(x) du
    auto piece = [&](double lo, double hi, auto weight) {
        const Interval r = intersect(s, {lo, hi});
        IntegralResult<double> out;
        if (r.empty() || f.is_zero()) return out;
        const RealIntegrand g = [&](double u) {
            const double v = f.scaled(u, log_weight_a(p, u) - log_ax);
            return v == 0.0 ? 0.0 : weight(u) * v;
        };
        out = integrate_interval(g, r.lo, r.hi, cfg, cut);
        if (out.divergent) out.value = kInf;
        return out;
    };
    auto lower = [&] { return piece(0.0, x, [&](double) { return 1.0 / x; }); };
    auto upper = [&] { return piece(x, kInf, [](double u) { return 1.0 / u; }); };

    IntegralResult<double> out;
    const auto& v = k.variant();
    if (std::holds_alternative<KernelSpec::Hardy>(v)) {
        out = lower();
    } else if (std::holds_alternative<KernelSpec::AdjointHardy>(v)) {
        out = upper();
    } else if (std::holds_alternative<KernelSpec::Hlp>(v)) {
        out = lower();
        accumulate(out, upper());
    } else if (const auto* c = std::get_if<KernelSpec::Cesaro>(&v)) {
        const double gm = c->gamma;
        out = piece(x, kInf, [&](double u) { return gm * std::pow(u - x, gm - 1.0) * std::pow(u, -gm); });
    } else if (const auto* r = std::get_if<KernelSpec::RiemannLiouville>(&v)) {
        const double mu = r->mu;
        const double scale = std::exp(-mu * std::log(x) - std::lgamma(mu));
        out = piece(0.0, x, [&](double u) { return scale * std::pow(x - u, mu - 1.0); });
    } else {
        throw DomainError("named_operator_form: no closed form for kernel " + k.label());
    }
    out.value *= k.factor();
    out.err_estimate *= k.factor();
    return out;
}

CommutationResult commutation_residual(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p,
                                       double lambda, const QuadConfig& cfg) {
    if (!k.l1_status(cfg).finite) {
        throw DomainError("commutation_residual: kernel " + k.label() + " is not in L1");
    }
    CommutationResult out;
    if (f.is_zero()) return out;

    const RealIntegrand hf = [&](double x) { return hausdorff_apply_weighted(k, f, p, x, cfg).value; };
    const auto lhs = oc_transform_weighted(hf, hausdorff_support(k, f), p, lambda, cfg);
    out.lhs = lhs.value;
    out.lhs_err = lhs.err_estimate;

    const Interval ks = k.support();
    const ComplexIntegrand g = [&](double t) -> cplx {
        const double phi = k(t);
        if (phi == 0.0) return 0.0;
        return phi * oc_transform(f, p, lambda * t, cfg);
    };
    const auto rhs = over_kernel_pieces(g, k, ks.lo, ks.hi, cfg, cfg.truncation_t);
    out.rhs = rhs.value;
    out.rhs_err = rhs.err_estimate;
    out.abs_gap = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace ochaus
