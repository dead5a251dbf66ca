#include "ochaus/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ochaus/errors.hpp"
#include "ochaus/hausdorff.hpp"

namespace ochaus {

namespace {

// Kernel-variable integrals for the constants run to here; the log substitution
// makes the extra range cheap and the tails of t^{-1-a} kernels are then negligible.
constexpr double kConstantTail = 1e30;
constexpr double kMaxCutoff = 1e300;

void accumulate(IntegralResult<double>& acc, const IntegralResult<double>& r) {
    acc.value += r.value;
    acc.err_estimate += r.err_estimate;
    acc.subdivisions_used += r.subdivisions_used;
    acc.divergent = acc.divergent || r.divergent;
}

IntegralResult<double> finish(IntegralResult<double> r) {
    if (r.divergent || std::isinf(r.value)) {
        r.divergent = true;
        r.value = kInf;
        r.err_estimate = kInf;
    }
    return r;
}

// g over (lo, hi), split at 0 and at `cuts`; infinite ends cut at `cutoff`.
IntegralResult<double> over_range(const RealIntegrand& g, double lo, double hi, const std::vector<double>& cuts,
                                  const QuadConfig& cfg, double cutoff) {
    std::vector<double> pts{lo};
    for (double c : cuts) {
        if (c > lo && c < hi) pts.push_back(c);
    }
    if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
    std::sort(pts.begin(), pts.end());
    pts.push_back(hi);
    IntegralResult<double> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        accumulate(out, integrate_interval(g, pts[i], pts[i + 1], cfg, cutoff));
        if (out.divergent) break;
    }
    return finish(out);
}

IntegralResult<double> over_kernel(const RealIntegrand& g, const KernelSpec& k, const QuadConfig& cfg) {
    const Interval ks = k.support();
    return over_range(g, ks.lo, ks.hi, k.breakpoints(), cfg, kConstantTail);
}

NormResult root(const IntegralResult<double>& r, double p_exp) {
    NormResult out;
    if (r.divergent) {
        out.value = kInf;
        out.err_estimate = kInf;
        return out;
    }
    const double v = std::max(r.value, 0.0);
    out.value = std::pow(v, 1.0 / p_exp);
    // d(v^{1/p}) = v^{1/p} / (p v) dv
    out.err_estimate = v > 0.0 ? out.value * r.err_estimate / (p_exp * v) : std::pow(r.err_estimate, 1.0 / p_exp);
    return out;
}

struct Sample {
    double log_abs = -kInf;  // log |J(x)|
    double log_a = 0.0;      // log A(x)
    double rel_err = 0.0;
    bool divergent = false;
};

// Caches J(x) (H f = A^{-c} J) so repeated exponents reuse the inner integrals.
class HfSampler {
public:
    HfSampler(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& p, const QuadConfig& cfg)
        : k_(k), f_(f), p_(p), cfg_(cfg), c_(f.weight_exponent(p)) {}

    const Sample& at(double x) {
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
        Sample s;
        if (x != 0.0) {
            const auto j = hausdorff_apply_reduced(k_, f_, p_, x, cfg_);
            const auto& r = j.value;
            if (r.divergent || std::isinf(r.value)) {
                s.divergent = true;
            } else if (r.value != 0.0) {
                s.log_abs = std::log(std::abs(r.value)) + j.log_scale;
                s.rel_err = r.err_estimate / std::abs(r.value);
            }
            s.log_a = log_weight_a(p_, x);
        }
        return cache_.emplace(x, s).first->second;
    }

    // |H f(x)|^q A(x) = |J|^q A^{1-cq}
    double power(double x, double q) {
        const Sample& s = at(x);
        if (s.divergent) return kInf;
        if (std::isinf(s.log_abs)) return 0.0;
        return std::exp(q * s.log_abs + (1.0 - c_ * q) * s.log_a);
    }

    // error of |H f|^q A inherited from the inner integral
    double power_err(double x, double q) {
        const Sample& s = at(x);
        return s.divergent ? 0.0 : q * std::min(s.rel_err, 1.0) * power(x, q);
    }

    // Effective support of H f after the cutoffs used by hausdorff_apply.
    Interval support() const {
        const Interval s = f_.support();
        const Interval ks = k_.support();
        const double b = std::min(std::max(std::abs(s.lo), std::abs(s.hi)), f_.tail_cutoff(cfg_));
        const double kh = std::min(ks.hi, cfg_.truncation_t);
        const double reach = std::min(b * kh, kMaxCutoff);
        const Interval hull = hausdorff_support(k_, f_);
        return intersect(hull, {-reach, reach});
    }

private:
    const KernelSpec& k_;
    const FunctionSpec& f_;
    const JacobiParams& p_;
    const QuadConfig& cfg_;
    double c_;
    std::map<double, Sample> cache_;
};

// int_domain |H f|^q A; the inner errors are integrated separately into err_estimate.
IntegralResult<double> hf_power_integral(HfSampler& hs, double q, const Interval& domain, const QuadConfig& cfg) {
    const Interval r = intersect(domain, hs.support());
    if (r.empty()) return {};
    const double cutoff = std::max(std::abs(r.lo), std::abs(r.hi));
    const double lo = r.lo < -100.0 ? -kInf : r.lo;
    const double hi = r.hi > 100.0 ? kInf : r.hi;
    const RealIntegrand g = [&](double x) { return hs.power(x, q); };
    auto out = over_range(g, lo, hi, {}, cfg, std::min(cutoff, kMaxCutoff));
    if (out.divergent || out.value == 0.0) return out;
    QuadConfig loose = cfg;
    loose.rel_tol = 1e-3;
    const RealIntegrand e = [&](double x) { return hs.power_err(x, q); };
    // finite range: a slowly decaying error density is not a divergent integral
    const double c = std::min(cutoff, kMaxCutoff);
    out.err_estimate += over_range(e, std::max(r.lo, -c), std::min(r.hi, c), {}, loose, c).value;
    return out;
}

IntegralResult<double> f_power_integral(const FunctionSpec& f, double q, const JacobiParams& params,
                                        const Interval& domain, const QuadConfig& cfg) {
    if (f.is_zero()) return {};
    const Interval r = intersect(domain, f.support());
    if (r.empty()) return {};
    const RealIntegrand g = [&](double x) { return f.weighted_power(x, q, params); };
    return over_range(g, r.lo, r.hi, {}, cfg, f.tail_cutoff(cfg));
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section search for the minimum of g on [a, b].
Extremum golden_min(const std::function<double(double)>& g, double a, double b, int iters = 60) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double g1 = g(x1), g2 = g(x2);
    for (int i = 0; i < iters && b - a > 1e-15 * std::abs(b); ++i) {
        if (g1 <= g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2);
        }
    }
    return g1 <= g2 ? Extremum{x1, g1} : Extremum{x2, g2};
}

// n geometric points in (0, top): top * 1e-6^{(n-i)/n}; grid(2n) contains grid(n).
std::vector<double> open_grid(double top, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(top * std::pow(1e-6, double(n - i) / n));
    return out;
}

// sup over eps of eps^{1/(p-eps)} (avg(p-eps) / M)^{1/(p-eps)} on the refined grid.
NormResult grand_sup(const std::function<IntegralResult<double>(double)>& integral, double p_exp, double measure,
                     int grid) {
    if (!(p_exp > 1.0)) throw DomainError("grand_norm: p must be > 1");
    if (!(measure > 0.0) || std::isinf(measure)) throw DomainError("grand_norm: A(I) must be finite and positive");
    if (grid < 2) throw DomainError("grand_norm: grid must have at least 2 points");
    const double top = p_exp - 1.0;
    std::vector<double> eps = open_grid(top, grid);
    for (int k = 1; k <= 20; ++k) eps.push_back(top * (1.0 - std::exp2(-k)));
    std::sort(eps.begin(), eps.end());
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

    double worst_err = 0.0;
    bool divergent = false;
    auto value_at = [&](double e) {
        const double q = p_exp - e;
        const auto r = integral(q);
        if (r.divergent) {
            divergent = true;
            return kInf;
        }
        if (!(r.value > 0.0)) return 0.0;
        const double v = std::exp((std::log(e) + std::log(r.value) - std::log(measure)) / q);
        worst_err = std::max(worst_err, v * r.err_estimate / (q * r.value));
        return v;
    };

    std::vector<double> vals;
    std::size_t best = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        vals.push_back(value_at(eps[i]));
        if (vals[i] > vals[best]) best = i;
    }
    NormResult out;
    out.detail["eps"] = eps;
    out.detail["values"] = vals;
    if (divergent) {
        out.value = kInf;
        out.err_estimate = kInf;
        out.detail["argmax"] = nullptr;
        return out;
    }
    double arg = eps[best];
    double v = vals[best];
    if (v > 0.0) {
        const double lo = best > 0 ? eps[best - 1] : 0.5 * eps[0];
        const double hi = best + 1 < eps.size() ? eps[best + 1] : top;
        const auto g = golden_min([&](double e) { return -value_at(e); }, lo, hi);
        if (-g.value > v) {
            v = -g.value;
            arg = g.x;
        }
    }
    out.value = v;
    out.err_estimate = worst_err;
    out.detail["argmax"] = arg;
    return out;
}

}  // namespace

double interval_measure(const JacobiParams& p, const Interval& I, const QuadConfig& cfg) {
    if (!(I.hi > I.lo)) return 0.0;
    const RealIntegrand g = [&](double x) { return weight_a(p, x); };
    const auto r = over_range(g, I.lo, I.hi, {}, cfg, cfg.truncation_x);
    return r.value;
}

NormResult lp_norm(const FunctionSpec& f, double p_exp, const JacobiParams& params, const Interval& domain,
                   const QuadConfig& cfg) {
    if (!(p_exp > 0.0)) throw DomainError("lp_norm: p must be > 0");
    return root(f_power_integral(f, p_exp, params, domain, cfg), p_exp);
}

NormResult hausdorff_lp_norm(const KernelSpec& k, const FunctionSpec& f, double q_exp, const JacobiParams& params,
                             const Interval& domain, const QuadConfig& cfg) {
    if (!(q_exp > 0.0)) throw DomainError("hausdorff_lp_norm: q must be > 0");
    if (f.is_zero()) return {};
    HfSampler hs(k, f, params, cfg);
    return root(hf_power_integral(hs, q_exp, domain, cfg), q_exp);
}

NormResult grand_norm(const FunctionSpec& f, double p_exp, const JacobiParams& params, const Interval& I,
                      const QuadConfig& cfg, int grid) {
    const double m = interval_measure(params, I, cfg);
    if (f.is_zero()) return grand_sup([](double) { return IntegralResult<double>{}; }, p_exp, m, 2);
    return grand_sup([&](double q) { return f_power_integral(f, q, params, I, cfg); }, p_exp, m, grid);
}

NormResult hausdorff_grand_norm(const KernelSpec& k, const FunctionSpec& f, double p_exp, const JacobiParams& params,
                                const Interval& I, const QuadConfig& cfg, int grid) {
    const double m = interval_measure(params, I, cfg);
    if (f.is_zero()) return grand_sup([](double) { return IntegralResult<double>{}; }, p_exp, m, 2);
    HfSampler hs(k, f, params, cfg);
    return grand_sup([&](double q) { return hf_power_integral(hs, q, I, cfg); }, p_exp, m, grid);
}

SupInf a_constants(const KernelSpec& k, double p_exp, const JacobiParams& params, const QuadConfig& cfg) {
    if (!(p_exp > 1.0)) throw DomainError("a_constants: p must be > 1");
    auto run = [&](bool sup) {
        const RealIntegrand g = [&](double t) {
            const double phi = k(t);
            if (phi == 0.0) return 0.0;
            const RatioExtrema e = weight_ratio_extrema(params, t, cfg);
            const double ext = sup ? e.sup : e.inf;
            if (ext == 0.0) return 0.0;
            return phi / t * std::pow(t, 1.0 / p_exp) * std::pow(ext, 1.0 - 1.0 / p_exp);
        };
        return root(over_kernel(g, k, cfg), 1.0);
    };
    return {run(true), run(false)};
}

NormResult eps_witness_bound(const KernelSpec& k, double p_exp, double eps, const JacobiParams& params,
                             const QuadConfig& cfg) {
    if (!(p_exp > 1.0)) throw DomainError("eps_witness_bound: p must be > 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps_witness_bound: eps must be in (0, 1)");
    const Interval ks = intersect(k.support(), {0.0, 1.0 / eps});
    if (ks.empty()) return {};
    const RealIntegrand g = [&](double t) {
        const double phi = k(t);
        if (phi == 0.0) return 0.0;
        const double inf = weight_ratio_extrema(params, t, cfg).inf;
        if (inf == 0.0) return 0.0;
        return phi / t * std::pow(t, 1.0 / p_exp + eps) * std::pow(inf, 1.0 - 1.0 / p_exp);
    };
    NormResult out = root(over_range(g, ks.lo, ks.hi, k.breakpoints(), cfg, kConstantTail), 1.0);
    const double scale = std::pow(eps, eps);
    out.value *= scale;
    out.err_estimate *= scale;
    return out;
}

double ratio_spread(const KernelSpec& k, const JacobiParams& params, const std::vector<double>& t_grid,
                    const QuadConfig& cfg) {
    double out = 1.0;
    for (double t : t_grid) {
        if (k(t) == 0.0) continue;
        const RatioExtrema e = weight_ratio_extrema(params, t, cfg);
        if (e.inf == 0.0 || std::isinf(e.sup)) return kInf;
        out = std::max(out, e.sup / e.inf);
    }
    return out;
}

NormResult e_constant(const KernelSpec& k, double p_exp, const QuadConfig& cfg) {
    if (!(p_exp > 1.0)) throw DomainError("e_constant: p must be > 1");
    if (k.support().lo < 1.0) throw DomainError("e_constant: kernel " + k.label() + " is not supported in [1, inf)");
    const RealIntegrand g = [&](double t) {
        const double phi = k(t);
        return phi == 0.0 ? 0.0 : phi * std::pow(t, 1.0 / p_exp - 1.0);
    };
    return root(over_kernel(g, k, cfg), 1.0);
}

SupInf b_constants(const KernelSpec& k, double p_exp, const JacobiParams& params, const QuadConfig& cfg) {
    if (!(p_exp > 0.0 && p_exp < 1.0)) throw DomainError("b_constants: p must be in (0, 1)");
    auto run = [&](bool sup) {
        const RealIntegrand g = [&](double t) {
            const double phi = k(t);
            if (phi == 0.0) return 0.0;
            const RatioExtrema e = weight_ratio_extrema(params, t, cfg);
            // exponent p - 1 < 0: a zero extremum gives +inf, an infinite one gives 0
            return std::pow(phi, p_exp) * std::pow(sup ? e.sup : e.inf, p_exp - 1.0);
        };
        return root(over_kernel(g, k, cfg), p_exp);
    };
    return {run(true), run(false)};
}

NormResult lp_lq_inner(double t, double p_exp, double q_exp, const JacobiParams& params, const QuadConfig& cfg) {
    if (!(q_exp > 1.0 && p_exp > q_exp)) throw DomainError("lp_lq: needs 1 < q < p");
    if (!(t > 0.0)) throw DomainError("lp_lq: t must be > 0");
    const double r = p_exp / (p_exp - q_exp);
    const double a1 = q_exp - q_exp / p_exp;
    const double a2 = q_exp - 1.0;
    // log of the integrand grows like slope * u for large u
    const double slope = r * 2.0 * params.rho() * (a1 - a2 * t);
    NormResult out;
    out.detail["slope"] = slope;
    if (!(slope < 0.0)) {
        out.value = kInf;
        out.err_estimate = kInf;
        return out;
    }
    const RealIntegrand g = [&](double u) {
        return std::exp(r * (a1 * log_weight_a(params, u) - a2 * log_weight_a(params, t * u)));
    };
    const double cutoff = std::max(cfg.truncation_x, 80.0 / -slope);
    auto half = finish(integrate_interval(g, 0.0, kInf, cfg, cutoff));
    half.value *= 2.0;
    half.err_estimate *= 2.0;
    out.value = half.value;
    out.err_estimate = half.err_estimate;
    return out;
}

NormResult lp_lq_constant(const KernelSpec& k, double p_exp, double q_exp, const JacobiParams& params,
                          const QuadConfig& cfg) {
    if (!(q_exp > 1.0 && p_exp > q_exp)) throw DomainError("lp_lq_constant: needs 1 < q < p");
    const double outer = (p_exp - q_exp) / (p_exp * q_exp);
    const RealIntegrand g = [&](double t) {
        const double phi = k(t);
        if (phi == 0.0) return 0.0;
        const NormResult in = lp_lq_inner(t, p_exp, q_exp, params, cfg);
        if (std::isinf(in.value)) return kInf;
        return phi / t * std::pow(t, 1.0 / q_exp) * std::pow(in.value, outer);
    };
    return root(over_kernel(g, k, cfg), 1.0);
}

NormResult grand_bound_constant(const KernelSpec& k, double p_exp, const JacobiParams& params, const QuadConfig& cfg,
                                int grid) {
    if (!(p_exp > 1.0)) throw DomainError("grand_bound_constant: p must be > 1");
    if (k.support().lo < 1.0) {
        throw DomainError("grand_bound_constant: kernel " + k.label() + " is not supported in [1, inf)");
    }
    if (grid < 2) throw DomainError("grand_bound_constant: grid must have at least 2 points");
    const double top = p_exp - 1.0;
    auto value_at = [&](double s) {
        const double e = e_constant(k, p_exp - s, cfg).value;
        if (std::isinf(e)) return kInf;
        return std::exp(-std::log(s) / (p_exp - s)) * e;
    };
    const std::vector<double> sig = open_grid(top, grid);
    std::vector<double> vals;
    std::size_t best = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
        vals.push_back(value_at(sig[i]));
        if (vals[i] < vals[best]) best = i;
    }
    if (std::isinf(vals[best])) {
        throw NonConvergenceError("grand_bound_constant: E(phi, p - sigma) is infinite on the whole sigma grid", kInf,
                                  grid);
    }
    double arg = sig[best];
    double v = vals[best];
    if (v > 0.0) {
        const double lo = best > 0 ? sig[best - 1] : 0.5 * sig[0];
        const double hi = best + 1 < sig.size() ? sig[best + 1] : top;
        const auto g = golden_min(value_at, lo, hi);
        if (g.value < v) {
            v = g.value;
            arg = g.x;
        }
    }
    const double a1 = weight_a(params, 1.0);
    NormResult out;
    out.value = a1 * a1 * top * v;
    out.err_estimate = 1e-8 * out.value;
    out.detail["sigma"] = sig;
    out.detail["values"] = vals;
    out.detail["argmin"] = arg;
    return out;
}

FunctionSpec extremal_function(ExtremalKind kind, double p_exp, double value, const JacobiParams& params) {
    switch (kind) {
        case ExtremalKind::eps: return FunctionSpec::extremal_eps(p_exp, value, params);
        case ExtremalKind::delta: return FunctionSpec::extremal_delta(p_exp, value, params);
        case ExtremalKind::zero: return FunctionSpec::extremal_zero(p_exp, params);
    }
    throw DomainError("extremal_function: unknown kind");
}

PowerLemma power_lemma_check(const std::vector<double>& xs, const std::vector<double>& ys, Interp rule, double s,
                             const QuadConfig& cfg) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("power_lemma_check: s must be in (0, 1)");
    if (xs.size() < 2 || xs.size() != ys.size()) throw DomainError("power_lemma_check: need >= 2 matching samples");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] >= 0.0)) throw DomainError("power_lemma_check: h must be non-negative");
        if (i == 0) continue;
        if (!(xs[i] > xs[i - 1])) throw DomainError("power_lemma_check: xs must be strictly increasing");
        if (ys[i] > ys[i - 1]) throw DomainError("power_lemma_check: h must be non-increasing");
    }
    const double a = xs.front();
    auto h = [&](double t) { return interpolate(xs, ys, rule, t); };
    double total = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        // with w = (t - a)^s the rhs cell is int h(a + w^{1/s})^s dw, smooth in w
        const double w0 = std::pow(xs[i] - a, s);
        const double w1 = std::pow(xs[i + 1] - a, s);
        if (rule == Interp::step) {
            total += ys[i] * (xs[i + 1] - xs[i]);
            rhs += std::pow(ys[i], s) * (w1 - w0);
            continue;
        }
        total += integrate_finite(RealIntegrand(h), xs[i], xs[i + 1], cfg).value;
        const RealIntegrand g = [&](double w) { return std::pow(h(a + std::pow(w, 1.0 / s)), s); };
        rhs += integrate_finite(g, w0, w1, cfg).value;
    }
    return {std::pow(total, s), rhs};
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw DomainError("geometric_grid: needs 0 < lo < hi and n >= 2");
    std::vector<double> out;
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(lo * std::exp(step * i));
    out.back() = hi;
    return out;
}

bool mphi_check(const KernelSpec& k, const FunctionSpec& f, const JacobiParams& params, double x,
                const std::vector<double>& t_grid) {
    if (f.is_zero()) return true;
    std::vector<double> m;
    double scale = 0.0;
    for (double t : t_grid) {
        const double phi = k(t);
        double v = 0.0;
        if (phi != 0.0) {
            const double u = x / t;
            const double fu = f.scaled(u, log_weight_ratio(params, u, x));
            v = fu == 0.0 ? 0.0 : phi / t * fu;
        }
        m.push_back(v);
        if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-12 * scale;
    for (std::size_t i = 1; i < m.size(); ++i) {
        if (std::isnan(m[i]) || m[i] > m[i - 1] + tol) return false;
    }
    return true;
}

}  // namespace ochaus
