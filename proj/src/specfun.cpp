#include "ochaus/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace ochaus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;
constexpr long kTermBudget = 100000;

// B_{2k} for k = 1..8
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,     -1.0 / 30.0,      1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,    -691.0 / 2730.0,  7.0 / 6.0,  -3617.0 / 510.0,
};

bool near_nonpositive_integer(cplx z, double tol) {
    if (std::abs(z.imag()) > tol || z.real() > tol) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

bool is_nonpositive_integer(cplx z) { return near_nonpositive_integer(z, 0.0); }

double wrap_phase(double im) {
    double r = std::remainder(im, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

// Stirling series for log Gamma, valid for Re(w) >= 15.
cplx stirling_log_gamma(cplx w) {
    cplx sum = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi);
    const cplx inv = 1.0 / w;
    const cplx inv2 = inv * inv;
    cplx pw = inv;
    for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
        const double n = 2.0 * static_cast<double>(k);
        sum += kBernoulli[k - 1] / (n * (n - 1.0)) * pw;
        pw *= inv2;
    }
    return sum;
}

cplx asymptotic_digamma(cplx w) {
    cplx sum = std::log(w) - 0.5 / w;
    const cplx inv2 = 1.0 / (w * w);
    cplx pw = inv2;
    for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
        const double n = 2.0 * static_cast<double>(k);
        sum -= kBernoulli[k - 1] / n * pw;
        pw *= inv2;
    }
    return sum;
}

void check_c_parameter(cplx c) {
    if (near_nonpositive_integer(c, 1e-12)) {
        throw DomainError("gauss_2f1: c is a non-positive integer");
    }
}

// Degenerate connection (c = a + b): DLMF 15.8.10 around w = 1, s = 1 - w.
ComplexEval log_connection(cplx a, cplx b, double s) {
    const cplx coef = std::exp(log_gamma_continuous(a + b)) * reciprocal_gamma(a) * reciprocal_gamma(b);
    const double log_s = std::log(s);
    cplx psi_a = digamma(a);
    cplx psi_b = digamma(b);
    double psi_1 = -0.5772156649015329;  // psi(1)
    cplx term = 1.0;                       // (a)_k (b)_k / (k!)^2 s^k
    cplx sum = 0.0;
    double abs_sum = 0.0;
    int small_run = 0;
    long k = 0;
    for (; k < kTermBudget; ++k) {
        const cplx piece = term * (2.0 * psi_1 - psi_a - psi_b - log_s);
        sum += piece;
        abs_sum += std::abs(piece);
        const double kd = static_cast<double>(k);
        const cplx ratio = (a + kd) * (b + kd) / ((kd + 1.0) * (kd + 1.0)) * s;
        const double r = std::max(std::abs(ratio), s) * 1.1;
        const double tail = r < 1.0 ? std::abs(piece) * r / (1.0 - r) : kInf;
        if (tail <= 0.5 * kEps * std::abs(sum) || piece == cplx(0.0)) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        psi_a += 1.0 / (a + kd);
        psi_b += 1.0 / (b + kd);
        psi_1 += 1.0 / (kd + 1.0);
        term *= ratio;
    }
    if (k >= kTermBudget) {
        throw NonConvergenceError("gauss_2f1: log-case connection series exceeded term budget", std::abs(sum), k);
    }
    ComplexEval out;
    out.value = coef * sum;
    out.abs_err_estimate = std::abs(coef) * 4.0 * kEps * abs_sum;
    out.terms_used = k + 1;
    return out;
}

// Gauss connection of 2F1(a, b; c; w) to s = 1 - w when c - a - b is not an integer.
ComplexEval generic_connection(cplx a, cplx b, cplx c, double s) {
    const cplx d = c - a - b;
    const double log_s = std::log(s);
    const cplx lg_c = log_gamma_continuous(c);
    const cplx coef1 = std::exp(lg_c + log_gamma_continuous(d)) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    const cplx coef2 =
        std::exp(lg_c + log_gamma_continuous(-d) + d * log_s) * reciprocal_gamma(a) * reciprocal_gamma(b);
    ComplexEval out;
    cplx total = 0.0;
    double mag = 0.0;
    if (coef1 != cplx(0.0)) {
        const ComplexEval f1 = gauss_2f1_series(a, b, 1.0 - d, s, kTermBudget);
        total += coef1 * f1.value;
        mag += std::abs(coef1 * f1.value);
        out.abs_err_estimate += std::abs(coef1) * f1.abs_err_estimate;
        out.terms_used += f1.terms_used;
    }
    if (coef2 != cplx(0.0)) {
        const ComplexEval f2 = gauss_2f1_series(c - a, c - b, 1.0 + d, s, kTermBudget);
        total += coef2 * f2.value;
        mag += std::abs(coef2 * f2.value);
        out.abs_err_estimate += std::abs(coef2) * f2.abs_err_estimate;
        out.terms_used += f2.terms_used;
    }
    out.value = total;
    // cancellation between the two branches
    out.abs_err_estimate += 16.0 * kEps * mag;
    return out;
}

}  // namespace

cplx log_gamma_continuous(cplx z) {
    if (near_nonpositive_integer(z, 1e-12)) {
        throw PoleError("log_gamma: z is (within 1e-12 of) a non-positive integer");
    }
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_continuous(1.0 - z);
    }
    cplx shift_log = 0.0;
    cplx w = z;
    while (w.real() < 15.0) {
        shift_log += std::log(w);
        w += 1.0;
    }
    return stirling_log_gamma(w) - shift_log;
}

cplx log_gamma(cplx z) {
    const cplx v = log_gamma_continuous(z);
    return {v.real(), wrap_phase(v.imag())};
}

cplx reciprocal_gamma(cplx z) {
    if (is_nonpositive_integer(z)) return 0.0;
    if (near_nonpositive_integer(z, 1e-12)) {
        // 1/Gamma is entire; at distance < 1e-12 from -n it is (-1)^n n! (z + n) to first order
        const double n = -std::round(z.real());
        const double fact = std::exp(std::lgamma(n + 1.0));
        return (static_cast<long>(n) % 2 == 0 ? 1.0 : -1.0) * fact * (z + n);
    }
    return std::exp(-log_gamma_continuous(z));
}

cplx digamma(cplx z) {
    if (near_nonpositive_integer(z, 1e-12)) {
        throw PoleError("digamma: z is a non-positive integer");
    }
    if (z.real() < 0.5) {
        return digamma(1.0 - z) - kPi / std::tan(kPi * z);
    }
    cplx shift = 0.0;
    cplx w = z;
    while (w.real() < 15.0) {
        shift += 1.0 / w;
        w += 1.0;
    }
    return asymptotic_digamma(w) - shift;
}

ComplexEval gauss_2f1_series(cplx a, cplx b, cplx c, double z, long max_terms) {
    check_c_parameter(c);
    const double az = std::abs(z);
    cplx term = 1.0;
    cplx sum = 1.0;
    double abs_sum = 1.0;
    double tail = 0.0;
    int small_run = 0;
    long n = 0;
    for (; n < max_terms; ++n) {
        const double nd = static_cast<double>(n);
        const cplx ratio = (a + nd) * (b + nd) / ((c + nd) * (nd + 1.0)) * z;
        term *= ratio;
        sum += term;
        abs_sum += std::abs(term);
        if (term == cplx(0.0)) {  // terminating (polynomial) series
            tail = 0.0;
            break;
        }
        const cplx next = (a + nd + 1.0) * (b + nd + 1.0) / ((c + nd + 1.0) * (nd + 2.0));
        const double r = std::max(std::abs(next) * az, az);
        tail = r < 1.0 ? std::abs(term) * r / (1.0 - r) : kInf;
        if (tail <= 0.5 * kEps * std::abs(sum)) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
    }
    if (n >= max_terms) {
        throw NonConvergenceError("gauss_2f1: series missed tolerance within " + std::to_string(max_terms) +
                                      " terms (z=" + std::to_string(z) + ")",
                                  std::abs(sum), n);
    }
    ComplexEval out;
    out.value = sum;
    out.abs_err_estimate = tail + 2.0 * kEps * abs_sum;
    out.terms_used = n + 1;
    return out;
}

ComplexEval gauss_2f1(cplx a, cplx b, cplx c, double z) {
    if (!(z <= 0.0)) throw DomainError("gauss_2f1: requires real z <= 0");
    check_c_parameter(c);
    if (z == 0.0) return {1.0, 0.0, 0};

    // Candidates in order of cost; the first whose error estimate is within
    // kAccept of its value wins, otherwise the one with the smallest estimate.
    // Large |Im a| makes every power series cancel; which one cancels least
    // depends on z.
    constexpr double kAccept = 1e-11;
    ComplexEval best;
    bool have = false;
    auto good = [&](const ComplexEval& e) { return e.abs_err_estimate <= kAccept * std::abs(e.value); };
    auto offer = [&](const ComplexEval& e) {
        if (!have || e.abs_err_estimate < best.abs_err_estimate) best = e;
        have = true;
        return good(e);
    };

    if (-z <= 0.5 && offer(gauss_2f1_series(a, b, c, z))) return best;

    // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
    const double one_minus_z = 1.0 - z;
    const double s = 1.0 / one_minus_z;  // 1 - w
    const double w = -z * s;
    const cplx prefactor = std::exp(-a * std::log(one_minus_z));
    const cplx b2 = c - b;
    auto scaled = [&](ComplexEval e) {
        e.value *= prefactor;
        e.abs_err_estimate *= std::abs(prefactor);
        return e;
    };

    const bool polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b2);
    const cplx d = c - a - b2;
    const double d_frac = std::abs(d.real() - std::round(d.real())) + std::abs(d.imag());
    if (polynomial) return scaled(gauss_2f1_series(a, b2, c, w));
    if (w <= 0.75 && offer(scaled(gauss_2f1_series(a, b2, c, w)))) return best;
    if (std::abs(d) < 1e-6) {
        // the two-branch form cancels like eps/|d|; the c = a + b limit differs by O(|d|)
        offer(scaled(log_connection(a, b2, s)));
    } else if (d_frac >= 1e-9) {
        offer(scaled(generic_connection(a, b2, c, s)));
    }
    // c-a-b a nonzero integer needs the general log form; fall back to the slow series
    if (!have) offer(scaled(gauss_2f1_series(a, b2, c, w)));
    return best;
}

cplx jacobi_phi(const JacobiParams& p, double lambda, double x) {
    if (std::abs(x) > 300.0) throw DomainError("jacobi_phi: |x| > 300 overflows sinh^2");
    const double rho = p.rho();
    const cplx a(rho / 2.0, lambda / 2.0);
    const cplx b(rho / 2.0, -lambda / 2.0);
    const double sh = std::sinh(x);
    return gauss_2f1(a, b, p.alpha() + 1.0, -sh * sh).value;
}

cplx eigenfunction_g(const JacobiParams& p, double lambda, double x) {
    if (x == 0.0) return 1.0;
    const cplx phi = jacobi_phi(p, lambda, x);
    const cplx phi_shift = jacobi_phi(p.shifted(), lambda, x);
    const cplx factor = cplx(p.rho(), lambda) / (4.0 * (p.alpha() + 1.0));
    return phi + factor * std::sinh(2.0 * x) * phi_shift;
}

double weight_a(const JacobiParams& p, double x) {
    const double y = std::abs(x);
    return std::pow(std::sinh(y), p.sinh_power()) * std::pow(std::cosh(y), p.cosh_power());
}

double log_weight_ratio(const JacobiParams& p, double u, double v) {
    const double a = std::abs(u);
    const double b = std::abs(v);
    if (a < 1.0 || b < 1.0) return log_weight_a(p, a) - log_weight_a(p, b);
    // log sinh y = y - ln 2 + log1p(-e^{-2y}); the linear parts cancel exactly
    const double ea = std::exp(-2.0 * a);
    const double eb = std::exp(-2.0 * b);
    return 2.0 * p.rho() * (a - b) + p.sinh_power() * (std::log1p(-ea) - std::log1p(-eb)) +
           p.cosh_power() * (std::log1p(ea) - std::log1p(eb));
}

double log_weight_a(const JacobiParams& p, double x) {
    const double y = std::abs(x);
    if (y == 0.0) return -kInf;
    double log_sinh;
    double log_cosh;
    if (y < 1.0) {
        log_sinh = std::log(std::sinh(y));
        log_cosh = std::log(std::cosh(y));
    } else {
        const double e = std::exp(-2.0 * y);
        log_sinh = y + std::log1p(-e) - std::numbers::ln2;
        log_cosh = y + std::log1p(e) - std::numbers::ln2;
    }
    double out = p.sinh_power() * log_sinh;
    if (p.cosh_power() != 0.0) out += p.cosh_power() * log_cosh;
    return out;
}

RatioExtrema weight_ratio_extrema(const JacobiParams& p, double t, const QuadConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("weight_ratio_extrema: t must be > 0");
    if (t == 1.0) return {1.0, 1.0, 0.0, 0.0};
    auto ratio = [&](double u) { return std::exp(log_weight_a(p, u) - log_weight_a(p, t * u)); };

    const int n = std::max(cfg.extremum_grid, 16);
    const double lo = std::log(1e-6);
    const double hi = std::log(50.0);
    double gmax = -kInf, gmin = kInf;
    int imax = 0, imin = 0;
    for (int i = 0; i < n; ++i) {
        const double u = std::exp(lo + (hi - lo) * i / (n - 1));
        const double r = ratio(u);
        if (r > gmax) { gmax = r; imax = i; }
        if (r < gmin) { gmin = r; imin = i; }
    }
    // one refinement pass between the neighbours of each grid extremum
    auto refine = [&](int idx, bool want_max, double& best, double& arg) {
        const int a = std::max(idx - 1, 0);
        const int b = std::min(idx + 1, n - 1);
        const double la = lo + (hi - lo) * a / (n - 1);
        const double lb = lo + (hi - lo) * b / (n - 1);
        arg = std::exp(lo + (hi - lo) * idx / (n - 1));
        constexpr int kRefine = 64;
        for (int j = 0; j <= kRefine; ++j) {
            const double u = std::exp(la + (lb - la) * j / kRefine);
            const double r = ratio(u);
            if (want_max ? r > best : r < best) {
                best = r;
                arg = u;
            }
        }
    };
    RatioExtrema out;
    refine(imax, true, gmax, out.argsup);
    refine(imin, false, gmin, out.arginf);

    const double limit_zero = std::pow(t, -p.sinh_power());
    const double limit_inf = t > 1.0 ? 0.0 : kInf;
    out.sup = gmax;
    out.inf = gmin;
    if (limit_zero >= out.sup) { out.sup = limit_zero; out.argsup = 0.0; }
    if (limit_zero <= out.inf) { out.inf = limit_zero; out.arginf = 0.0; }
    if (limit_inf >= out.sup) { out.sup = limit_inf; out.argsup = kInf; }
    if (limit_inf <= out.inf) { out.inf = limit_inf; out.arginf = kInf; }
    return out;
}

namespace {
cplx log_c_function(const JacobiParams& p, double lambda) {
    const double rho = p.rho();
    return cplx(rho, -lambda) * std::numbers::ln2 + log_gamma_continuous(p.alpha() + 1.0) +
           log_gamma_continuous(cplx(0.0, lambda)) - log_gamma_continuous(cplx(rho, lambda) / 2.0) -
           log_gamma_continuous(cplx(p.alpha() - p.beta() + 1.0, lambda) / 2.0);
}
}  // namespace

cplx c_function(const JacobiParams& p, double lambda, double lambda_min) {
    if (std::abs(lambda) < lambda_min) throw PoleError("c_function: |lambda| below lambda_min");
    return std::exp(log_c_function(p, lambda));
}

cplx plancherel_density(const JacobiParams& p, double lambda, double lambda_min) {
    if (std::abs(lambda) < lambda_min) throw PoleError("plancherel_density: |lambda| below lambda_min");
    const double inv_abs_c2 = std::exp(-2.0 * log_c_function(p, lambda).real());
    // 1 - rho/(i lambda) = 1 + i rho / lambda
    return cplx(1.0, p.rho() / lambda) * inv_abs_c2 / (8.0 * kPi);
}

}  // namespace ochaus
