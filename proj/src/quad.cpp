#include "ochaus/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "ochaus/errors.hpp"

namespace ochaus {

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("QuadConfig: tolerances must be > 0");
    if (!(truncation_x > 0.0) || !(truncation_lambda > 0.0) || !(truncation_t > 0.0) || !(lambda_min > 0.0)) {
        throw DomainError("QuadConfig: cutoffs must be > 0");
    }
    if (max_subdivisions < 1) throw DomainError("QuadConfig: max_subdivisions must be >= 1");
    if (extremum_grid < 16) throw DomainError("QuadConfig: extremum_grid must be >= 16");
}

namespace {

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (non-negative half) and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }

bool non_finite(double v) { return !std::isfinite(v); }
bool non_finite(const std::complex<double>& v) { return !std::isfinite(v.real()) || !std::isfinite(v.imag()); }

bool positive_infinite(double v) { return v == kInf; }
bool positive_infinite(const std::complex<double>& v) { return v.real() == kInf && v.imag() == 0.0; }

template <class T>
struct Segment {
    double a;
    double b;
    T value;
    double err;
    double noise;  // rounding floor of err
    bool operator<(const Segment& o) const { return err < o.err; }
};

struct DivergentNode {};

constexpr int kStallLimit = 12;

template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto eval = [&](double x) {
        const T v = f(x);
        if (non_finite(v)) {
            if (positive_infinite(v)) throw DivergentNode{};
            throw DomainError("quadrature: integrand returned NaN or -inf at x=" + std::to_string(x));
        }
        return v;
    };
    const T fc = eval(center);
    T kronrod = fc * kWgk[7];
    T gauss = fc * kWg[3];
    double resabs = magnitude(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T f1 = eval(center - dx);
        const T f2 = eval(center + dx);
        const T sum = f1 + f2;
        kronrod += sum * kWgk[j];
        resabs += (magnitude(f1) + magnitude(f2)) * kWgk[j];
        if (j % 2 == 1) gauss += sum * kWg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    double err = magnitude(kronrod - gauss);
    // QUADPACK-style scaling of the raw difference
    err = std::min(magnitude(kronrod - gauss), std::pow(200.0 * err / std::max(magnitude(kronrod), 1e-300), 1.5) *
                                                   std::max(magnitude(kronrod), 1e-300));
    // rounding floor scales with the integral of |f|, not |f| integrated
    const double noise = 50.0 * 2.2e-16 * resabs * std::abs(half);
    err = std::max(err, noise);
    return {a, b, kronrod, err, noise};
}

template <class T, class F>
IntegralResult<T> adaptive(const F& f, double a, double b, const QuadConfig& cfg) {
    IntegralResult<T> out;
    if (!(a < b)) {
        if (a == b) return out;
        throw DomainError("integrate_finite: need a < b");
    }
    try {
        std::priority_queue<Segment<T>> heap;
        std::vector<Segment<T>> frozen;  // too narrow to split, or at the rounding floor
        Segment<T> first = gk15<T>(f, a, b);
        T total = first.value;
        double err = first.err;
        heap.push(first);
        int subdivisions = 0;
        // consecutive halvings of the end segments that did not shrink their integral
        int stall_a = 0;
        int stall_b = 0;
        // below ~1e-12 |end| the nodes no longer resolve the distance to the end
        auto stalled = [](const Segment<T>& child, const Segment<T>& parent, double end) {
            if (!(parent.b - parent.a > 1e-12 * std::abs(end))) return false;
            return magnitude(parent.value) > 0.0 && magnitude(child.value) >= 0.999 * magnitude(parent.value);
        };
        double frozen_err = 0.0;
        // frozen segments cannot improve; stop once the splittable part has converged
        while (err - frozen_err > std::max(cfg.abs_tol, cfg.rel_tol * magnitude(total)) && !heap.empty()) {
            if (subdivisions >= cfg.max_subdivisions) {
                throw QuadratureBudgetError("integrate_finite: subdivision budget exhausted on (" + std::to_string(a) +
                                                ", " + std::to_string(b) + ")",
                                            magnitude(total), err);
            }
            Segment<T> worst = heap.top();
            heap.pop();
            const double mid = 0.5 * (worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < std::max(1e-12 * std::abs(mid), 1e-290) ||
                worst.err <= worst.noise) {
                frozen.push_back(worst);
                frozen_err += worst.err;
                continue;
            }
            const Segment<T> left = gk15<T>(f, worst.a, mid);
            const Segment<T> right = gk15<T>(f, mid, worst.b);
            total += left.value + right.value - worst.value;
            err += left.err + right.err - worst.err;
            heap.push(left);
            heap.push(right);
            ++subdivisions;
            // int_0^h x^{-s} scales by 2^{s-1} per halving: >= 1 means s >= 1, not integrable
            if (worst.a == a) stall_a = stalled(left, worst, a) ? stall_a + 1 : 0;
            if (worst.b == b) stall_b = stalled(right, worst, b) ? stall_b + 1 : 0;
            if (stall_a >= kStallLimit || stall_b >= kStallLimit) throw DivergentNode{};
        }
        // re-sum to shed accumulated cancellation in the running totals
        T sum{};
        double esum = 0.0;
        auto drain = [&](const Segment<T>& s) {
            sum += s.value;
            esum += s.err;
        };
        while (!heap.empty()) {
            drain(heap.top());
            heap.pop();
        }
        for (const auto& s : frozen) drain(s);
        out.value = sum;
        out.err_estimate = esum;
        out.subdivisions_used = subdivisions;
    } catch (const DivergentNode&) {
        out.value = T(kInf);
        out.err_estimate = kInf;
        out.divergent = true;
    }
    return out;
}

template <class T>
IntegralResult<T> to_infinity(const std::function<T(double)>& f, double a, const QuadConfig& cfg, double cutoff) {
    if (!(cutoff > 0.0)) cutoff = cfg.truncation_t;
    IntegralResult<T> out;
    if (!(cutoff > a)) return out;
    auto g = [&](double s) {
        const double em1 = std::expm1(s);
        return f(a + em1) * (em1 + 1.0);
    };
    const double s_max = std::log1p(cutoff - a);
    out = adaptive<T>(g, 0.0, s_max, cfg);
    if (out.divergent) return out;

    // dyadic blocks (a + L/2^{k+1}, a + L/2^k), k = 0..3, with L = cutoff - a
    const double span = cutoff - a;
    std::array<double, 4> blocks{};
    for (int k = 0; k < 4; ++k) {
        const double hi = std::log1p(span / std::ldexp(1.0, k));
        const double lo = std::log1p(span / std::ldexp(1.0, k + 1));
        const auto r = adaptive<T>(g, lo, hi, cfg);
        if (r.divergent) {
            out.value = T(kInf);
            out.err_estimate = kInf;
            out.divergent = true;
            return out;
        }
        blocks[k] = magnitude(r.value);
    }
    const double floor = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(out.value));
    if (blocks[0] > floor) {
        bool shrinking = false;
        for (int k = 0; k < 3; ++k) {
            // block k+1 is farther in; it must dominate block k by 5 %
            if (blocks[k + 1] >= 1.05 * blocks[k]) shrinking = true;
        }
        const bool all_flat = !shrinking;
        if (all_flat) {
            out.divergent = true;
            out.err_estimate = kInf;
            return out;
        }
        const double q = blocks[1] > 0.0 ? blocks[0] / blocks[1] : 0.0;
        out.err_estimate += q < 1.0 ? blocks[0] * q / (1.0 - q) : blocks[0];
    }
    return out;
}

template <class T>
IntegralResult<T> merge(IntegralResult<T> x, const IntegralResult<T>& y) {
    x.value += y.value;
    x.err_estimate += y.err_estimate;
    x.subdivisions_used += y.subdivisions_used;
    x.divergent = x.divergent || y.divergent;
    return x;
}

template <class T>
IntegralResult<T> real_line(const std::function<T(double)>& f, const QuadConfig& cfg, double cutoff, double r) {
    if (!(cutoff > 0.0)) cutoff = cfg.truncation_x;
    const std::function<T(double)> mirrored = [&](double x) { return f(-x); };
    auto right = to_infinity<T>(f, r, cfg, cutoff);
    auto left = to_infinity<T>(mirrored, r, cfg, cutoff);
    auto out = merge(right, left);
    if (r > 0.0 && !out.divergent) {
        out.err_estimate += 2.0 * r * std::max(magnitude(f(r)), magnitude(f(-r)));
    }
    return out;
}

template <class T>
IntegralResult<T> interval(const std::function<T(double)>& f, double lo, double hi, const QuadConfig& cfg,
                           double cutoff) {
    if (!(lo <= hi)) throw DomainError("integrate_interval: lo > hi");
    if (lo == hi) return {};
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return adaptive<T>(f, lo, hi, cfg);
    if (lo_inf && hi_inf) {
        const std::function<T(double)> mirrored = [&](double x) { return f(-x); };
        return merge(to_infinity<T>(f, 0.0, cfg, cutoff), to_infinity<T>(mirrored, 0.0, cfg, cutoff));
    }
    if (hi_inf) {
        if (cutoff <= lo) return {};
        return to_infinity<T>(f, lo, cfg, cutoff);
    }
    const std::function<T(double)> mirrored = [&](double x) { return f(-x); };
    if (cutoff <= -hi) return {};
    return to_infinity<T>(mirrored, -hi, cfg, cutoff);
}

}  // namespace

IntegralResult<double> integrate_finite(const RealIntegrand& f, double a, double b, const QuadConfig& cfg) {
    return adaptive<double>(f, a, b, cfg);
}
IntegralResult<std::complex<double>> integrate_finite(const ComplexIntegrand& f, double a, double b,
                                                      const QuadConfig& cfg) {
    return adaptive<std::complex<double>>(f, a, b, cfg);
}

IntegralResult<double> integrate_to_infinity(const RealIntegrand& f, double a, const QuadConfig& cfg, double cutoff) {
    return to_infinity<double>(f, a, cfg, cutoff);
}
IntegralResult<std::complex<double>> integrate_to_infinity(const ComplexIntegrand& f, double a, const QuadConfig& cfg,
                                                           double cutoff) {
    return to_infinity<std::complex<double>>(f, a, cfg, cutoff);
}

IntegralResult<double> integrate_real_line(const RealIntegrand& f, const QuadConfig& cfg, double cutoff,
                                           double excise_radius) {
    return real_line<double>(f, cfg, cutoff, excise_radius);
}
IntegralResult<std::complex<double>> integrate_real_line(const ComplexIntegrand& f, const QuadConfig& cfg,
                                                         double cutoff, double excise_radius) {
    return real_line<std::complex<double>>(f, cfg, cutoff, excise_radius);
}

IntegralResult<double> integrate_interval(const RealIntegrand& f, double lo, double hi, const QuadConfig& cfg,
                                          double cutoff) {
    return interval<double>(f, lo, hi, cfg, cutoff);
}
IntegralResult<std::complex<double>> integrate_interval(const ComplexIntegrand& f, double lo, double hi,
                                                        const QuadConfig& cfg, double cutoff) {
    return interval<std::complex<double>>(f, lo, hi, cfg, cutoff);
}

}  // namespace ochaus
