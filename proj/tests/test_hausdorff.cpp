#include <doctest.h>

#include <cmath>
#include <vector>

#include "ochaus/errors.hpp"
#include "ochaus/hausdorff.hpp"
#include "ochaus/octransform.hpp"

using namespace ochaus;

namespace {

double integrate(const RealIntegrand& g, double a, double b) {
    QuadConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-15;
    return integrate_finite(g, a, b, cfg).value;
}

std::vector<KernelSpec> named_kernels() {
    return {KernelSpec::hardy(), KernelSpec::adjoint_hardy(), KernelSpec::hlp(), KernelSpec::cesaro(2.5),
            KernelSpec::riemann_liouville(1.5)};
}

}  // namespace

TEST_CASE("kernel l1 status") {
    QuadConfig cfg;
    auto a = KernelSpec::adjoint_hardy().l1_status(cfg);
    CHECK(a.finite);
    CHECK(std::abs(a.value - 1.0) < 1e-10);
    auto c = KernelSpec::cesaro(2.5).l1_status(cfg);
    CHECK(c.finite);
    CHECK(std::abs(c.value - 1.0) < 1e-8);
    auto h = KernelSpec::hardy().l1_status(cfg);
    CHECK_FALSE(h.finite);
    CHECK(std::isinf(h.value));
    CHECK_FALSE(KernelSpec::hlp().l1_status(cfg).finite);
    auto pc = KernelSpec::power_cutoff(-2.0, 1.0, kInf).l1_status(cfg);
    CHECK(pc.finite);
    // cut at truncation_t, the dropped tail 1e-4 must sit inside the estimate
    CHECK(std::abs(pc.value - 1.0) <= pc.err);
    CHECK(pc.err < 1e-3);
}

TEST_CASE("kernel closed forms and ranges") {
    CHECK(KernelSpec::hardy()(2.0) == doctest::Approx(0.5));
    CHECK(KernelSpec::hardy()(0.5) == 0.0);
    CHECK(KernelSpec::adjoint_hardy()(0.5) == 1.0);
    CHECK(KernelSpec::hlp()(0.5) == 1.0);
    CHECK(KernelSpec::hlp()(4.0) == doctest::Approx(0.25));
    CHECK(KernelSpec::cesaro(2.0)(0.25) == doctest::Approx(1.5));
    CHECK(KernelSpec::riemann_liouville(2.0)(2.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(KernelSpec::cesaro(0.0), DomainError);
    CHECK_THROWS_AS(KernelSpec::riemann_liouville(-1.0), DomainError);
    CHECK_THROWS_AS(KernelSpec::tabulated({0.5, 1.0}, {1.0, -1.0}), DomainError);
}

TEST_CASE("apply to zero and at the origin") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    CHECK(hausdorff_apply(KernelSpec::cesaro(2.0), FunctionSpec::zero(), p, 0.7, cfg) == 0.0);
    CHECK_THROWS_AS(hausdorff_apply(KernelSpec::hardy(), FunctionSpec::gaussian(1.0), p, 0.0, cfg), DomainError);
}

TEST_CASE("hardy witness") {
    QuadConfig cfg;
    JacobiParams p(0.5, -0.5);
    // f(u) = u^2 / sinh^2 u, sampled on [0, 1]
    std::vector<double> xs, ys;
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        double u = double(i) / (n - 1);
        xs.push_back(u);
        ys.push_back(u == 0.0 ? 1.0 : std::pow(u, p.sinh_power()) / weight_a(p, u));
    }
    auto f = FunctionSpec::sampled(xs, ys, Interp::linear);
    double v = hausdorff_apply(KernelSpec::hardy(), f, p, 1.0, cfg);
    double expected = 1.0 / (3.0 * std::pow(std::sinh(1.0), 2));
    CHECK(std::abs(v - expected) <= 1e-6 * expected);
    CHECK(std::abs(v - 0.241354) < 1e-6);
}

TEST_CASE("adjoint hardy against the substituted integral") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    auto f = FunctionSpec::bump(1.0, 0.3);
    double x = 0.5;
    double direct = integrate([&](double t) { return f(t) / t * weight_a(p, t) / weight_a(p, x); }, 0.7, 1.3);
    double v = hausdorff_apply(KernelSpec::adjoint_hardy(), f, p, x, cfg);
    CHECK(std::abs(v - direct) <= 1e-7 * direct);
}

TEST_CASE("named operator forms") {
    QuadConfig cfg;
    for (auto params : {JacobiParams(0.5, -0.5), JacobiParams(1.0, 0.5)}) {
        auto f = FunctionSpec::gaussian(1.0);
        for (const auto& k : named_kernels()) {
            for (double x : {0.25, 0.5, 1.0, 2.0, 3.0}) {
                CAPTURE(k.label());
                CAPTURE(x);
                double a = hausdorff_apply(k, f, params, x, cfg);
                double b = named_operator_form(k, f, params, x, cfg).value;
                CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
            }
        }
    }
    CHECK_THROWS_AS(named_operator_form(KernelSpec::power_cutoff(1.0, 0.5, 2.0), FunctionSpec::gaussian(1.0),
                                        JacobiParams(1.0, 0.5), 1.0, cfg),
                    DomainError);
}

TEST_CASE("positivity, linearity in phi, reflection") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    auto f = FunctionSpec::gaussian(1.0);
    for (const auto& k : named_kernels()) {
        for (double x : {0.3, 1.7}) CHECK(hausdorff_apply(k, f, p, x, cfg) >= 0.0);
    }
    auto k = KernelSpec::cesaro(2.0);
    double one = hausdorff_apply(k, f, p, 0.8, cfg);
    double three = hausdorff_apply(k.scaled_by(3.0), f, p, 0.8, cfg);
    CHECK(std::abs(three - 3.0 * one) <= 1e-12 * three);
    // even f: H f is even
    CHECK(std::abs(hausdorff_apply(k, f, p, -0.8, cfg) - one) <= 1e-12 * one);
    // one-sided f vanishes on the other side
    auto g = FunctionSpec::bump(1.0, 0.3);
    CHECK(hausdorff_apply(k, g, p, -0.5, cfg) == 0.0);
}

TEST_CASE("weighted and reduced forms agree") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    auto k = KernelSpec::power_cutoff(-2.0, 1.0, kInf);
    auto f = FunctionSpec::extremal_eps(2.0, 0.1, p);
    double x = 1.5;
    double h = hausdorff_apply(k, f, p, x, cfg);
    double w = hausdorff_apply_weighted(k, f, p, x, cfg).value;
    CHECK(std::abs(w - h * weight_a(p, x)) <= 1e-8 * std::abs(w));
    auto r = hausdorff_apply_reduced(k, f, p, x, cfg);
    double c = f.weight_exponent(p);
    double back = r.value.value * std::exp(r.log_scale - c * log_weight_a(p, x));
    CHECK(std::abs(back - h) <= 1e-8 * std::abs(h));
    // large x stays finite in reduced form
    auto far = hausdorff_apply_reduced(k, f, p, 400.0, cfg);
    CHECK(std::isfinite(far.value.value));
    CHECK(far.value.value > 0.0);
}

TEST_CASE("support") {
    auto s = hausdorff_support(KernelSpec::adjoint_hardy(), FunctionSpec::bump(1.0, 0.3));
    CHECK(s.lo == doctest::Approx(0.0));
    CHECK(s.hi == doctest::Approx(1.3));
    auto t = hausdorff_support(KernelSpec::hardy(), FunctionSpec::power_cutoff(1.0));
    CHECK(t.lo == doctest::Approx(0.0));
    CHECK(t.hi == kInf);
}

TEST_CASE("commutation diagnostic") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    auto z = commutation_residual(KernelSpec::adjoint_hardy(), FunctionSpec::zero(), p, 1.0, cfg);
    CHECK(z.abs_gap == 0.0);

    auto f = FunctionSpec::bump(0.8, 0.2);
    auto r = commutation_residual(KernelSpec::adjoint_hardy(), f, p, 0.0, cfg);
    cplx h0 = oc_transform(f, p, 0.0, cfg);
    CHECK(std::abs(r.rhs - h0) <= 1e-8 * std::abs(h0));
    CHECK(std::isfinite(r.abs_gap));

    // gap at lambda = 1 does not move under refinement
    auto g = FunctionSpec::gaussian(1.0);
    auto coarse = commutation_residual(KernelSpec::adjoint_hardy(), g, p, 1.0, cfg);
    QuadConfig fine = cfg;
    fine.rel_tol /= 100.0;
    fine.abs_tol /= 100.0;
    auto refined = commutation_residual(KernelSpec::adjoint_hardy(), g, p, 1.0, fine);
    CHECK(std::abs(coarse.abs_gap - refined.abs_gap) <= 1e-5 * std::max(1.0, coarse.abs_gap));

    CHECK_THROWS_AS(commutation_residual(KernelSpec::hardy(), g, p, 1.0, cfg), DomainError);
}
