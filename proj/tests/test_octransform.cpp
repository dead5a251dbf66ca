#include <doctest.h>

#include <cmath>

#include "ochaus/errors.hpp"
#include "ochaus/octransform.hpp"

using namespace ochaus;

namespace {

// composite trapezoid on [-L, L] with n cells
cplx trapezoid_transform(const FunctionSpec& f, const JacobiParams& p, double lambda, double L, int n) {
    double h = 2.0 * L / n;
    cplx s = 0.0;
    for (int i = 0; i <= n; ++i) {
        double x = -L + i * h;
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        if (x == 0.0) continue;  // A(0) = 0
        s += w * f(x) * eigenfunction_g(p, lambda, -x) * weight_a(p, x);
    }
    return s * h;
}

}  // namespace

TEST_CASE("transform of zero and linearity") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    CHECK(oc_transform(FunctionSpec::zero(), p, 0.7, cfg) == cplx(0.0, 0.0));
    auto f = FunctionSpec::gaussian(1.0);
    cplx one = oc_transform(f, p, 1.5, cfg);
    cplx two = oc_transform(f.scaled_by(2.0), p, 1.5, cfg);
    CHECK(std::abs(two - 2.0 * one) <= 1e-8 * std::abs(one));
}

TEST_CASE("transform against trapezoid refinement") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    auto f = FunctionSpec::gaussian(1.0);
    cplx v = oc_transform(f, p, 1.0, cfg);
    cplx coarse = trapezoid_transform(f, p, 1.0, 9.0, 1500);
    cplx fine = trapezoid_transform(f, p, 1.0, 9.0, 6000);
    CHECK(std::abs(fine - coarse) <= 1e-5 * std::abs(fine));
    CHECK(std::abs(v - fine) <= 1e-5 * std::abs(fine));
}

TEST_CASE("weighted transform matches") {
    QuadConfig cfg;
    JacobiParams p(0.5, -0.5);
    auto f = FunctionSpec::bump(0.3, 1.0);
    auto fa = [&](double x) { return f(x) * weight_a(p, x); };
    auto a = oc_transform_weighted(fa, f.support(), p, 2.0, cfg);
    cplx b = oc_transform(f, p, 2.0, cfg);
    CHECK(std::abs(a.value - b) <= 1e-8 * std::abs(b) + 1e-12);
}

TEST_CASE("inverse of zero") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    CHECK(oc_inverse([](double) { return cplx(0.0, 0.0); }, p, 0.4, cfg) == cplx(0.0, 0.0));
}

TEST_CASE("round trip of a bump") {
    QuadConfig cfg;
    cfg.rel_tol = 1e-6;
    JacobiParams p(1.0, 0.5);
    auto f = FunctionSpec::bump(0.0, 1.0);
    auto g = [&](double l) { return oc_transform(f, p, l, cfg); };
    double peak = f(0.0);
    for (double x : {0.5, 1.0}) {
        cplx back = oc_inverse(g, p, x, cfg);
        CHECK(std::abs(back - f(x)) <= 0.02 * peak);
        if (x == 0.5) CHECK(std::abs(back.imag()) <= 1e-6);
    }
    // G_l(0) = 1 does not oscillate, so at x = 0 the slowly decaying transform
    // needs a longer spectral range: about 0.02 sits beyond lambda = 40
    QuadConfig wide = cfg;
    wide.truncation_lambda = 70.0;
    auto gw = [&](double l) { return oc_transform(f, p, l, wide); };
    CHECK(std::abs(oc_inverse(gw, p, 0.0, wide) - peak) <= 0.02 * peak);
}

TEST_CASE("apply_jacobi_cherednik") {
    JacobiParams p(1.0, 0.5);
    cplx c = apply_jacobi_cherednik([](double) { return cplx(1.0, 0.0); }, p, 0.8);
    CHECK(std::abs(c - cplx(-p.rho(), 0.0)) < 1e-12);

    // hand evaluation: 1 + [3 coth 0.5 + 2 tanh 0.5] 0.5 + 2.5 * 0.5
    cplx t = apply_jacobi_cherednik([](double x) { return cplx(x, 0.0); }, p, 0.5);
    CHECK(std::abs(t - 5.958047277867989) < 1e-9);

    for (double h : {1e-3, 1e-4}) {
        auto g = [&](double y) { return eigenfunction_g(p, 1.0, y); };
        cplx r = apply_jacobi_cherednik(g, p, 0.7, h) - cplx(0.0, 1.0) * g(0.7);
        CHECK(std::abs(r) <= 1e-5 * std::abs(g(0.7)));
    }

    CHECK_THROWS_AS(apply_jacobi_cherednik([](double) { return cplx(1.0, 0.0); }, p, 5e-4, 1e-4), DomainError);
}

TEST_CASE("plancherel residual") {
    QuadConfig cfg;
    JacobiParams p(1.0, 0.5);
    auto z = plancherel_residual(FunctionSpec::zero(), p, cfg);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == cplx(0.0, 0.0));
    CHECK(z.rel_gap == 0.0);

    auto r = plancherel_residual(FunctionSpec::gaussian(1.0), p, cfg);
    CHECK(r.rel_gap <= 0.05);
    CHECK(r.lhs > 0.0);
}

TEST_CASE("plancherel lhs for the unit indicator") {
    QuadConfig cfg;
    cfg.truncation_lambda = 4.0;  // only lhs is checked here
    auto r = plancherel_residual(FunctionSpec::constant_one(FunctionDomain::unit_interval), JacobiParams(0.5, -0.5), cfg);
    CHECK(std::abs(r.lhs - (std::sinh(2.0) / 2.0 - 1.0) / 2.0) < 1e-10);
    CHECK(std::abs(r.lhs - 0.40672) < 1e-5);
}
