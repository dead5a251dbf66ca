#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ochaus/errors.hpp"
#include "ochaus/quad.hpp"

using namespace ochaus;

namespace {

// lambdas convert to both integrand types, so pin the real overloads
IntegralResult<double> fin(const RealIntegrand& f, double a, double b, const QuadConfig& c) {
    return integrate_finite(f, a, b, c);
}
IntegralResult<double> semi(const RealIntegrand& f, double a, const QuadConfig& c) {
    return integrate_to_infinity(f, a, c);
}
IntegralResult<double> line(const RealIntegrand& f, const QuadConfig& c, double cut = 0.0, double r = 0.0) {
    return integrate_real_line(f, c, cut, r);
}
IntegralResult<double> span(const RealIntegrand& f, double lo, double hi, const QuadConfig& c, double cut) {
    return integrate_interval(f, lo, hi, c, cut);
}

}  // namespace

TEST_CASE("integrate_finite closed forms") {
    QuadConfig cfg;
    auto r = fin([](double x) { return x; }, 0.0, 1.0, cfg);
    CHECK(std::abs(r.value - 0.5) < 1e-14);
    CHECK(r.err_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * 0.5));

    r = fin([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg);
    CHECK(std::abs(r.value - 2.0) < 2.0 * cfg.rel_tol);
    CHECK_FALSE(r.divergent);

    r = fin([](double x) { return std::pow(std::sinh(x), 2); }, 0.0, 1.0, cfg);
    double exact = (std::sinh(2.0) / 2.0 - 1.0) / 2.0;
    CHECK(std::abs(r.value - exact) < 1e-13);
    CHECK(std::abs(r.value - 0.40672) < 1e-5);
}

TEST_CASE("integrate_finite complex") {
    QuadConfig cfg;
    auto r = integrate_finite(ComplexIntegrand([](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }), 0.0,
                              std::numbers::pi, cfg);
    CHECK(std::abs(r.value - std::complex<double>(0.0, 2.0)) < 1e-12);
}

TEST_CASE("integrate_finite divergence and budget") {
    QuadConfig cfg;
    auto r = fin([](double x) { return 1.0 / x; }, 0.0, 1.0, cfg);
    CHECK(r.divergent);
    CHECK(std::isinf(r.value));

    QuadConfig tight;
    tight.max_subdivisions = 3;
    tight.rel_tol = 1e-14;
    tight.abs_tol = 1e-300;
    CHECK_THROWS_AS(fin([](double x) { return std::sin(200.0 * x) * std::exp(x); }, 0.0, 10.0, tight),
                    QuadratureBudgetError);
}

TEST_CASE("integrate_to_infinity") {
    QuadConfig cfg;
    cfg.truncation_t = 1e4;
    auto r = semi([](double x) { return std::exp(-x); }, 0.0, cfg);
    CHECK(std::abs(r.value - 1.0) < 1e-10);
    CHECK_FALSE(r.divergent);

    r = semi([](double t) { return std::pow(t, -2.5); }, 1.0, cfg);
    // truncation at 1e4 leaves (2/3) 1e-6 out, which the tail estimate must cover
    CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-5);
    CHECK(std::abs(r.value - 2.0 / 3.0) <= r.err_estimate + 1e-10);
    CHECK_FALSE(r.divergent);

    r = semi([](double t) { return 1.0 / t; }, 1.0, cfg);
    CHECK(r.divergent);
}

TEST_CASE("integrate_real_line") {
    QuadConfig cfg;
    auto r = line([](double x) { return std::exp(-x * x); }, cfg);
    CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) < 1e-10);

    r = line([](double x) { return x * std::exp(-x * x); }, cfg);
    CHECK(std::abs(r.value) < 1e-12);

    r = line([](double x) { return std::abs(x) <= 1.0 ? 1.0 : 0.0; }, cfg);
    CHECK(std::abs(r.value - 2.0) < 2.0 * cfg.rel_tol);

    // excision adds its window to the error (to first order)
    r = line([](double x) { return std::exp(-x * x); }, cfg, 0.0, 1e-3);
    CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) <= 1.001 * r.err_estimate);
}

TEST_CASE("integrate_interval") {
    QuadConfig cfg;
    auto r = span([](double x) { return std::exp(-std::abs(x)); }, -kInf, 2.0, cfg, 60.0);
    CHECK(std::abs(r.value - (2.0 - std::exp(-2.0))) < 2.0 * cfg.rel_tol);
    r = span([](double x) { return x * x; }, -1.0, 2.0, cfg, 60.0);
    CHECK(std::abs(r.value - 3.0) < 1e-12);
}

TEST_CASE("halving rel_tol does not worsen closed forms") {
    QuadConfig coarse;
    coarse.rel_tol = 1e-4;
    QuadConfig fine = coarse;
    fine.rel_tol = 5e-5;
    auto f = [](double x) { return std::pow(x, -0.5) * std::exp(-x); };
    double exact = std::sqrt(std::numbers::pi) * std::erf(1.0);
    double e1 = std::abs(fin(f, 0.0, 1.0, coarse).value - exact);
    double e2 = std::abs(fin(f, 0.0, 1.0, fine).value - exact);
    CHECK(e2 <= e1 + 1e-15);
}

TEST_CASE("linearity on random polynomials") {
    QuadConfig cfg;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        double c[4], d[4];
        for (int i = 0; i < 4; ++i) c[i] = u(rng), d[i] = u(rng);
        double a = u(rng), b = u(rng);
        auto pf = [&](double x) { return c[0] + x * (c[1] + x * (c[2] + x * c[3])); };
        auto pg = [&](double x) { return d[0] + x * (d[1] + x * (d[2] + x * d[3])); };
        auto rf = fin(pf, -1.0, 3.0, cfg);
        auto rg = fin(pg, -1.0, 3.0, cfg);
        auto rs = fin([&](double x) { return a * pf(x) + b * pg(x); }, -1.0, 3.0, cfg);
        double err = std::abs(a) * rf.err_estimate + std::abs(b) * rg.err_estimate + rs.err_estimate + 1e-12;
        CHECK(std::abs(rs.value - (a * rf.value + b * rg.value)) <= err);
    }
}

TEST_CASE("config validation") {
    QuadConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.extremum_grid = 8;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = QuadConfig{};
    cfg.rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
