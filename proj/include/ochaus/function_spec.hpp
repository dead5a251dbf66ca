#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ochaus/errors.hpp"
#include "ochaus/params.hpp"
#include "ochaus/quad.hpp"

namespace ochaus {

enum class FunctionDomain { real_line, positive_halfline, unit_interval };
enum class Interp { linear, step, log_linear };

struct Interval {
    double lo;
    double hi;
    bool empty() const { return !(lo < hi); }
    double length() const { return hi - lo; }
};

Interval intersect(const Interval& a, const Interval& b);

/// Piecewise interpolation on a strictly increasing grid; 0 outside it.
/// log_linear falls back to linear on cells with a non-positive endpoint.
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, Interp rule, double x);

/// A test function on the real line. Outside its domain (and outside the
/// family's natural support) it is zero. Extremal families carry the Jacobi
/// parameters of the weight they are normalised against.
class FunctionSpec {
public:
    struct Gaussian { double scale; };         ///< exp(-(x/scale)^2)
    struct Bump { double center; double width; };  ///< exp(-1/(1-r^2)), r = (x-center)/width
    struct PowerCutoff { double exponent; };   ///< x^a on (0,1)
    struct ExtremalEps { double p; double eps; double alpha; double beta; };
    struct ExtremalDelta { double p; double delta; double alpha; double beta; };
    struct ExtremalZero { double p; double alpha; double beta; };
    struct ConstantOne {};
    struct Sampled { std::vector<double> xs; std::vector<double> ys; Interp rule; };

    using Family = std::variant<Gaussian, Bump, PowerCutoff, ExtremalEps, ExtremalDelta, ExtremalZero, ConstantOne,
                                Sampled>;

    static FunctionSpec gaussian(double scale, FunctionDomain d = FunctionDomain::real_line);
    static FunctionSpec bump(double center, double width, FunctionDomain d = FunctionDomain::real_line);
    static FunctionSpec power_cutoff(double exponent);
    /// x^{-1/p-eps} A(x)^{-1/p} on (1, inf); 0 < eps < 1.
    static FunctionSpec extremal_eps(double p, double eps, const JacobiParams& params);
    /// x^{delta-1/p} A(x)^{-1/p} on (0, 1); 0 < delta < 1/p.
    static FunctionSpec extremal_delta(double p, double delta, const JacobiParams& params);
    /// x^{-1/p-1} A(x)^{-1/p} on (1, inf); 0 < p < 1.
    static FunctionSpec extremal_zero(double p, const JacobiParams& params);
    static FunctionSpec constant_one(FunctionDomain d = FunctionDomain::real_line);
    /// Strictly increasing xs; zero outside [xs.front(), xs.back()].
    static FunctionSpec sampled(std::vector<double> xs, std::vector<double> ys, Interp rule = Interp::linear);
    static FunctionSpec zero();

    double operator()(double x) const;
    /// log |f(x)|, -inf where f vanishes.
    double log_abs(double x) const;
    /// f(x) * exp(log_scale) without forming either factor separately.
    double scaled(double x, double log_scale) const;
    /// |f(x)|^q A(x); exact (no cancellation) for the extremal families when q == p.
    double weighted_power(double x, double q, const JacobiParams& params) const;

    /// c such that f = g A^{-c} with g free of A: 1/p for an extremal family whose
    /// parameters equal `params`, otherwise 0.
    double weight_exponent(const JacobiParams& params) const;
    /// g(x) exp(log_shift) = f(x) A(x)^c exp(log_shift), c = weight_exponent(params).
    double reduced(double x, double log_shift, const JacobiParams& params) const;

    /// Closure of the set where f may be nonzero (may be infinite).
    Interval support() const;
    /// Spatial cutoff for integrals over an unbounded support.
    double tail_cutoff(const QuadConfig& cfg) const;

    FunctionSpec reflected() const;      ///< x -> f(-x)
    FunctionSpec scaled_by(double c) const;
    bool is_zero() const { return factor_ == 0.0; }
    bool is_even() const;

    const Family& family() const { return family_; }
    FunctionDomain domain() const { return domain_; }
    double factor() const { return factor_; }
    bool is_reflected() const { return reflected_; }

    /// Short label, e.g. "gaussian(1)" or "f_eps(p=2,eps=0.1)".
    std::string label() const;

    nlohmann::json to_json() const;
    static FunctionSpec from_json(const nlohmann::json& j);

    /// CLI syntax: gaussian:S | bump:C:W | power:A | eps:P:E | delta:P:D | zero:P | one[@unit|@half]
    /// (the extremal families use `params`).
    static FunctionSpec parse(const std::string& text, const JacobiParams& params);

private:
    FunctionSpec(Family f, FunctionDomain d) : family_(std::move(f)), domain_(d) {}

    double raw(double x) const;          // family value, domain ignored, not reflected
    double raw_log_abs(double x) const;  // matching log |.|
    bool in_domain(double x) const;
    Interval family_support() const;

    Family family_;
    FunctionDomain domain_;
    double factor_ = 1.0;
    bool reflected_ = false;
};

}  // namespace ochaus
