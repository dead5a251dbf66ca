#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ochaus/function_spec.hpp"
#include "ochaus/quad.hpp"

namespace ochaus {

struct L1Status {
    bool finite = true;
    double value = 0.0;  ///< +inf when !finite
    double err = 0.0;
};

/// Non-negative kernel phi on (0, inf).
class KernelSpec {
public:
    struct Hardy {};         ///< chi_(1,inf)(t) / t
    struct AdjointHardy {};  ///< chi_(0,1)(t)
    struct Hlp {};           ///< 1 / max(1, t)
    struct Cesaro { double gamma; };           ///< gamma (1-t)^{gamma-1} on (0,1)
    struct RiemannLiouville { double mu; };    ///< (1-1/t)^{mu-1} / (t Gamma(mu)) on (1,inf)
    struct PowerCutoff { double exponent; double lo; double hi; };  ///< t^e on (lo, hi)
    struct Tabulated { std::vector<double> ts; std::vector<double> vals; Interp rule; };

    using Variant = std::variant<Hardy, AdjointHardy, Hlp, Cesaro, RiemannLiouville, PowerCutoff, Tabulated>;

    static KernelSpec hardy();
    static KernelSpec adjoint_hardy();
    static KernelSpec hlp();
    static KernelSpec cesaro(double gamma);
    static KernelSpec riemann_liouville(double mu);
    /// hi may be +inf.
    static KernelSpec power_cutoff(double exponent, double lo, double hi);
    /// ts strictly increasing inside (0, inf), vals >= 0.
    static KernelSpec tabulated(std::vector<double> ts, std::vector<double> vals, Interp rule = Interp::linear);

    double operator()(double t) const;
    Interval support() const;
    /// Interior points where phi is not smooth (integration breakpoints).
    std::vector<double> breakpoints() const;
    /// True when phi has an integrable singularity at the named end of its support.
    bool singular_at(double t) const;

    /// Integral of phi over its support; computed once per QuadConfig.
    L1Status l1_status(const QuadConfig& cfg) const;

    KernelSpec scaled_by(double c) const;
    double factor() const { return factor_; }
    const Variant& variant() const { return variant_; }
    /// hardy, adjoint_hardy, hlp, cesaro, riemann_liouville, power_cutoff, tabulated
    std::string kind() const;
    std::string label() const;

    nlohmann::json to_json() const;
    static KernelSpec from_json(const nlohmann::json& j);
    /// hardy | adjoint-hardy | hlp | cesaro:G | rl:MU | powercut:EXPON:A:B (B may be "inf")
    static KernelSpec parse(const std::string& text);

private:
    explicit KernelSpec(Variant v);

    struct Cache {
        std::mutex mu;
        std::optional<QuadConfig> cfg;
        L1Status status;
    };

    Variant variant_;
    double factor_ = 1.0;
    std::shared_ptr<Cache> cache_;
};

}  // namespace ochaus
