#include "ochaus/kernel.hpp"

#include <cmath>
#include <sstream>

#include "ochaus/errors.hpp"

namespace ochaus {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double parse_bound(const std::string& s) {
    if (s == "inf" || s == "+inf") return kInf;
    return std::stod(s);
}

}  // namespace

KernelSpec::KernelSpec(Variant v) : variant_(std::move(v)), cache_(std::make_shared<Cache>()) {}

KernelSpec KernelSpec::hardy() { return KernelSpec(Hardy{}); }
KernelSpec KernelSpec::adjoint_hardy() { return KernelSpec(AdjointHardy{}); }
KernelSpec KernelSpec::hlp() { return KernelSpec(Hlp{}); }

KernelSpec KernelSpec::cesaro(double gamma) {
    if (!(gamma > 0.0)) throw DomainError("cesaro: gamma must be > 0");
    return KernelSpec(Cesaro{gamma});
}

KernelSpec KernelSpec::riemann_liouville(double mu) {
    if (!(mu > 0.0)) throw DomainError("riemann_liouville: order must be > 0");
    return KernelSpec(RiemannLiouville{mu});
}

KernelSpec KernelSpec::power_cutoff(double exponent, double lo, double hi) {
    if (!(lo >= 0.0) || !(lo < hi)) throw DomainError("power_cutoff: need 0 <= lo < hi");
    if (std::isnan(exponent)) throw DomainError("power_cutoff: exponent is NaN");
    if (lo == 0.0 && !(exponent > -1.0)) throw DomainError("power_cutoff: t^e is not integrable at 0 for e <= -1");
    return KernelSpec(PowerCutoff{exponent, lo, hi});
}

KernelSpec KernelSpec::tabulated(std::vector<double> ts, std::vector<double> vals, Interp rule) {
    if (ts.size() < 2 || ts.size() != vals.size()) throw DomainError("tabulated kernel: need >= 2 (t, phi) pairs");
    if (!(ts.front() >= 0.0)) throw DomainError("tabulated kernel: samples must lie in [0, inf)");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i > 0 && !(ts[i] > ts[i - 1])) throw DomainError("tabulated kernel: grid must be strictly increasing");
        if (!(vals[i] >= 0.0) || !std::isfinite(vals[i])) {
            throw DomainError("tabulated kernel: values must be finite and >= 0");
        }
    }
    return KernelSpec(Tabulated{std::move(ts), std::move(vals), rule});
}

double KernelSpec::operator()(double t) const {
    if (!(t > 0.0)) return 0.0;
    const double v = std::visit(
        overloaded{
            [&](const Hardy&) { return t > 1.0 ? 1.0 / t : 0.0; },
            [&](const AdjointHardy&) { return t < 1.0 ? 1.0 : 0.0; },
            [&](const Hlp&) { return 1.0 / std::max(1.0, t); },
            [&](const Cesaro& c) { return t < 1.0 ? c.gamma * std::pow(1.0 - t, c.gamma - 1.0) : 0.0; },
            [&](const RiemannLiouville& r) {
                if (!(t > 1.0)) return 0.0;
                // (1 - 1/t)^{mu-1} / t / Gamma(mu), 1 - 1/t formed as (t-1)/t
                return std::exp((r.mu - 1.0) * std::log((t - 1.0) / t) - std::log(t) - std::lgamma(r.mu));
            },
            [&](const PowerCutoff& p) { return (t > p.lo && t < p.hi) ? std::pow(t, p.exponent) : 0.0; },
            [&](const Tabulated& tb) { return interpolate(tb.ts, tb.vals, tb.rule, t); },
        },
        variant_);
    return factor_ * v;
}

Interval KernelSpec::support() const {
    return std::visit(overloaded{
                          [](const Hardy&) { return Interval{1.0, kInf}; },
                          [](const AdjointHardy&) { return Interval{0.0, 1.0}; },
                          [](const Hlp&) { return Interval{0.0, kInf}; },
                          [](const Cesaro&) { return Interval{0.0, 1.0}; },
                          [](const RiemannLiouville&) { return Interval{1.0, kInf}; },
                          [](const PowerCutoff& p) { return Interval{p.lo, p.hi}; },
                          [](const Tabulated& tb) { return Interval{tb.ts.front(), tb.ts.back()}; },
                      },
                      variant_);
}

std::vector<double> KernelSpec::breakpoints() const {
    if (std::holds_alternative<Hlp>(variant_)) return {1.0};
    if (const auto* tb = std::get_if<Tabulated>(&variant_)) {
        if (tb->rule == Interp::step) return {tb->ts.begin() + 1, tb->ts.end() - 1};
    }
    return {};
}

bool KernelSpec::singular_at(double t) const {
    return std::visit(overloaded{
                          [&](const Cesaro& c) { return t == 1.0 && c.gamma < 1.0; },
                          [&](const RiemannLiouville& r) { return t == 1.0 && r.mu < 1.0; },
                          [&](const PowerCutoff& p) { return t == 0.0 && p.lo == 0.0 && p.exponent < 0.0; },
                          [](const auto&) { return false; },
                      },
                      variant_);
}

L1Status KernelSpec::l1_status(const QuadConfig& cfg) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->cfg && *cache_->cfg == cfg) return cache_->status;

    const Interval s = support();
    std::vector<double> cuts{s.lo};
    for (double b : breakpoints()) {
        if (b > s.lo && b < s.hi) cuts.push_back(b);
    }
    cuts.push_back(s.hi);
    const RealIntegrand f = [this](double t) { return (*this)(t); };
    L1Status st;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto r = integrate_interval(f, cuts[i], cuts[i + 1], cfg, cfg.truncation_t);
        if (r.divergent) {
            st = {false, kInf, kInf};
            break;
        }
        st.value += r.value;
        st.err += r.err_estimate;
    }
    cache_->cfg = cfg;
    cache_->status = st;
    return st;
}

KernelSpec KernelSpec::scaled_by(double c) const {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("kernel scale must be finite and >= 0");
    KernelSpec out(variant_);
    out.factor_ = factor_ * c;
    return out;
}

std::string KernelSpec::kind() const {
    return std::visit(overloaded{
                          [](const Hardy&) { return "hardy"; },
                          [](const AdjointHardy&) { return "adjoint_hardy"; },
                          [](const Hlp&) { return "hlp"; },
                          [](const Cesaro&) { return "cesaro"; },
                          [](const RiemannLiouville&) { return "riemann_liouville"; },
                          [](const PowerCutoff&) { return "power_cutoff"; },
                          [](const Tabulated&) { return "tabulated"; },
                      },
                      variant_);
}

std::string KernelSpec::label() const {
    std::string base = std::visit(
        overloaded{
            [](const Cesaro& c) { return "cesaro(" + num(c.gamma) + ")"; },
            [](const RiemannLiouville& r) { return "rl(" + num(r.mu) + ")"; },
            [](const PowerCutoff& p) { return "powercut(" + num(p.exponent) + "," + num(p.lo) + "," + num(p.hi) + ")"; },
            [](const Tabulated& tb) { return "tabulated(" + std::to_string(tb.ts.size()) + ")"; },
            [this](const auto&) { return kind(); },
        },
        variant_);
    if (factor_ != 1.0) base = num(factor_) + "*" + base;
    return base;
}

nlohmann::json KernelSpec::to_json() const {
    nlohmann::json j{{"kind", kind()}, {"factor", factor_}};
    std::visit(overloaded{
                   [&](const Cesaro& c) { j["gamma"] = c.gamma; },
                   [&](const RiemannLiouville& r) { j["mu"] = r.mu; },
                   [&](const PowerCutoff& p) {
                       j["exponent"] = p.exponent;
                       j["lo"] = p.lo;
                       // JSON has no infinity
                       j["hi"] = std::isinf(p.hi) ? nlohmann::json("inf") : nlohmann::json(p.hi);
                   },
                   [&](const Tabulated& tb) {
                       j["ts"] = tb.ts;
                       j["vals"] = tb.vals;
                       j["rule"] = tb.rule == Interp::step ? "step"
                                   : tb.rule == Interp::log_linear ? "log_linear"
                                                                   : "linear";
                   },
                   [](const auto&) {},
               },
               variant_);
    return j;
}

KernelSpec KernelSpec::from_json(const nlohmann::json& j) {
    const std::string k = j.at("kind").get<std::string>();
    KernelSpec out = [&] {
        if (k == "hardy") return hardy();
        if (k == "adjoint_hardy") return adjoint_hardy();
        if (k == "hlp") return hlp();
        if (k == "cesaro") return cesaro(j.at("gamma").get<double>());
        if (k == "riemann_liouville") return riemann_liouville(j.at("mu").get<double>());
        if (k == "power_cutoff") {
            const auto& hi = j.at("hi");
            return power_cutoff(j.at("exponent").get<double>(), j.at("lo").get<double>(),
                                hi.is_string() ? parse_bound(hi.get<std::string>()) : hi.get<double>());
        }
        if (k == "tabulated") {
            const std::string rule = j.value("rule", std::string("linear"));
            const Interp r = rule == "step" ? Interp::step : rule == "log_linear" ? Interp::log_linear : Interp::linear;
            return tabulated(j.at("ts").get<std::vector<double>>(), j.at("vals").get<std::vector<double>>(), r);
        }
        throw DomainError("unknown kernel kind '" + k + "'");
    }();
    const double c = j.value("factor", 1.0);
    return c == 1.0 ? out : out.scaled_by(c);
}

KernelSpec KernelSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.empty()) throw DomainError("empty kernel spec");
    auto arg = [&](std::size_t i) {
        if (i >= parts.size()) throw DomainError("kernel spec '" + text + "' is missing parameters");
        return parse_bound(parts[i]);
    };
    const std::string& name = parts[0];
    if (name == "hardy") return hardy();
    if (name == "adjoint-hardy" || name == "adjoint_hardy") return adjoint_hardy();
    if (name == "hlp") return hlp();
    if (name == "cesaro") return cesaro(arg(1));
    if (name == "rl") return riemann_liouville(arg(1));
    if (name == "powercut") return power_cutoff(arg(1), arg(2), arg(3));
    throw DomainError("unknown kernel '" + name + "'");
}

}  // namespace ochaus
