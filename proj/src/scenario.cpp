#include "ochaus/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <thread>

#include "ochaus/bounds.hpp"
#include "ochaus/config_file.hpp"
#include "ochaus/errors.hpp"
#include "ochaus/hausdorff.hpp"
#include "ochaus/octransform.hpp"
#include "ochaus/specfun.hpp"

namespace ochaus {

namespace {

using nlohmann::json;

const std::vector<std::pair<TheoremId, std::string>>& theorem_names() {
    static const std::vector<std::pair<TheoremId, std::string>> names{
        {TheoremId::T_L1, "T_L1"},
        {TheoremId::T_COMM_DIAG, "T_COMM_DIAG"},
        {TheoremId::T_LP_ASUP, "T_LP_ASUP"},
        {TheoremId::T_LP_AINF, "T_LP_AINF"},
        {TheoremId::C_LP_SANDWICH, "C_LP_SANDWICH"},
        {TheoremId::T_LPLQ, "T_LPLQ"},
        {TheoremId::T_INTERVAL_E, "T_INTERVAL_E"},
        {TheoremId::T_GRAND_UB, "T_GRAND_UB"},
        {TheoremId::T_GRAND_LB, "T_GRAND_LB"},
        {TheoremId::T_QB_UB, "T_QB_UB"},
        {TheoremId::T_QB_LB, "T_QB_LB"},
        {TheoremId::L_POWER, "L_POWER"},
        {TheoremId::P_PLANCHEREL, "P_PLANCHEREL"},
        {TheoremId::P_EIGEN, "P_EIGEN"},
        {TheoremId::D_SCALING_DIAG, "D_SCALING_DIAG"},
    };
    return names;
}

}  // namespace

const std::vector<TheoremId>& all_theorem_ids() {
    static const std::vector<TheoremId> ids = [] {
        std::vector<TheoremId> out;
        for (const auto& [id, name] : theorem_names()) out.push_back(id);
        return out;
    }();
    return ids;
}

std::string to_string(TheoremId id) {
    for (const auto& [i, name] : theorem_names()) {
        if (i == id) return name;
    }
    return "?";
}

TheoremId parse_theorem_id(const std::string& name) {
    for (const auto& [i, n] : theorem_names()) {
        if (n == name) return i;
    }
    throw DomainError("unknown theorem id '" + name + "'");
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::diagnostic_recorded: return "diagnostic_recorded";
        case Status::vacuous: return "vacuous";
        case Status::divergent: return "divergent";
    }
    return "?";
}

json VerifyScenario::to_json() const {
    json j;
    j["key"] = key;
    j["theorem_id"] = to_string(theorem_id);
    j["params"] = {{"alpha", params.alpha()}, {"beta", params.beta()}};
    j["kernel"] = kernel ? kernel->to_json() : json(nullptr);
    j["functions"] = json::array();
    for (const auto& f : functions) j["functions"].push_back(f.to_json());
    json e{{"p", exponents.p}, {"eps", exponents.eps}, {"delta", exponents.delta}, {"s", exponents.s}};
    e["q"] = exponents.q ? json(*exponents.q) : json(nullptr);
    j["exponents"] = e;
    j["grids"] = {{"lambdas", grids.lambdas}, {"xs", grids.xs}, {"ts", grids.ts}};
    j["cfg"] = config_to_json(cfg);
    j["seed"] = seed;
    return j;
}

VerifyScenario VerifyScenario::from_json(const json& j) {
    VerifyScenario s;
    s.key = j.at("key").get<std::string>();
    s.theorem_id = parse_theorem_id(j.at("theorem_id").get<std::string>());
    const auto& p = j.at("params");
    s.params = JacobiParams(p.at("alpha").get<double>(), p.at("beta").get<double>());
    if (j.contains("kernel") && !j["kernel"].is_null()) s.kernel = KernelSpec::from_json(j["kernel"]);
    if (j.contains("functions")) {
        for (const auto& f : j["functions"]) s.functions.push_back(FunctionSpec::from_json(f));
    }
    if (j.contains("exponents")) {
        const auto& e = j["exponents"];
        s.exponents.p = e.value("p", 2.0);
        if (e.contains("q") && !e["q"].is_null()) s.exponents.q = e["q"].get<double>();
        s.exponents.eps = e.value("eps", std::vector<double>{});
        s.exponents.delta = e.value("delta", std::vector<double>{});
        s.exponents.s = e.value("s", std::vector<double>{});
    }
    if (j.contains("grids")) {
        const auto& g = j["grids"];
        s.grids.lambdas = g.value("lambdas", std::vector<double>{});
        s.grids.xs = g.value("xs", std::vector<double>{});
        s.grids.ts = g.value("ts", std::vector<double>{});
    }
    if (j.contains("cfg")) s.cfg = config_from_json(j["cfg"]);
    s.seed = j.value("seed", std::uint64_t{0});
    return s;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<FunctionSpec> random_step_functions(std::uint64_t seed, int count) {
    std::uint64_t state = seed;
    auto uniform = [&] { return double(splitmix64(state) >> 11) * 0x1.0p-53; };
    std::vector<FunctionSpec> out;
    for (int i = 0; i < count; ++i) {
        const int cells = 2 + int(splitmix64(state) % 15);
        std::vector<double> xs{0.0};
        std::vector<double> ys;
        double y = 10.0 * uniform();
        for (int c = 0; c < cells; ++c) {
            xs.push_back(xs.back() + 0.05 + 2.0 * uniform());
            ys.push_back(y);
            y *= uniform();
        }
        ys.push_back(ys.back());
        out.push_back(FunctionSpec::sampled(xs, ys, Interp::step));
    }
    return out;
}

namespace {

constexpr double kFloor = 1e-6;
const Interval kLine{-kInf, kInf};
const Interval kUnit{0.0, 1.0};

// One inequality instance inside a scenario.
struct Item {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double qerr = 0.0;
    double tol = 0.0;
    Status status = Status::fail;
    std::string note;
};

double safe_ratio(double lhs, double rhs) {
    if (std::isinf(lhs) && std::isinf(rhs)) return kInf;
    if (rhs == 0.0) return lhs == 0.0 ? 0.0 : kInf;
    return lhs / rhs;
}

double tolerance(double rhs, double qerr) {
    if (rhs == 0.0 || std::isinf(rhs)) return kFloor;
    return 10.0 * qerr / std::abs(rhs) + kFloor;
}

// lhs <= rhs (1 + tol); an infinite constant makes the statement vacuous.
Item upper(std::string label, double lhs, double rhs, double qerr) {
    Item it{std::move(label), lhs, rhs, qerr, tolerance(rhs, qerr), Status::fail, ""};
    if (std::isinf(rhs)) {
        it.status = Status::vacuous;
        it.note = "constant is infinite";
    } else if (std::isinf(lhs)) {
        it.note = "measured side diverged";
    } else if (rhs == 0.0) {
        it.status = lhs <= 10.0 * qerr ? Status::pass : Status::fail;
    } else {
        it.status = lhs <= rhs * (1.0 + it.tol) ? Status::pass : Status::fail;
    }
    return it;
}

// lhs >= rhs (1 - tol); a zero bound is vacuous, an infinite lhs satisfies any bound.
Item lower(std::string label, double lhs, double rhs, double qerr) {
    Item it{std::move(label), lhs, rhs, qerr, tolerance(rhs, qerr), Status::fail, ""};
    if (std::isinf(lhs)) {
        it.status = Status::pass;
        it.note = "measured side is infinite";
    } else if (rhs == 0.0) {
        it.status = Status::vacuous;
        it.note = "bound is zero";
    } else if (std::isinf(rhs)) {
        it.note = "bound is infinite";
    } else {
        it.status = lhs >= rhs * (1.0 - it.tol) ? Status::pass : Status::fail;
    }
    return it;
}

// Fixed threshold: pass iff lhs <= rhs.
Item threshold(std::string label, double lhs, double rhs, double qerr) {
    Item it{std::move(label), lhs, rhs, qerr, 0.0, Status::fail, ""};
    it.status = lhs <= rhs ? Status::pass : Status::fail;
    return it;
}

Item vacuous(std::string label, std::string why) {
    Item it;
    it.label = std::move(label);
    it.status = Status::vacuous;
    it.note = std::move(why);
    return it;
}

json item_json(const Item& it) {
    return json{{"label", it.label},       {"lhs", it.lhs},   {"rhs", it.rhs},
                {"quadrature_err", it.qerr}, {"tolerance", it.tol}, {"status", to_string(it.status)},
                {"note", it.note}};
}

// Any fail fails the scenario; otherwise any pass passes it. The reported numbers
// come from the tightest decided item (largest lhs/rhs for upper, smallest for lower).
void finalize(VerifyReport& r, const std::vector<Item>& items, bool is_upper, bool keep_items = true) {
    r.detail["items"] = json::array();
    if (keep_items) {
        for (const auto& it : items) r.detail["items"].push_back(item_json(it));
    }
    bool any_fail = false;
    bool any_pass = false;
    const Item* pick = nullptr;
    auto key = [&](const Item& it) {
        const double q = safe_ratio(it.lhs, it.rhs);
        return is_upper ? q : -q;
    };
    for (const auto& it : items) {
        if (it.status == Status::fail) any_fail = true;
        if (it.status == Status::pass) any_pass = true;
    }
    for (const auto& it : items) {
        const bool decided = it.status == Status::pass || it.status == Status::fail;
        if (!decided) continue;
        if (any_fail && it.status != Status::fail) continue;
        if (!pick || key(it) > key(*pick)) pick = &it;
    }
    if (!pick && !items.empty()) pick = &items.front();
    if (pick) {
        r.lhs = pick->lhs;
        r.rhs = pick->rhs;
        r.ratio = safe_ratio(pick->lhs, pick->rhs);
        r.tolerance = pick->tol;
        r.err.quadrature = pick->qerr;
        r.err.model = std::isfinite(pick->rhs) ? kFloor * std::abs(pick->rhs) : 0.0;
        r.message = pick->label + (pick->note.empty() ? "" : ": " + pick->note);
    }
    r.status = any_fail ? Status::fail : any_pass ? Status::pass : Status::vacuous;
}

const KernelSpec& need_kernel(const VerifyScenario& s) {
    if (!s.kernel) throw DomainError(to_string(s.theorem_id) + " needs a kernel");
    return *s.kernel;
}

double product_err(double a, double ea, double b, double eb) {
    return std::abs(a) * eb + std::abs(b) * ea + ea * eb;
}


const std::vector<FunctionSpec>& need_functions(const VerifyScenario& s) {
    if (s.functions.empty()) throw DomainError(to_string(s.theorem_id) + " needs at least one function");
    return s.functions;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// ratio a/b with its propagated error
std::pair<double, double> quotient(const NormResult& a, const NormResult& b) {
    if (std::isinf(a.value)) return {kInf, 0.0};
    const double q = a.value / b.value;
    return {q, a.err_estimate / b.value + std::abs(q) * b.err_estimate / b.value};
}

void run_l1(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const L1Status l1 = k.l1_status(s.cfg);
    if (!l1.finite) throw DomainError("kernel " + k.label() + " is not in L1");
    r.detail["phi_l1"] = l1.value;
    std::vector<Item> items;
    for (const auto& f : need_functions(s)) {
        const auto hf = hausdorff_lp_norm(k, f, 1.0, s.params, kLine, s.cfg);
        const auto fn = lp_norm(f, 1.0, s.params, kLine, s.cfg);
        items.push_back(upper(f.label(), hf.value, l1.value * fn.value,
                              hf.err_estimate + product_err(l1.value, l1.err, fn.value, fn.err_estimate)));
    }
    finalize(r, items, true);
}

void run_comm(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const FunctionSpec& f = need_functions(s).front();
    const std::vector<double> lambdas = s.grids.lambdas.empty() ? std::vector<double>{0.0, 1.0} : s.grids.lambdas;
    QuadConfig fine = s.cfg;
    fine.rel_tol /= 100.0;
    fine.abs_tol /= 100.0;
    double gap = 0.0;
    double shift = 0.0;
    double qerr = 0.0;
    r.detail["rows"] = json::array();
    for (double l : lambdas) {
        const auto c = commutation_residual(k, f, s.params, l, s.cfg);
        const auto c2 = commutation_residual(k, f, s.params, l, fine);
        r.detail["rows"].push_back({{"lambda", l},
                                    {"lhs", {c.lhs.real(), c.lhs.imag()}},
                                    {"rhs", {c.rhs.real(), c.rhs.imag()}},
                                    {"gap", c.abs_gap},
                                    {"gap_refined", c2.abs_gap},
                                    {"quadrature_err", c.lhs_err + c.rhs_err}});
        gap = std::max(gap, c.abs_gap);
        shift = std::max(shift, std::abs(c.abs_gap - c2.abs_gap));
        qerr = std::max(qerr, c.lhs_err + c.rhs_err);
    }
    r.lhs = gap;
    r.rhs = shift;
    r.ratio = safe_ratio(gap, shift);
    r.err.quadrature = qerr;
    r.status = Status::diagnostic_recorded;
    r.message = gap > 10.0 * (shift + qerr) ? "gap stable under refinement" : "gap within quadrature noise";
}

void run_lp_asup(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    const auto a = a_constants(k, p, s.params, s.cfg).sup;
    r.detail["a_sup"] = a.value;
    std::vector<Item> items;
    for (const auto& f : need_functions(s)) {
        if (std::isinf(a.value)) {
            items.push_back(vacuous(f.label(), "A_sup is infinite"));
            continue;
        }
        const auto hf = hausdorff_lp_norm(k, f, p, s.params, kLine, s.cfg);
        const auto fn = lp_norm(f, p, s.params, kLine, s.cfg);
        items.push_back(upper(f.label(), hf.value, a.value * fn.value,
                              hf.err_estimate + product_err(a.value, a.err_estimate, fn.value, fn.err_estimate)));
    }
    finalize(r, items, true);
}

// ||H f_eps||_p / ||f_eps||_p against the bound it is shown to reach
Item eps_item(const VerifyScenario& s, const KernelSpec& k, double p, double e) {
    const auto fe = extremal_function(ExtremalKind::eps, p, e, s.params);
    const auto hf = hausdorff_lp_norm(k, fe, p, s.params, kLine, s.cfg);
    const auto fn = lp_norm(fe, p, s.params, kLine, s.cfg);
    const auto [q, qe] = quotient(hf, fn);
    const auto bound = eps_witness_bound(k, p, e, s.params, s.cfg);
    return lower("eps=" + num(e), q, bound.value, qe + bound.err_estimate);
}

std::vector<double> eps_list(const VerifyScenario& s) {
    return s.exponents.eps.empty() ? std::vector<double>{0.2, 0.1, 0.05} : s.exponents.eps;
}

void run_lp_ainf(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    const auto a = a_constants(k, p, s.params, s.cfg).inf;
    r.detail["a_inf"] = a.value;
    std::vector<Item> items;
    for (double e : eps_list(s)) {
        if (!(e > 0.0)) throw DomainError("eps must be positive");
        items.push_back(eps_item(s, k, p, e));
    }
    finalize(r, items, false);
}

void run_sandwich(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    const auto ts = s.grids.ts.empty() ? geometric_grid(1e-3, 1e3, 400) : s.grids.ts;
    const double spread = ratio_spread(k, s.params, ts, s.cfg);
    r.detail["spread"] = spread;
    std::vector<Item> items;
    if (std::isinf(spread)) {
        items.push_back(vacuous("spread", "sup/inf of A(u)/A(tu) unbounded on supp phi"));
        finalize(r, items, true);
        return;
    }
    const auto a = a_constants(k, p, s.params, s.cfg).sup;
    r.detail["a_sup"] = a.value;
    for (const auto& f : s.functions) {
        const auto hf = hausdorff_lp_norm(k, f, p, s.params, kLine, s.cfg);
        const auto fn = lp_norm(f, p, s.params, kLine, s.cfg);
        const auto [q, qe] = quotient(hf, fn);
        items.push_back(upper(f.label(), q, a.value, qe + a.err_estimate));
    }
    const double floor = std::pow(spread, -(1.0 - 1.0 / p)) * a.value;
    for (double e : eps_list(s)) {
        Item it = eps_item(s, k, p, e);
        items.push_back(lower(it.label + " vs sandwich floor", it.lhs, floor, it.qerr + a.err_estimate));
    }
    finalize(r, items, true);
}

void run_lplq(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    if (!s.exponents.q) throw DomainError("T_LPLQ needs q");
    const double q = *s.exponents.q;
    if (!(1.0 < q && q < p)) throw DomainError("T_LPLQ needs 1 < q < p");
    const auto c = lp_lq_constant(k, p, q, s.params, s.cfg);
    r.detail["constant"] = c.value;
    std::vector<Item> items;
    for (const auto& f : need_functions(s)) {
        if (std::isinf(c.value)) {
            items.push_back(vacuous(f.label(), "constant is infinite"));
            continue;
        }
        const auto hf = hausdorff_lp_norm(k, f, q, s.params, kLine, s.cfg);
        const auto fn = lp_norm(f, p, s.params, kLine, s.cfg);
        items.push_back(upper(f.label(), hf.value, c.value * fn.value,
                              hf.err_estimate + product_err(c.value, c.err_estimate, fn.value, fn.err_estimate)));
    }
    finalize(r, items, true);
}

// A(1)^{-(1-1/p)} E(phi, p / (1 - delta p))
NormResult delta_floor(const VerifyScenario& s, const KernelSpec& k, double p, double d) {
    auto e = e_constant(k, p / (1.0 - d * p), s.cfg);
    const double m = std::pow(weight_a(s.params, 1.0), -(1.0 - 1.0 / p));
    e.value *= m;
    e.err_estimate *= m;
    return e;
}

void run_interval(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    const auto e = e_constant(k, p, s.cfg);
    const double m = std::pow(weight_a(s.params, 1.0), 1.0 - 1.0 / p);
    r.detail["E"] = e.value;
    if (s.functions.empty() && s.exponents.delta.empty()) throw DomainError("T_INTERVAL_E needs functions or delta");
    std::vector<Item> items;
    for (const auto& f : s.functions) {
        const auto hf = hausdorff_lp_norm(k, f, p, s.params, kUnit, s.cfg);
        const auto fn = lp_norm(f, p, s.params, kUnit, s.cfg);
        items.push_back(upper(f.label(), hf.value, m * e.value * fn.value,
                              hf.err_estimate + m * product_err(e.value, e.err_estimate, fn.value, fn.err_estimate)));
    }
    for (double d : s.exponents.delta) {
        if (!(d > 0.0 && d < 1.0 / p)) throw DomainError("delta must lie in (0, 1/p)");
        const auto fd = extremal_function(ExtremalKind::delta, p, d, s.params);
        const auto [q, qe] = quotient(hausdorff_lp_norm(k, fd, p, s.params, kUnit, s.cfg),
                                      lp_norm(fd, p, s.params, kUnit, s.cfg));
        const auto floor = delta_floor(s, k, p, d);
        items.push_back(lower("delta=" + num(d), q, floor.value, qe + floor.err_estimate));
    }
    finalize(r, items, !s.functions.empty());
}

void run_grand_ub(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    const auto c = grand_bound_constant(k, p, s.params, s.cfg);
    r.detail["constant"] = c.value;
    std::vector<Item> items;
    for (const auto& f : need_functions(s)) {
        const auto hg = hausdorff_grand_norm(k, f, p, s.params, kUnit, s.cfg);
        const auto fg = grand_norm(f, p, s.params, kUnit, s.cfg);
        items.push_back(upper(f.label(), hg.value, c.value * fg.value,
                              hg.err_estimate + product_err(c.value, c.err_estimate, fg.value, fg.err_estimate)));
    }
    finalize(r, items, true);
}

void run_grand_lb(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    if (s.exponents.delta.empty()) throw DomainError("T_GRAND_LB needs delta");
    std::vector<Item> items;
    for (double d : s.exponents.delta) {
        if (!(d > 0.0 && d < std::min(1.0 / p, 1.0 - 1.0 / p))) {
            throw DomainError("delta must lie in (0, min(1/p, 1-1/p))");
        }
        const auto fd = extremal_function(ExtremalKind::delta, p, d, s.params);
        const auto [q, qe] = quotient(hausdorff_grand_norm(k, fd, p, s.params, kUnit, s.cfg),
                                      grand_norm(fd, p, s.params, kUnit, s.cfg));
        const auto floor = delta_floor(s, k, p, d);
        items.push_back(lower("delta=" + num(d), q, floor.value, qe + floor.err_estimate));
    }
    finalize(r, items, false);
}

void need_sub_one(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("needs 0 < p < 1");
}

void run_qb_ub(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    need_sub_one(p);
    const auto b = b_constants(k, p, s.params, s.cfg).sup;
    r.detail["b_sup"] = b.value;
    const auto xs = s.grids.xs.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, 4.0} : s.grids.xs;
    const auto ts = s.grids.ts.empty() ? geometric_grid(1e-3, 1e3, 2000) : s.grids.ts;
    const double m = std::pow(p, 1.0 / p);
    std::vector<Item> items;
    for (const auto& f : need_functions(s)) {
        const bool member = std::all_of(xs.begin(), xs.end(),
                                        [&](double x) { return mphi_check(k, f, s.params, x, ts); });
        if (!member) {
            items.push_back(vacuous(f.label(), "not in M_phi on the sampled grid"));
            continue;
        }
        if (std::isinf(b.value)) {
            items.push_back(vacuous(f.label(), "B_sup is infinite"));
            continue;
        }
        const auto hf = hausdorff_lp_norm(k, f, p, s.params, kLine, s.cfg);
        const auto fn = lp_norm(f, p, s.params, kLine, s.cfg);
        items.push_back(upper(f.label(), hf.value, m * b.value * fn.value,
                              hf.err_estimate + m * product_err(b.value, b.err_estimate, fn.value, fn.err_estimate)));
    }
    finalize(r, items, true);
}

void run_qb_lb(const VerifyScenario& s, VerifyReport& r) {
    const KernelSpec& k = need_kernel(s);
    const double p = s.exponents.p;
    need_sub_one(p);
    const auto b = b_constants(k, p, s.params, s.cfg).inf;
    r.detail["b_inf"] = b.value;
    std::vector<Item> items;
    if (b.value == 0.0) {
        items.push_back(vacuous("f_0", "B_inf is zero"));
    } else {
        const auto f0 = extremal_function(ExtremalKind::zero, p, 0.0, s.params);
        const auto [q, qe] = quotient(hausdorff_lp_norm(k, f0, p, s.params, kLine, s.cfg),
                                      lp_norm(f0, p, s.params, kLine, s.cfg));
        const double m = std::pow(p, 1.0 / p);
        items.push_back(lower(f0.label(), q, m * b.value, qe + m * b.err_estimate));
    }
    finalize(r, items, false);
}

void run_power(const VerifyScenario& s, VerifyReport& r) {
    const auto svals = s.exponents.s.empty() ? std::vector<double>{0.2, 0.5, 0.8} : s.exponents.s;
    const auto fs = s.functions.empty() ? random_step_functions(s.seed, 100) : s.functions;
    std::vector<Item> items;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto* h = std::get_if<FunctionSpec::Sampled>(&fs[i].family());
        if (!h) throw DomainError("L_POWER needs sampled functions");
        for (double sv : svals) {
            const auto pl = power_lemma_check(h->xs, h->ys, h->rule, sv, s.cfg);
            const double rel = h->rule == Interp::step ? 1e-14 : s.cfg.rel_tol;
            items.push_back(upper("h" + std::to_string(i) + " s=" + num(sv), pl.lhs, pl.rhs, rel * std::abs(pl.rhs)));
        }
    }
    const auto worst = std::max_element(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return safe_ratio(a.lhs, a.rhs) < safe_ratio(b.lhs, b.rhs);
    });
    const auto failures = std::count_if(items.begin(), items.end(), [](const Item& it) {
        return it.status == Status::fail;
    });
    r.detail["instances"] = items.size();
    r.detail["failures"] = failures;
    if (worst != items.end()) r.detail["worst"] = item_json(*worst);
    finalize(r, items, true, items.size() <= 20);
}

void run_plancherel(const VerifyScenario& s, VerifyReport& r) {
    const auto& fs = need_functions(s);
    const auto& ls = s.grids.lambdas;
    auto at = [&](const FunctionSpec& f, std::optional<double> L) {
        QuadConfig c = s.cfg;
        if (L) c.truncation_lambda = *L;
        return plancherel_residual(f, s.params, c);
    };
    std::vector<Item> items;
    if (ls.size() == 2) {
        // the gap has to shrink when the spectral cutoff grows
        if (!(ls[0] < ls[1])) throw DomainError("P_PLANCHEREL needs increasing truncations");
        for (const auto& f : fs) {
            const auto a = at(f, ls[0]);
            const auto b = at(f, ls[1]);
            Item it = threshold(f.label() + " L=" + num(ls[0]) + "->" + num(ls[1]), b.rel_gap, a.rel_gap,
                                (a.err_estimate + b.err_estimate) / a.lhs);
            if (!(b.rel_gap < a.rel_gap)) it.status = Status::fail;
            items.push_back(it);
        }
    } else {
        std::optional<double> L;
        if (ls.size() == 1) L = ls[0];
        else if (!ls.empty()) throw DomainError("P_PLANCHEREL takes at most two truncations");
        for (const auto& f : fs) {
            const auto a = at(f, L);
            items.push_back(threshold(f.label(), a.rel_gap, 0.05, a.err_estimate / a.lhs));
        }
    }
    finalize(r, items, true);
}

void run_eigen(const VerifyScenario& s, VerifyReport& r) {
    const auto ls = s.grids.lambdas.empty() ? std::vector<double>{0.5, 1.0, 2.0, 5.0} : s.grids.lambdas;
    const auto xs = s.grids.xs.empty() ? std::vector<double>{0.2, 0.7, 1.5, 2.0} : s.grids.xs;
    std::vector<Item> items;
    double g0 = 0.0;
    double worst = 0.0;
    double gap = 0.0;
    json at;
    for (double l : ls) {
        g0 = std::max(g0, std::abs(eigenfunction_g(s.params, l, 0.0) - 1.0));
        const ComplexFunction g = [&](double y) { return eigenfunction_g(s.params, l, y); };
        for (double x : xs) {
            const auto t = apply_jacobi_cherednik_detailed(g, s.params, x);
            const cplx target = cplx(0.0, l) * g(x);
            const double res = std::abs(t.value - target) / std::abs(target);
            gap = std::max(gap, t.step_gap);
            if (res >= worst) {
                worst = res;
                at = {{"lambda", l}, {"x", x}};
            }
        }
    }
    r.detail["worst_at"] = at;
    items.push_back(threshold("max relative residual", worst, 1e-5, gap));
    items.push_back(threshold("|G(0) - 1|", g0, 1e-12, 0.0));
    finalize(r, items, true);
}

void run_scaling(const VerifyScenario& s, VerifyReport& r) {
    const auto ls = s.grids.lambdas.empty() ? std::vector<double>{0.0, 1.0} : s.grids.lambdas;
    const auto ts = s.grids.ts.empty() ? std::vector<double>{2.0, 0.5} : s.grids.ts;
    const auto xs = s.grids.xs.empty() ? std::vector<double>{0.5, 1.0} : s.grids.xs;
    double worst = 0.0;
    r.detail["rows"] = json::array();
    for (double l : ls) {
        for (double t : ts) {
            for (double x : xs) {
                const double d = std::abs(eigenfunction_g(s.params, l, t * x) - eigenfunction_g(s.params, l * t, x));
                r.detail["rows"].push_back({{"lambda", l}, {"t", t}, {"x", x}, {"residual", d}});
                worst = std::max(worst, d);
            }
        }
    }
    r.lhs = worst;
    r.rhs = 0.0;
    r.ratio = safe_ratio(worst, 0.0);
    r.status = Status::diagnostic_recorded;
    r.message = worst > 1e-8 ? "dilation does not commute with G" : "residual at rounding level";
}

void dispatch(const VerifyScenario& s, VerifyReport& r) {
    switch (s.theorem_id) {
        case TheoremId::T_L1: return run_l1(s, r);
        case TheoremId::T_COMM_DIAG: return run_comm(s, r);
        case TheoremId::T_LP_ASUP: return run_lp_asup(s, r);
        case TheoremId::T_LP_AINF: return run_lp_ainf(s, r);
        case TheoremId::C_LP_SANDWICH: return run_sandwich(s, r);
        case TheoremId::T_LPLQ: return run_lplq(s, r);
        case TheoremId::T_INTERVAL_E: return run_interval(s, r);
        case TheoremId::T_GRAND_UB: return run_grand_ub(s, r);
        case TheoremId::T_GRAND_LB: return run_grand_lb(s, r);
        case TheoremId::T_QB_UB: return run_qb_ub(s, r);
        case TheoremId::T_QB_LB: return run_qb_lb(s, r);
        case TheoremId::L_POWER: return run_power(s, r);
        case TheoremId::P_PLANCHEREL: return run_plancherel(s, r);
        case TheoremId::P_EIGEN: return run_eigen(s, r);
        case TheoremId::D_SCALING_DIAG: return run_scaling(s, r);
    }
}

}  // namespace

VerifyReport run_scenario(const VerifyScenario& s) {
    VerifyReport r;
    r.scenario = s;
    r.detail = json::object();
    try {
        s.cfg.validate();
        dispatch(s, r);
    } catch (const QuadratureBudgetError& e) {
        r.status = Status::divergent;
        r.message = std::string("divergent: ") + e.what();
    } catch (const NonConvergenceError& e) {
        r.status = Status::divergent;
        r.message = std::string("divergent: ") + e.what();
    } catch (const std::exception& e) {
        r.status = Status::fail;
        r.message = std::string("error: ") + e.what();
    }
    return r;
}

namespace {

std::string params_key(const JacobiParams& p) {
    return "a=" + num(p.alpha()) + ",b=" + num(p.beta());
}

struct SuiteBuilder {
    std::vector<VerifyScenario> out;

    VerifyScenario& add(TheoremId id, const JacobiParams& p, std::optional<KernelSpec> k,
                        std::vector<FunctionSpec> fs, const std::string& tag = "") {
        VerifyScenario s;
        s.theorem_id = id;
        s.params = p;
        s.kernel = std::move(k);
        s.functions = std::move(fs);
        s.key = to_string(id) + "/" + params_key(p) + "/" + (s.kernel ? s.kernel->label() : "-");
        if (!tag.empty()) s.key += "/" + tag;
        out.push_back(std::move(s));
        return out.back();
    }
};

KernelSpec exp_table() {
    auto ts = geometric_grid(1e-3, 40.0, 241);
    std::vector<double> vals;
    for (double t : ts) vals.push_back(std::exp(-t));
    return KernelSpec::tabulated(ts, vals, Interp::log_linear);
}

}  // namespace

std::vector<VerifyScenario> default_suite(std::uint64_t seed) {
    const std::vector<JacobiParams> params{{0.5, -0.5}, {1.0, 0.5}, {1.5, 1.5}};
    const auto gauss = FunctionSpec::gaussian(1.0);
    const auto bump = FunctionSpec::bump(0.8, 0.2);
    const auto bump_left = FunctionSpec::bump(-1.0, 0.5);
    const std::vector<FunctionSpec> line{gauss, bump, bump_left};
    const std::vector<FunctionSpec> unit{FunctionSpec::power_cutoff(0.5),
                                         FunctionSpec::bump(0.5, 0.3, FunctionDomain::unit_interval),
                                         FunctionSpec::constant_one(FunctionDomain::unit_interval)};
    const auto tail = KernelSpec::power_cutoff(-2.0, 1.0, kInf);

    SuiteBuilder b;
    for (const auto& p : params) {
        for (const auto& k : {KernelSpec::adjoint_hardy(), KernelSpec::cesaro(2.0), tail,
                              KernelSpec::power_cutoff(0.0, 0.5, 1.0)}) {
            b.add(TheoremId::T_L1, p, k, line);
        }
        for (double pe : {2.0, 3.0}) {
            for (const auto& k : {KernelSpec::hardy(), tail, KernelSpec::power_cutoff(0.0, 1.0, 2.0)}) {
                b.add(TheoremId::T_LP_ASUP, p, k, {gauss, bump}, "p=" + num(pe)).exponents.p = pe;
            }
        }
        for (const auto& k : {KernelSpec::adjoint_hardy(), KernelSpec::cesaro(2.0),
                              KernelSpec::power_cutoff(0.0, 0.5, 1.0)}) {
            b.add(TheoremId::T_LP_AINF, p, k, {});
        }
        for (const auto& [pe, q] : {std::pair{3.0, 2.0}, std::pair{4.0, 3.0}}) {
            auto& s = b.add(TheoremId::T_LPLQ, p, KernelSpec::power_cutoff(-2.0, 1.5, 3.0), {gauss, bump},
                            "p=" + num(pe) + ",q=" + num(q));
            s.exponents.p = pe;
            s.exponents.q = q;
        }
        for (const auto& k : {KernelSpec::hardy(), tail}) {
            b.add(TheoremId::T_INTERVAL_E, p, k, unit, "upper");
            b.add(TheoremId::T_INTERVAL_E, p, k, {}, "delta").exponents.delta = {0.2, 0.1};
            b.add(TheoremId::T_GRAND_UB, p, k, unit);
            b.add(TheoremId::T_GRAND_LB, p, k, {}).exponents.delta = {0.2, 0.1};
        }
        for (const auto& k : {KernelSpec::adjoint_hardy(), KernelSpec::cesaro(2.0),
                              KernelSpec::power_cutoff(0.0, 0.5, 1.0), tail}) {
            b.add(TheoremId::T_QB_LB, p, k, {}).exponents.p = 0.5;
        }
        for (const auto& k : {exp_table(), KernelSpec::adjoint_hardy()}) {
            b.add(TheoremId::T_QB_UB, p, k, {gauss, bump, FunctionSpec::power_cutoff(0.5)}).exponents.p = 0.5;
        }
        b.add(TheoremId::P_PLANCHEREL, p, std::nullopt, {gauss, FunctionSpec::bump(0.0, 1.0)});
        b.add(TheoremId::P_EIGEN, p, std::nullopt, {});
    }

    const JacobiParams p0{0.5, -0.5};
    b.add(TheoremId::T_LP_ASUP, p0, KernelSpec::hlp(), {gauss}, "p=2");
    b.add(TheoremId::T_LP_AINF, p0, KernelSpec::hardy(), {});
    b.add(TheoremId::T_LPLQ, p0, KernelSpec::power_cutoff(-2.0, 1.0, 2.0), {gauss}, "p=3,q=2").exponents.q = 2.0;
    b.out.back().exponents.p = 3.0;
    b.add(TheoremId::C_LP_SANDWICH, p0, KernelSpec::power_cutoff(0.0, 1.0, 2.0), {gauss, bump});
    b.add(TheoremId::C_LP_SANDWICH, p0, KernelSpec::hardy(), {gauss, bump});
    b.add(TheoremId::T_COMM_DIAG, p0, KernelSpec::cesaro(2.0), {gauss}).grids.lambdas = {0.0, 1.0};
    b.add(TheoremId::P_PLANCHEREL, p0, std::nullopt, {FunctionSpec::bump(0.0, 1.0)}, "truncation").grids.lambdas = {
        20.0, 40.0};
    b.add(TheoremId::D_SCALING_DIAG, p0, std::nullopt, {});
    b.add(TheoremId::L_POWER, p0, std::nullopt, {}, "random").seed = seed;
    b.add(TheoremId::L_POWER, p0, std::nullopt, {FunctionSpec::sampled({0.0, 1.5}, {2.0, 2.0}, Interp::step)},
          "constant")
        .exponents.s = {0.5};

    auto out = std::move(b.out);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
    return out;
}

std::vector<VerifyScenario> suite_for(TheoremId id, std::uint64_t seed) {
    auto all = default_suite(seed);
    std::erase_if(all, [&](const VerifyScenario& s) { return s.theorem_id != id; });
    return all;
}

std::vector<VerifyReport> run_all(const std::vector<VerifyScenario>& scenarios, unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, scenarios.size()));
    std::vector<VerifyReport> out(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++) out[i] = run_scenario(scenarios[i]);
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    std::sort(out.begin(), out.end(),
              [](const VerifyReport& a, const VerifyReport& b) { return a.scenario.key < b.scenario.key; });
    return out;
}

}  // namespace ochaus
