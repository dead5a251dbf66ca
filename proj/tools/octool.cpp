// octool: evaluate special functions, transforms, Hausdorff operators and the
// bound constants, and run the verification suite.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "ochaus/bounds.hpp"
#include "ochaus/config_file.hpp"
#include "ochaus/errors.hpp"
#include "ochaus/hausdorff.hpp"
#include "ochaus/octransform.hpp"
#include "ochaus/report.hpp"
#include "ochaus/scenario.hpp"
#include "ochaus/specfun.hpp"

using namespace ochaus;
using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// "a:b:n" -> n evenly spaced points, both ends included
std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw DomainError("grid '" + text + "' is not start:stop:n");
    double a = 0.0;
    double b = 0.0;
    long n = 0;
    try {
        std::size_t used = 0;
        a = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("");
        b = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        n = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
        throw DomainError("grid '" + text + "' is not start:stop:n");
    }
    if (n < 1) throw DomainError("grid '" + text + "' needs n >= 1");
    std::vector<double> out;
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
    return out;
}

// "-" is stdout
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    void close() {
        os().flush();
        if (!os()) throw std::runtime_error("write to '" + path_ + "' failed");
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

struct Common {
    double alpha = 0.5;
    double beta = -0.5;
    std::string config_file;
    std::map<std::string, std::string> overrides;

    JacobiParams params() const { return JacobiParams(alpha, beta); }

    QuadConfig cfg() const {
        QuadConfig c = config_file.empty() ? QuadConfig{} : read_config_file(config_file);
        for (const auto& [k, v] : overrides) set_config_value(c, k, v);
        c.validate();
        return c;
    }
};

void add_params(CLI::App* sub, Common& c) {
    sub->add_option("--alpha", c.alpha, "Jacobi alpha")->capture_default_str();
    sub->add_option("--beta", c.beta, "Jacobi beta")->capture_default_str();
}

int run_eval(const Common& c, const std::string& what, double lambda, const std::optional<double>& x,
             const std::string& grid) {
    const auto p = c.params();
    const QuadConfig cfg = c.cfg();
    std::vector<double> pts;
    if (x) pts.push_back(*x);
    if (!grid.empty()) pts = parse_grid(grid);
    if (pts.empty()) throw DomainError("eval needs --x or --grid");
    const bool spectral = what == "density";
    std::cout << (spectral ? "lambda" : "x") << ",re,im\n";
    for (double v : pts) {
        cplx r;
        if (what == "g") r = eigenfunction_g(p, lambda, v);
        else if (what == "phi") r = jacobi_phi(p, lambda, v);
        else if (what == "weight") r = weight_a(p, v);
        else if (what == "density") r = plancherel_density(p, v, cfg.lambda_min);
        else throw DomainError("unknown --what '" + what + "'");
        std::cout << g17(v) << ',' << g17(r.real()) << ',' << g17(r.imag()) << '\n';
    }
    return 0;
}

int run_transform(const Common& c, const std::string& fn, const std::string& grid, const std::string& out) {
    const auto p = c.params();
    const QuadConfig cfg = c.cfg();
    const auto f = FunctionSpec::parse(fn, p);
    Output o(out);
    o.os() << "lambda,re,im,err\n";
    for (double l : parse_grid(grid)) {
        const auto r = oc_transform_detailed(f, p, l, cfg);
        o.os() << g17(l) << ',' << g17(r.value.real()) << ',' << g17(r.value.imag()) << ',' << g17(r.err_estimate)
               << '\n';
    }
    o.close();
    return 0;
}

int run_hausdorff(const Common& c, const std::string& kernel, const std::string& fn, const std::string& grid) {
    const auto p = c.params();
    const QuadConfig cfg = c.cfg();
    const auto k = KernelSpec::parse(kernel);
    const auto f = FunctionSpec::parse(fn, p);
    std::cout << "x,value,err\n";
    for (double x : parse_grid(grid)) {
        if (x == 0.0) {
            std::cout << "0,nan,nan\n";
            continue;
        }
        const auto r = hausdorff_apply_detailed(k, f, p, x, cfg);
        std::cout << g17(x) << ',' << g17(r.value) << ',' << g17(r.err_estimate) << '\n';
    }
    return 0;
}

json norm_json(const NormResult& r) {
    return {{"value", number_json(r.value)}, {"err", number_json(r.err_estimate)}};
}

int run_bound(const Common& c, const std::string& quantity, double p_exp, const std::optional<double>& q,
              const std::string& kernel) {
    const auto p = c.params();
    const QuadConfig cfg = c.cfg();
    const auto k = KernelSpec::parse(kernel);
    json out{{"quantity", quantity}, {"kernel", k.label()}, {"p", p_exp}, {"alpha", c.alpha}, {"beta", c.beta}};
    if (quantity == "l1") {
        const auto l = k.l1_status(cfg);
        out["value"] = number_json(l.value);
        out["err"] = number_json(l.err);
    } else if (quantity == "asup" || quantity == "ainf") {
        const auto a = a_constants(k, p_exp, p, cfg);
        out.update(norm_json(quantity == "asup" ? a.sup : a.inf));
    } else if (quantity == "bsup" || quantity == "binf") {
        const auto b = b_constants(k, p_exp, p, cfg);
        out.update(norm_json(quantity == "bsup" ? b.sup : b.inf));
    } else if (quantity == "E") {
        out.update(norm_json(e_constant(k, p_exp, cfg)));
    } else if (quantity == "lplq") {
        if (!q) throw DomainError("--quantity lplq needs --q");
        out["q"] = *q;
        out.update(norm_json(lp_lq_constant(k, p_exp, *q, p, cfg)));
    } else if (quantity == "grand") {
        out.update(norm_json(grand_bound_constant(k, p_exp, p, cfg)));
    } else {
        throw DomainError("unknown --quantity '" + quantity + "'");
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

std::vector<VerifyScenario> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read scenarios from '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
    std::vector<VerifyScenario> out;
    for (const auto& s : j.is_array() ? j : json::array({j})) out.push_back(VerifyScenario::from_json(s));
    return out;
}

struct VerifyArgs {
    std::string theorem = "all";
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out = "-";
    std::string replay;
    std::string dump;
    unsigned threads = 0;
};

int run_verify(const Common& c, const VerifyArgs& a) {
    const auto format = parse_report_format(a.format);
    std::vector<VerifyScenario> suite;
    if (!a.replay.empty()) {
        suite = load_scenarios(a.replay);
    } else {
        suite = a.theorem == "all" ? default_suite(a.seed) : suite_for(parse_theorem_id(a.theorem), a.seed);
        const bool tuned = !c.config_file.empty() || !c.overrides.empty();
        if (tuned) {
            const QuadConfig cfg = c.cfg();
            for (auto& s : suite) s.cfg = cfg;
        }
    }
    if (!a.dump.empty()) {
        json arr = json::array();
        for (const auto& s : suite) arr.push_back(s.to_json());
        Output o(a.dump);
        o.os() << arr.dump(2) << '\n';
        o.close();
    }
    return emit_report(run_all(suite, a.threads), format, a.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opdam-Cherednik transform and Hausdorff operator toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_file, "flat key = value file with QuadConfig fields")
        ->check(CLI::ExistingFile);
    for (const auto& key : config_keys()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        app.add_option_function<std::string>(
            flag, [&common, key](const std::string& v) { common.overrides[key] = v; },
            "override QuadConfig." + key);
    }

    std::string what = "g";
    double lambda = 0.0;
    std::optional<double> x;
    std::string grid;
    auto* eval = app.add_subcommand("eval", "G, phi, the weight A, or the Plancherel density");
    add_params(eval, common);
    eval->add_option("--what", what, "g|phi|weight|density")->check(CLI::IsMember({"g", "phi", "weight", "density"}));
    eval->add_option("--lambda", lambda, "spectral parameter");
    eval->add_option("--x", x, "single point (lambda for density)");
    eval->add_option("--grid", grid, "start:stop:n");

    std::string fn = "gaussian:1";
    std::string out = "-";
    auto* transform = app.add_subcommand("transform", "Opdam-Cherednik transform on a lambda grid (CSV)");
    add_params(transform, common);
    transform->add_option("--function", fn, "gaussian:S | bump:C:W | power:A | eps:P:E | delta:P:D | zero:P | one");
    transform->add_option("--lambda-grid", grid, "start:stop:n")->required();
    transform->add_option("--out", out, "output file, - for stdout");

    std::string kernel = "hardy";
    auto* hausdorff = app.add_subcommand("hausdorff", "H f on an x grid (CSV)");
    add_params(hausdorff, common);
    hausdorff->add_option("--kernel", kernel, "hardy|adjoint-hardy|hlp|cesaro:G|rl:MU|powercut:EXPON:A:B");
    hausdorff->add_option("--function", fn, "test function");
    hausdorff->add_option("--x-grid", grid, "start:stop:n")->required();

    std::string quantity = "l1";
    double p_exp = 2.0;
    std::optional<double> q;
    auto* bound = app.add_subcommand("bound", "kernel constants (JSON)");
    add_params(bound, common);
    bound->add_option("--quantity", quantity, "l1|asup|ainf|E|bsup|binf|lplq|grand")
        ->check(CLI::IsMember({"l1", "asup", "ainf", "E", "bsup", "binf", "lplq", "grand"}));
    bound->add_option("--p", p_exp, "exponent p");
    bound->add_option("--q", q, "exponent q (lplq)");
    bound->add_option("--kernel", kernel, "kernel spec");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the verification suite; exit 1 if any check fails");
    verify->add_option("--theorem", va.theorem, "theorem id or all");
    verify->add_option("--seed", va.seed, "seed for random step functions");
    verify->add_option("--format", va.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", va.out, "report file, - for stdout");
    verify->add_option("--replay", va.replay, "JSON scenarios to run instead of the default suite");
    verify->add_option("--dump-scenarios", va.dump, "write the scenarios as JSON");
    verify->add_option("--threads", va.threads, "worker threads (0: all cores)");

    bool show = false;
    std::string file;
    auto* config = app.add_subcommand("config", "print the effective QuadConfig");
    config->add_flag("--show", show, "print the effective configuration");
    config->add_option("--file", file, "read and validate a config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;  // --help stays 0
    }

    try {
        if (*eval) return run_eval(common, what, lambda, x, grid);
        if (*transform) return run_transform(common, fn, grid, out);
        if (*hausdorff) return run_hausdorff(common, kernel, fn, grid);
        if (*bound) return run_bound(common, quantity, p_exp, q, kernel);
        if (*verify) return run_verify(common, va);
        if (*config) {
            if (!file.empty()) common.config_file = file;
            std::cout << format_config(common.cfg());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "octool: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
