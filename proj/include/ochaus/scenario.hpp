#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ochaus/function_spec.hpp"
#include "ochaus/kernel.hpp"
#include "ochaus/params.hpp"
#include "ochaus/quad.hpp"

namespace ochaus {

enum class TheoremId {
    T_L1,
    T_COMM_DIAG,
    T_LP_ASUP,
    T_LP_AINF,
    C_LP_SANDWICH,
    T_LPLQ,
    T_INTERVAL_E,
    T_GRAND_UB,
    T_GRAND_LB,
    T_QB_UB,
    T_QB_LB,
    L_POWER,
    P_PLANCHEREL,
    P_EIGEN,
    D_SCALING_DIAG,
};

const std::vector<TheoremId>& all_theorem_ids();
std::string to_string(TheoremId id);
/// Throws DomainError for an unknown name.
TheoremId parse_theorem_id(const std::string& name);

struct Exponents {
    double p = 2.0;
    std::optional<double> q;
    std::vector<double> eps;
    std::vector<double> delta;
    std::vector<double> s;  ///< power-lemma exponents
};

struct Grids {
    std::vector<double> lambdas;  ///< spectral points, or truncation_lambda values for P_PLANCHEREL
    std::vector<double> xs;
    std::vector<double> ts;
};

struct VerifyScenario {
    std::string key;  ///< unique, the sort key of a suite
    TheoremId theorem_id = TheoremId::T_L1;
    JacobiParams params{0.5, -0.5};
    std::optional<KernelSpec> kernel;
    std::vector<FunctionSpec> functions;
    Exponents exponents;
    Grids grids;
    QuadConfig cfg;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
    static VerifyScenario from_json(const nlohmann::json& j);
};

enum class Status { pass, fail, diagnostic_recorded, vacuous, divergent };
std::string to_string(Status s);

struct ErrBreakdown {
    double quadrature = 0.0;  ///< combined quadrature error estimates
    double model = 0.0;       ///< tolerance floor and truncation terms
};

struct VerifyReport {
    VerifyScenario scenario;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double tolerance = 0.0;
    Status status = Status::fail;
    ErrBreakdown err;
    std::string message;
    nlohmann::json detail;
};

/// Never throws: errors become a fail report whose message starts with "error:".
VerifyReport run_scenario(const VerifyScenario& s);

/// At least one scenario per theorem id over the default catalog, sorted by key.
std::vector<VerifyScenario> default_suite(std::uint64_t seed = 1);
/// The default suite restricted to one theorem.
std::vector<VerifyScenario> suite_for(TheoremId id, std::uint64_t seed = 1);

/// Runs on up to `threads` workers (0: hardware concurrency); result sorted by key.
std::vector<VerifyReport> run_all(const std::vector<VerifyScenario>& scenarios, unsigned threads = 0);

/// SplitMix64 step: advances state and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

/// `count` non-increasing, non-negative step functions on (0, b) drawn from `seed`:
/// 2..16 cells with random widths and values decreasing from <= 10.
std::vector<FunctionSpec> random_step_functions(std::uint64_t seed, int count);

}  // namespace ochaus
