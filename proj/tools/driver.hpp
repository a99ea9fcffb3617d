#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sorf/sorf.hpp"

namespace sorf::cli {

enum class Method { updating, sop, krylov };

std::string to_string(Method m);

struct RunConfig {
    GegenbauerSobolevConfig problem;
    std::vector<Method> methods{Method::updating};
    std::vector<Pole> free_poles;
    std::size_t cc_order = 400;
    std::optional<std::string> quadrature_file;
    std::optional<std::pair<int, int>> n_range;
};

/// Exit status for each error category.
enum ExitCode { ok = 0, config_error = 2, numerical_failure = 3, import_failure = 4 };

int exit_code_for(const std::exception& e);

/// Throws InvalidArgument on schema violations.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

nlohmann::json pole_to_json(const Pole& p);
Pole pole_from_json(const nlohmann::json& j);

/// Outcome of one solver on one problem.
struct MethodResult {
    Method method;
    Index N = 0;
    IEPSolution solution;
    PoleList poles;
    SorfTable nodes_table;
    double E_r = 0.0;
    double E_p = 0.0;
    double E_Q = 0.0;
    double E_S_discrete = 0.0;
    double E_S_cont_leading = 0.0;   // leading N x N block
    double E_S_cont_first = 0.0;     // leading (N - 1) x (N - 1) block
    std::size_t cc_order_used = 0;
    double ms = 0.0;
};

/// The discrete problem for a config: its quadrature rule (imported when
/// quadrature_file is set), spec, Jordan system and pole list.
struct Problem {
    QuadratureRule rule;
    DiscreteSobolevSpec spec;
    JordanSystem system;
    PoleList poles;
};

Problem build_problem(const RunConfig& config);

MethodResult run_method(const RunConfig& config, const Problem& problem, Method method);

/// Report document: one report for a single method, or
/// {"reports": [...], "agreement": x} when several methods run.
nlohmann::json run_solve(const RunConfig& config);

nlohmann::json report_json(const MethodResult& r);

inline constexpr const char* kSweepHeader =
    "N,m,method,E_r,E_p,E_Q,E_S_discrete,E_S_cont_leading,ms";

/// One CSV row per (N, method) for N in [n_min, n_max].
void run_sweep(const RunConfig& config, int n_min, int n_max, std::ostream& out);

nlohmann::json dump_quadrature(const RunConfig& config);

/// Rebuild and validate a rule document. Throws ValidationError.
QuadratureRule import_quadrature(const nlohmann::json& doc);
nlohmann::json rule_to_json(const QuadratureRule& rule);

}  // namespace sorf::cli
