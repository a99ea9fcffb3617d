#include "driver.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace sorf::cli {

using nlohmann::json;

std::string to_string(Method m)
{
    switch (m) {
    case Method::updating:
        return "updating";
    case Method::sop:
        return "sop";
    case Method::krylov:
        return "krylov";
    }
    return "?";
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ValidationError*>(&e) != nullptr) {
        return import_failure;
    }
    if (dynamic_cast<const NumericalError*>(&e) != nullptr) {
        return numerical_failure;
    }
    if (dynamic_cast<const InvalidArgument*>(&e) != nullptr ||
        dynamic_cast<const json::exception*>(&e) != nullptr) {
        return config_error;
    }
    return 1;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

json pole_to_json(const Pole& p)
{
    if (p.is_infinite()) {
        return "inf";
    }
    return json::array({p.value().real(), p.value().imag()});
}

Pole pole_from_json(const json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") {
            return Pole::infinity();
        }
        throw InvalidArgument("pole: unknown literal " + j.dump());
    }
    if (j.is_number()) {
        return Pole(j.get<double>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Pole(Scalar(j[0].get<double>(), j[1].get<double>()));
    }
    throw InvalidArgument("pole: expected a number, [re, im] or \"inf\", got " + j.dump());
}

namespace {

double number_field(const json& doc, const char* key)
{
    const json& v = doc.at(key);
    if (!v.is_number()) {
        throw InvalidArgument(std::string("config: ") + key + " must be a number");
    }
    return v.get<double>();
}

int integer_field(const json& doc, const char* key)
{
    const json& v = doc.at(key);
    if (!v.is_number_integer()) {
        throw InvalidArgument(std::string("config: ") + key + " must be an integer");
    }
    return v.get<int>();
}

json matrix_json(const Matrix& A)
{
    json rows = json::array();
    for (Index i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < A.cols(); ++j) {
            row.push_back(json::array({A(i, j).real(), A(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

RunConfig parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw InvalidArgument("config: expected an object");
    }
    static const std::set<std::string> known{"mu",     "lambda",     "omega",    "M",
                                             "poles",  "N",          "method",   "free_poles",
                                             "cc_order", "quadrature_file", "N_range"};
    for (const auto& item : doc.items()) {
        if (known.count(item.key()) == 0) {
            throw InvalidArgument("config: unknown field '" + item.key() + "'");
        }
    }
    RunConfig cfg;
    auto& p = cfg.problem;
    if (doc.contains("mu")) {
        p.mu = number_field(doc, "mu");
    }
    if (doc.contains("lambda")) {
        p.lambda = number_field(doc, "lambda");
    }
    if (doc.contains("omega")) {
        p.omega = number_field(doc, "omega");
    }
    if (doc.contains("N")) {
        p.N = integer_field(doc, "N");
    }
    if (doc.contains("M")) {
        if (doc.contains("poles")) {
            throw InvalidArgument("config: give either M or poles, not both");
        }
        p.pole_pairs = integer_field(doc, "M");
    }
    if (doc.contains("poles")) {
        if (!doc["poles"].is_array()) {
            throw InvalidArgument("config: poles must be a list");
        }
        std::vector<Scalar> xi;
        for (const json& e : doc["poles"]) {
            const Pole pole = pole_from_json(e);
            if (pole.is_infinite()) {
                throw InvalidArgument("config: prescribed poles must be finite");
            }
            xi.push_back(pole.value());
        }
        p.poles = std::move(xi);
    }
    if (doc.contains("method")) {
        const json& m = doc["method"];
        const std::string name = m.is_string() ? m.get<std::string>() : "";
        if (name == "updating") {
            cfg.methods = {Method::updating};
        } else if (name == "sop") {
            cfg.methods = {Method::sop};
        } else if (name == "krylov") {
            cfg.methods = {Method::krylov};
        } else if (name == "all") {
            cfg.methods = {Method::updating, Method::sop, Method::krylov};
        } else {
            throw InvalidArgument("config: method must be updating, sop, krylov or all");
        }
    }
    if (doc.contains("free_poles")) {
        if (!doc["free_poles"].is_array()) {
            throw InvalidArgument("config: free_poles must be a list");
        }
        for (const json& e : doc["free_poles"]) {
            cfg.free_poles.push_back(pole_from_json(e));
        }
    }
    if (doc.contains("cc_order")) {
        const int n = integer_field(doc, "cc_order");
        if (n < 2) {
            throw InvalidArgument("config: cc_order must be >= 2");
        }
        cfg.cc_order = static_cast<std::size_t>(n);
    }
    if (doc.contains("quadrature_file")) {
        if (!doc["quadrature_file"].is_string()) {
            throw InvalidArgument("config: quadrature_file must be a path");
        }
        cfg.quadrature_file = doc["quadrature_file"].get<std::string>();
    }
    if (doc.contains("N_range")) {
        const json& r = doc["N_range"];
        if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
            !r[1].is_number_integer()) {
            throw InvalidArgument("config: N_range must be [N_min, N_max]");
        }
        cfg.n_range = {r[0].get<int>(), r[1].get<int>()};
        if (cfg.n_range->first < 1 || cfg.n_range->second < cfg.n_range->first) {
            throw InvalidArgument("config: N_range must satisfy 1 <= N_min <= N_max");
        }
    }
    p.validate();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    return parse_config(read_json_file(path));
}

Problem build_problem(const RunConfig& config)
{
    const auto& p = config.problem;
    p.validate();
    Problem out;
    if (config.quadrature_file) {
        out.rule = import_quadrature(read_json_file(*config.quadrature_file));
        if (out.rule.size() != p.sigma()) {
            throw ValidationError("imported rule has " + std::to_string(out.rule.size()) +
                                  " nodes; the config needs " + std::to_string(p.sigma()));
        }
    } else {
        out.rule = gegenbauer_rule(p);
    }
    out.spec = sobolev_spec_from_rule(out.rule, p.lambda);
    out.system = build_jordan(out.spec);
    out.poles = pole_list(to_poles(p.prescribed_poles()), config.free_poles, out.spec);
    return out;
}

MethodResult run_method(const RunConfig& config, const Problem& problem, Method method)
{
    MethodResult r;
    r.method = method;
    r.N = config.problem.N;
    r.poles = problem.poles;
    const auto start = std::chrono::steady_clock::now();
    switch (method) {
    case Method::updating:
        r.solution = solve_updating(problem.spec, problem.poles);
        break;
    case Method::sop:
        r.solution = solve_via_sop(problem.spec, problem.poles);
        break;
    case Method::krylov:
        r.solution = rational_arnoldi(problem.system, problem.poles);
        break;
    }
    r.ms = elapsed_ms(start);

    r.E_r = metric_recurrence(problem.system, r.solution);
    r.E_p = metric_poles(r.solution, r.poles);
    r.E_Q = metric_orthonormality(r.solution);
    r.nodes_table = evaluate_at_nodes(problem.spec, r.solution);
    r.E_S_discrete = metric_sobolev(discrete_moment_matrix(problem.spec, r.nodes_table));
    const ContinuousMoment mc =
        continuous_moment_matrix(config.problem, r.solution, r.N, config.cc_order);
    r.E_S_cont_leading = metric_sobolev(mc.M);
    r.E_S_cont_first = r.N > 1 ? metric_sobolev_leading(mc.M, r.N - 1) : 0.0;
    r.cc_order_used = mc.cc_order;
    return r;
}

json report_json(const MethodResult& r)
{
    json poles = json::array();
    for (const Pole& p : r.poles.psi) {
        poles.push_back(pole_to_json(p));
    }
    return {
        {"method", to_string(r.method)},
        {"N", r.N},
        {"m", r.solution.dim()},
        {"H", matrix_json(r.solution.pencil.H())},
        {"K", matrix_json(r.solution.pencil.K())},
        {"poles", std::move(poles)},
        {"metrics",
         {{"E_r", r.E_r},
          {"E_p", r.E_p},
          {"E_Q", r.E_Q},
          {"E_S_discrete", r.E_S_discrete},
          {"E_S_continuous_leading", r.E_S_cont_leading},
          {"E_S_continuous_first_N_minus_1", r.E_S_cont_first}}},
        {"evaluation_conditioning", r.nodes_table.conditioning},
        {"cc_order", r.cc_order_used},
        {"ms", r.ms},
    };
}

json run_solve(const RunConfig& config)
{
    const Problem problem = build_problem(config);
    std::vector<MethodResult> results;
    for (Method m : config.methods) {
        results.push_back(run_method(config, problem, m));
    }
    if (results.size() == 1) {
        return report_json(results.front());
    }
    json reports = json::array();
    double agreement = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        reports.push_back(report_json(results[i]));
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            agreement = std::max(
                agreement, table_agreement(results[i].nodes_table, results[j].nodes_table));
        }
    }
    return {{"reports", std::move(reports)}, {"agreement", agreement}};
}

void run_sweep(const RunConfig& config, int n_min, int n_max, std::ostream& out)
{
    if (n_min < 1 || n_max < n_min) {
        throw InvalidArgument("sweep: need 1 <= N_min <= N_max");
    }
    out << kSweepHeader << '\n';
    for (int n = n_min; n <= n_max; ++n) {
        RunConfig cfg = config;
        cfg.problem.N = n;
        // The pole count follows N in a sweep.
        cfg.problem.pole_pairs.reset();
        const Problem problem = build_problem(cfg);
        for (Method m : cfg.methods) {
            const MethodResult r = run_method(cfg, problem, m);
            char line[256];
            std::snprintf(line, sizeof line, "%d,%lld,%s,%.6e,%.6e,%.6e,%.6e,%.6e,%.3f", n,
                          static_cast<long long>(r.solution.dim()), to_string(m).c_str(), r.E_r,
                          r.E_p, r.E_Q, r.E_S_discrete, r.E_S_cont_leading, r.ms);
            out << line << '\n';
        }
    }
}

json rule_to_json(const QuadratureRule& rule)
{
    return {{"provenance", std::string(to_string(rule.provenance))},
            {"nodes", rule.nodes},
            {"weights", rule.weights}};
}

json dump_quadrature(const RunConfig& config)
{
    json doc = rule_to_json(build_problem(config).rule);
    doc["mu"] = config.problem.mu;
    doc["N"] = config.problem.N;
    return doc;
}

QuadratureRule import_quadrature(const json& doc)
{
    QuadratureRule rule;
    try {
        if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("weights")) {
            throw ValidationError("rule document needs 'nodes' and 'weights'");
        }
        rule.nodes = doc.at("nodes").get<std::vector<double>>();
        rule.weights = doc.at("weights").get<std::vector<double>>();
        rule.provenance = doc.contains("provenance")
                              ? provenance_from_string(doc["provenance"].get<std::string>())
                              : RuleProvenance::imported;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("rule document: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ValidationError(std::string("rule document: ") + e.what());
    }
    validate_rule(rule);
    return rule;
}

}  // namespace sorf::cli
