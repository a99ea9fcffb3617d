#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "driver.hpp"

namespace {

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw sorf::InvalidArgument("cannot write " + path);
    }
    out << text;
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace sorf::cli;
    CLI::App app{"Sobolev orthonormal rational functions via recurrence pencils"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output;

    auto* solve = app.add_subcommand("solve", "solve one configuration and print a JSON report");
    solve->add_option("config", config_path, "config file (JSON)")->required();
    solve->add_option("-o,--output", output, "write the report here instead of stdout");

    int n_min = 0;
    int n_max = 0;
    auto* sweep = app.add_subcommand("sweep", "run a range of N and print CSV");
    sweep->add_option("config", config_path, "config file (JSON)")->required();
    sweep->add_option("--n-min", n_min, "first N (default: N_range or 2)");
    sweep->add_option("--n-max", n_max, "last N (default: N_range or 8)");
    sweep->add_option("-o,--output", output, "CSV output path");

    auto* dump = app.add_subcommand("dump-quadrature", "print the rule a config would use");
    dump->add_option("config", config_path, "config file (JSON)")->required();
    dump->add_option("-o,--output", output, "rule output path");

    std::string rule_path;
    double node_tol = 1e-10;
    auto* check = app.add_subcommand("check-quadrature",
                                     "validate a rule file, optionally against a config");
    check->add_option("rule", rule_path, "rule file (JSON)")->required();
    check->add_option("--config", config_path, "compare nodes with the rule built for this config");
    check->add_option("--tol", node_tol, "node agreement tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : config_error;
    }

    try {
        if (*solve) {
            emit(run_solve(load_config(config_path)).dump(2) + "\n", output);
        } else if (*sweep) {
            const RunConfig cfg = load_config(config_path);
            const int lo = n_min > 0 ? n_min : cfg.n_range ? cfg.n_range->first : 2;
            const int hi = n_max > 0 ? n_max : cfg.n_range ? cfg.n_range->second : 8;
            std::ostringstream csv;
            run_sweep(cfg, lo, hi, csv);
            emit(csv.str(), output);
        } else if (*dump) {
            emit(dump_quadrature(load_config(config_path)).dump(2) + "\n", output);
        } else if (*check) {
            const sorf::QuadratureRule rule = import_quadrature(read_json_file(rule_path));
            std::cout << "valid rule: " << rule.size() << " nodes ("
                      << sorf::to_string(rule.provenance) << ")\n";
            if (!config_path.empty()) {
                RunConfig cfg = load_config(config_path);
                cfg.quadrature_file.reset();
                const sorf::QuadratureRule ref = build_problem(cfg).rule;
                if (ref.size() != rule.size()) {
                    throw sorf::ValidationError("rule has " + std::to_string(rule.size()) +
                                                " nodes, config expects " +
                                                std::to_string(ref.size()));
                }
                double gap = 0.0;
                for (std::size_t j = 0; j < rule.size(); ++j) {
                    gap = std::max(gap, std::abs(rule.nodes[j] - ref.nodes[j]));
                }
                std::cout << "max node difference: " << gap << "\n";
                if (gap > node_tol) {
                    throw sorf::ValidationError("nodes differ from the internal rule");
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return ok;
}
