// Experiment runner. Exit codes: 0 all checks passed, 1 a numeric check
// failed (the failing row is printed), 2 invalid invocation or config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcfa/experiments.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& experiment,
                std::uint64_t seed, bool seed_set, const std::vector<std::string>& sets,
                const std::string& out_path, const std::string& format) {
    mcfa::experiments::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw mcfa::experiments::ConfigError("cannot open config " + config_path);
            for (const auto& [key, value] : mcfa::parse_flat_config(in)) {
                if (key == "experiment")
                    cfg.experiment = value;
                else if (key == "seed") {
                    cfg.seed = std::stoull(value);
                    cfg.seed_set = true;
                } else if (key == "format")
                    cfg.format = value;
                else
                    cfg.params[key] = value;
            }
        }
        if (!experiment.empty()) cfg.experiment = experiment;
        if (seed_set) {
            cfg.seed = seed;
            cfg.seed_set = true;
        }
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw mcfa::experiments::ConfigError("--set expects key=value, got " + kv);
            cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        cfg.out_path = out_path;
        if (!format.empty()) cfg.format = format;
        if (cfg.experiment.empty())
            throw mcfa::experiments::ConfigError("no experiment given");

        const auto report = mcfa::experiments::run(cfg);
        mcfa::experiments::write_report(report, cfg.out_path, cfg.format);
        if (!report.all_pass()) {
            const auto* row = report.first_failure();
            std::string desc;
            for (const auto& v : row->params) desc += v + " ";
            std::fprintf(stderr,
                         "FAIL %s: %svalue=%.12g bound=%.12g\n", cfg.experiment.c_str(),
                         desc.c_str(), row->replicate_mean, row->bound);
            return 1;
        }
        return 0;
    } catch (const mcfa::experiments::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo function approximation experiments"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment and write a report");
    std::string experiment, config_path, out_path, format;
    std::uint64_t seed = 0;
    std::vector<std::string> sets;
    run->add_option("--experiment", experiment, "experiment name");
    run->add_option("--config", config_path, "flat key=value config file");
    auto* seed_opt = run->add_option("--seed", seed, "64-bit seed (mandatory)");
    run->add_option("--set", sets, "override key=value")->take_all();
    run->add_option("--out", out_path, "output path, - for stdout");
    run->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* table = app.add_subcommand("bounds-table",
                                     "emit the constants table "
                                     "(name,params,paper_value,computed_value,abs_diff,pass)");
    std::string table_out;
    table->add_option("--out", table_out, "output path, - for stdout");

    CLI11_PARSE(app, argc, argv);

    if (table->parsed()) {
        const std::string body = mcfa::experiments::bounds_table_csv();
        if (table_out.empty() || table_out == "-") {
            std::fputs(body.c_str(), stdout);
        } else {
            std::ofstream out(table_out, std::ios::binary);
            if (!out) {
                std::fprintf(stderr, "error: cannot write %s\n", table_out.c_str());
                return 2;
            }
            out << body;
        }
        bool all = true;
        for (const auto& c : mcfa::experiments::constant_checks()) all = all && c.pass();
        return all ? 0 : 1;
    }
    return run_command(config_path, experiment, seed, seed_opt->count() > 0, sets, out_path,
                       format);
}
