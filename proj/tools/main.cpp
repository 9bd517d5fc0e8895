// cumulant-qed command-line front end: run / compare / sweep / validate /
// config print-defaults. See README for the configuration schema.
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqed/cli/commands.hpp"
#include "cqed/errors.hpp"

using namespace cqed;

int main(int argc, char** argv) {
    CLI::App app{"Cumulant-expansion dynamics of a two-level emitter coupled to a "
                 "discretized photonic spectral density"};
    app.require_subcommand(1);

    std::string config_path, output, oracle = "none", axis, out_dir = "sweep_out";
    std::string methods_csv;
    std::vector<double> values;
    std::vector<std::string> suites{"residual", "oracles", "symmetry"};
    int jobs = 0;

    auto* run = app.add_subcommand("run", "Integrate one configuration and write a CSV");
    run->add_option("-c,--config", config_path, "JSON config file")->required();
    run->add_option("-o,--output", output, "override output.path");

    auto* compare = app.add_subcommand(
        "compare", "Run several methods on one configuration plus an optional oracle");
    compare->add_option("-c,--config", config_path, "JSON config file")->required();
    compare->add_option("-m,--methods", methods_csv,
                        "comma-separated methods (mf,2,2+1a,2+1b,3)");
    compare->add_option("--oracle", oracle,
                        "oracle column: lindblad|semiclassical|single_excitation|ww|none");
    compare->add_option("-o,--output", output, "output CSV path")->required();

    auto* sweep = app.add_subcommand("sweep", "Rerun a base config over an axis of values");
    sweep->add_option("-c,--config", config_path, "JSON base config file")->required();
    sweep->add_option("--axis", axis, "dotted config path, e.g. spectral.params.g_eV")
        ->required();
    sweep->add_option("--values", values, "axis values")->required()->expected(-1);
    sweep->add_option("--output-dir", out_dir, "output directory");
    sweep->add_option("--jobs", jobs, "max concurrent runs (default: CUMULANT_QED_JOBS)");

    auto* validate = app.add_subcommand("validate", "Run the built-in validation suites");
    validate->add_option("--suites", suites, "suites: residual oracles symmetry")->expected(-1);

    auto* config = app.add_subcommand("config", "Configuration utilities");
    auto* print_defaults = config->add_subcommand("print-defaults", "Print the default config");
    config->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            cli::RunConfig cfg = cli::load_config(config_path);
            if (!output.empty()) cfg.output_path = output;
            return cli::cmd_run(cfg);
        }
        if (compare->parsed()) {
            cli::RunConfig cfg = cli::load_config(config_path);
            std::vector<std::string> methods;
            std::size_t start = 0;
            while (start <= methods_csv.size() && !methods_csv.empty()) {
                const auto comma = methods_csv.find(',', start);
                methods.push_back(methods_csv.substr(start, comma - start));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            return cli::cmd_compare(cfg, methods, oracle, output);
        }
        if (sweep->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw IoError("cannot open config file: " + config_path);
            cli::json base;
            in >> base;
            return cli::cmd_sweep(base, axis, values, out_dir, jobs);
        }
        if (validate->parsed()) return cli::cmd_validate(suites);
        if (print_defaults->parsed()) {
            std::cout << cli::default_config_json().dump(2) << "\n";
            return cli::ExitOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::ExitIoError;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::ExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::ExitConfigError;
    }
    return cli::ExitOk;
}
