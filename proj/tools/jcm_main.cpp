// jcm — command-line front end for the two-mode dispersive JCM laboratory.
//
//   jcm validate    --config cfg.json [--out report.json]
//   jcm theta-sweep --config cfg.json --out sweep.csv
//   jcm evolve      --config cfg.json --out evolve.csv [--backends full,eff,closed]
//   jcm sw-residual --config cfg.json --out residual.csv
//
// Exit codes: 0 success, 1 hard error, 2 validation warning.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jcm/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"two-mode dispersive Jaynes-Cummings laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string backends = "full,eff,closed";

    auto* validate = app.add_subcommand("validate", "derived quantities and dispersive checks");
    validate->add_option("--config", config_path, "JSON config")->required();
    validate->add_option("--out", out_path, "JSON report path");

    auto* sweep = app.add_subcommand("theta-sweep", "rotation-angle branches over a parameter grid");
    sweep->add_option("--config", config_path, "JSON config")->required();
    sweep->add_option("--out", out_path, "CSV output path")->required();

    auto* evolve = app.add_subcommand("evolve", "photon-number time series per backend");
    evolve->add_option("--config", config_path, "JSON config")->required();
    evolve->add_option("--out", out_path, "CSV output path")->required();
    evolve->add_option("--backends", backends, "comma list of full,eff,closed");

    auto* residual = app.add_subcommand("sw-residual", "exchange residual under coupling scaling");
    residual->add_option("--config", config_path, "JSON config")->required();
    residual->add_option("--out", out_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return jcm::cli::kExitError;
    }

    try {
        const jcm::RunConfig cfg = jcm::load_config(config_path);
        for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
        if (validate->parsed()) {
            std::optional<std::string> json_out;
            if (!out_path.empty()) json_out = out_path;
            return jcm::cli::run_validate(cfg, std::cout, json_out);
        }
        if (sweep->parsed()) return jcm::cli::run_theta_sweep(cfg, out_path);
        if (evolve->parsed())
            return jcm::cli::run_evolve(cfg, out_path, jcm::cli::parse_backends(backends));
        if (residual->parsed()) return jcm::cli::run_sw_residual(cfg, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return jcm::cli::kExitError;
    }
    return jcm::cli::kExitError;
}
