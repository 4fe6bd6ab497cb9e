// sns: run, converge, analyze and check-resolution front end.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sns/config.hpp"
#include "sns/error.hpp"
#include "sns/parallel.hpp"
#include "sns/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Periodic-box pseudospectral Navier-Stokes solver"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run a simulation from a config file");
    run->add_option("config", config_path, "Config file")->required();

    std::string study;
    auto* converge = app.add_subcommand("converge", "Spatial, temporal or combined convergence study");
    converge->add_option("kind", study, "spatial | temporal | combined")
        ->required()
        ->check(CLI::IsMember({"spatial", "temporal", "combined"}));
    converge->add_option("config", config_path, "Config file")->required();

    std::vector<std::string> run_dirs;
    auto* analyze = app.add_subcommand("analyze", "Breakdown analysis of stored run directories");
    analyze->add_option("run-dir", run_dirs, "Run directories (several give a breakdown trend)")->required();

    std::string snapshot;
    double epsilon = 0.0;
    std::optional<double> dt, c2;
    int order = 4;
    auto* check = app.add_subcommand("check-resolution", "Resolution condition for a stored snapshot");
    check->add_option("snapshot", snapshot, "Snapshot file")->required();
    check->add_option("--epsilon", epsilon, "Target error")->required();
    check->add_option("--dt", dt, "Step size to check");
    check->add_option("--order", order, "Time-stepping order")->capture_default_str();
    check->add_option("--c2", c2, "Temporal error constant (enables the dt check)");

    CLI11_PARSE(app, argc, argv);
    sns::parallel::configure_from_env();

    try {
        if (*run) return sns::run_command(sns::load_config(config_path), std::cout);
        if (*converge) {
            const auto kind = study == "spatial"    ? sns::StudyKind::spatial
                              : study == "temporal" ? sns::StudyKind::temporal
                                                    : sns::StudyKind::combined;
            return sns::converge_command(kind, sns::load_config(config_path), std::cout);
        }
        if (*analyze) {
            std::vector<std::filesystem::path> dirs(run_dirs.begin(), run_dirs.end());
            return sns::analyze_command(dirs, std::cout);
        }
        if (*check) return sns::check_resolution_command(snapshot, epsilon, dt, order, c2, std::cout);
    } catch (const sns::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return sns::exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sns::exit_failure;
    }
    return sns::exit_failure;
}
