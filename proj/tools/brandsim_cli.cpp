// Command-line front end: run, ensemble and sweep.
//
// Exit codes: 0 success (non-convergence included), 2 configuration error,
// 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brandsim/brandsim.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

namespace fs = std::filesystem;

// Writes through `emit` to DIR/name, or stdout without --out.
void write_output(const std::optional<std::string>& out_dir, const std::string& name,
                  const std::function<void(std::ostream&)>& emit) {
    if (!out_dir) {
        emit(std::cout);
        return;
    }
    std::error_code ec;
    fs::create_directories(*out_dir, ec);
    if (ec) throw brandsim::IoError("cannot create output directory '" + *out_dir + "': " + ec.message());
    const fs::path path = fs::path(*out_dir) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw brandsim::IoError("cannot open '" + path.string() + "' for writing");
    emit(file);
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::string_view view(list);
    if (brandsim::detail::trim(view).empty()) return values;
    for (std::size_t start = 0;;) {
        const auto comma = view.find(',', start);
        values.push_back(brandsim::detail::parse_number<double>("values", view.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based simulator of brand adoption through customer wish dynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::int64_t runs = 1;
    unsigned parallel = 1;
    std::string param;
    std::string values;

    auto* run_cmd = app.add_subcommand("run", "Run one simulation and write timeseries.csv");
    auto* ensemble_cmd = app.add_subcommand("ensemble", "Run independent replications and write summary.txt");
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one ensemble per parameter value and write sweep.txt");

    for (auto* cmd : {run_cmd, ensemble_cmd, sweep_cmd}) {
        cmd->add_option("--config", config_path, "Config file (key = value lines)")->required();
        cmd->add_option("--out", out_dir, "Output directory (default: stdout)");
    }
    run_cmd->add_option("--seed", seed, "Override the config seed");
    ensemble_cmd->add_option("--seed", seed, "Override the config seed");
    ensemble_cmd->add_option("--runs", runs, "Number of replications")->required();
    ensemble_cmd->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--param", param, "Parameter to vary")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
    sweep_cmd->add_option("--runs", runs, "Replications per value");
    sweep_cmd->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        brandsim::SimConfig cfg = brandsim::load_config(config_path);
        if (seed) cfg.seed = *seed;

        if (run_cmd->parsed()) {
            const auto result = brandsim::run(cfg);
            write_output(out_dir, "timeseries.csv", [&](std::ostream& out) {
                brandsim::emit_csv(result.records, out, static_cast<std::size_t>(cfg.N));
            });
            std::cerr << "t_final=" << result.final.t << " converged="
                      << (result.converged_at ? "yes" : "no") << '\n';
        } else if (ensemble_cmd->parsed()) {
            const auto summary = brandsim::ensemble(cfg, runs, parallel);
            write_output(out_dir, "summary.txt", [&](std::ostream& out) { brandsim::emit_summary(summary, out); });
        } else {
            const auto grid = parse_values(values);
            const auto rows = brandsim::sweep_param(cfg, param, grid, runs, parallel);
            write_output(out_dir, "sweep.txt", [&](std::ostream& out) { brandsim::emit_sweep(param, rows, out); });
        }
    } catch (const brandsim::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const brandsim::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
