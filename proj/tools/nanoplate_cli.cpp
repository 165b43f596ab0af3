#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "nanoplate/runner.hpp"

namespace {

// Exit codes: 0 success, 1 validation/row failure, 2 input error.
enum : int { kOk = 0, kFailure = 1, kInputError = 2 };

struct OutputTarget {
    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = &std::cout;

    bool open(const std::string& path) {
        if (path.empty()) return true;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) {
            std::cerr << "error: cannot open output file '" << path << "'\n";
            return false;
        }
        stream = file.get();
        return true;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal graded Mindlin nanoplate vibration solver (NURBS discretization)"};
    app.require_subcommand(1);
    app.fallthrough();  // --out etc. may follow the subcommand

    std::string config_path, out_path;
    int modes_override = 0;
    int workers = 0;
    bool quiet = false;

    app.add_option("--out", out_path, "CSV destination (default: stdout)");
    app.add_option("--modes", modes_override, "Override the number of modes");
    app.add_option("--workers", workers, "Concurrent solves (default: hardware)");
    app.add_flag("--quiet", quiet, "Suppress progress output");

    CLI::App* solve = app.add_subcommand("solve", "Run a single analysis config");
    solve->add_option("config", config_path, "Analysis config file (JSON)")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("config", config_path, "Sweep config file (JSON)")->required();

    CLI::App* converge = app.add_subcommand("converge", "Run a mesh refinement study");
    converge->add_option("config", config_path, "Converge config file (JSON)")->required();

    app.add_subcommand("validate", "Check the solver against the embedded reference tables");

    CLI11_PARSE(app, argc, argv);

    OutputTarget target;
    if (!target.open(out_path)) return kInputError;

    try {
        if (solve->parsed()) {
            nanoplate::AnalysisConfig config = nanoplate::load_config_file(config_path);
            if (modes_override > 0) config.modes = modes_override;
            const auto rows = nanoplate::run_solve(config);
            nanoplate::write_csv(*target.stream, rows);
            for (const auto& row : rows)
                if (!row.ok()) {
                    if (!quiet) std::cerr << "row failed: " << row.error << '\n';
                    return kFailure;
                }
            return kOk;
        }
        if (sweep->parsed()) {
            nanoplate::SweepConfig config = nanoplate::load_sweep_config_file(config_path);
            if (modes_override > 0) config.base.modes = modes_override;
            const auto rows = nanoplate::run_sweep(config, workers);
            nanoplate::write_csv(*target.stream, rows);
            int failed = 0;
            for (const auto& row : rows)
                if (!row.ok()) ++failed;
            if (failed > 0) {
                if (!quiet)
                    std::cerr << "sweep: " << failed << " of " << rows.size()
                              << " rows failed\n";
                return kFailure;
            }
            return kOk;
        }
        if (converge->parsed()) {
            nanoplate::ConvergeConfig config = nanoplate::load_converge_config_file(config_path);
            const auto rows = nanoplate::run_converge(config);
            nanoplate::write_converge_csv(*target.stream, rows);
            return kOk;
        }
        // validate
        nanoplate::ValidateOptions options;
        options.workers = workers;
        options.quiet = quiet;
        const auto report = nanoplate::run_validate(*target.stream, options);
        return report.all_pass() ? kOk : kFailure;
    } catch (const nanoplate::ConfigError& ex) {
        std::cerr << "input error: " << ex.what() << '\n';
        return kInputError;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kFailure;
    }
}
