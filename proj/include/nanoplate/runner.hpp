#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nanoplate/config.hpp"
#include "nanoplate/modal.hpp"

namespace nanoplate {

/// One output row: config echo, mode index, nondimensional frequency.
struct ResultRow {
    double a_b_ratio = 0.0;
    double a_h_ratio = 0.0;
    double gradient_index = 0.0;
    double mu = 0.0;
    BoundaryCondition bc = BoundaryCondition::SSSS;
    int mode = 1;  // 1-based
    std::optional<double> omega_nd;     // empty on row failure
    std::optional<double> freq_ratio;   // empty without a mu=0 companion
    int dofs = 0;                       // free dofs of the solve
    double wall_ms = 0.0;
    std::string error;                  // non-empty marks a failed row

    bool ok() const { return error.empty(); }
};

/// Full pipeline for a single config: patch, section, assembly, constraints,
/// modal solve, nondimensionalization.
std::vector<ResultRow> run_solve(const AnalysisConfig& config);

/// Same pipeline returning the raw modal result (library entry point used by
/// the validation and test suites).
ModalResult solve_config(const AnalysisConfig& config);

/// Cartesian sweep over the grid, lexicographic row order
/// (gradient_index, mu, a_b_ratio, a_h_ratio, bc, mode).  Rows run
/// concurrently on up to `workers` threads; output order is deterministic.
/// When the mu axis contains 0, every row carries the frequency ratio
/// against its mu=0 twin.  Failed rows are flagged and the sweep continues.
std::vector<ResultRow> run_sweep(const SweepConfig& sweep, int workers = 0);

struct ConvergeRow {
    int net = 0;  // control points per direction
    int dofs = 0;
    double omega_nd = 0.0;
    std::optional<double> rel_change;  // vs the previous net
};

/// Fundamental frequency across a list of control-net sizes.
std::vector<ConvergeRow> run_converge(const ConvergeConfig& converge);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_converge_csv(std::ostream& out, const std::vector<ConvergeRow>& rows);

/// Format a row without the wall-time column (deterministic part).
std::string csv_row_deterministic(const ResultRow& row);

/// Validation against the embedded reference tables.
struct ValidationCheck {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;  // relative
    bool pass = false;

    double rel_error() const;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    int failures = 0;

    bool all_pass() const { return failures == 0; }
};

struct ValidateOptions {
    int workers = 0;        // 0 = hardware concurrency
    bool quiet = false;     // suppress per-check lines
};

/// Run the embedded-reference validation suites: isotropic table (1%),
/// graded-plate table (2%), and the simply supported nonlocal-ratio
/// consistency checks against the closed form (0.5%).
ValidationReport run_validate(std::ostream& out, const ValidateOptions& options = {});

}  // namespace nanoplate
