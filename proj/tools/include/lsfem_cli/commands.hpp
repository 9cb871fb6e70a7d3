#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsfem_cli/config.hpp"
#include "lsfem_cli/table.hpp"

namespace lsfem::cli {

/// Directory for run artifacts: $LSFEM_OUTPUT_DIR, else the working directory.
std::filesystem::path output_dir();

/// Runs the study, writing `<name>.dat` (row by row, so a failed level leaves
/// the completed rows behind) and, if asked, `<name>_L<level>.svg`. Prints
/// the rate summary to `out`. Returns 0, or 1 after a solver failure.
int run(const RunConfig& config, const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// Tail slopes of the error and estimator columns; nullopt where a column has
/// fewer than two usable values.
struct RateSummary {
    std::optional<double> err_l2;
    std::optional<double> err_energy;
    std::optional<double> estimator;
};
RateSummary summarize(std::span<const TableRow> rows);

struct CompareSide {
    double slope = 0.0;
    double final_error = 0.0;
    /// Dofs this table needs to reach the other table's final error.
    double dofs_to_reach_other = 0.0;
};

struct CompareReport {
    std::string column; ///< errH1_u when both tables have it, else L2_dxph
    CompareSide a;
    CompareSide b;
};

CompareReport compare(std::span<const TableRow> a, std::span<const TableRow> b);
void print_report(const CompareReport& report, std::ostream& out);

} // namespace lsfem::cli
