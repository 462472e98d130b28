#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace botdrift::report {

struct PlotEmission {
    std::vector<std::filesystem::path> written;
    std::vector<std::string> skipped;  // one notice per figure family without inputs
};

/// Writes the plot-data bundles whose stage outputs exist in out_dir:
/// fig_series.csv, fig_strata.csv, fig_chi2_matrix.csv, fig_transition_arrows.csv
/// and fig_evolution_patterns.csv under out_dir/plots.
PlotEmission emit_plot_data(const std::filesystem::path& out_dir,
                            std::optional<std::size_t> arrow_top_k = std::nullopt);

}  // namespace botdrift::report
