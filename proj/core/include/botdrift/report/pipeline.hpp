#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/report/config.hpp"

namespace botdrift::report {

enum class Stage {
    ingest,
    features,
    series,
    stationarity,
    strata,
    deps,
    corr,
    transitions,
    synth,
    all,
};

std::optional<Stage> parse_stage(std::string_view name) noexcept;
std::string_view to_string(Stage s) noexcept;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// Artifact file names inside the output directory.
namespace artifact {
inline constexpr const char* corpus = "corpus.jsonl";
inline constexpr const char* profiles = "profiles.csv";
inline constexpr const char* ingest_report = "ingest_report.json";
inline constexpr const char* features = "features.csv";
inline constexpr const char* series = "series.csv";
inline constexpr const char* stationarity = "stationarity.csv";
inline constexpr const char* strata_generation = "strata_generation.json";
inline constexpr const char* strata_age = "strata_age_class.json";
inline constexpr const char* dependencies = "dependencies.csv";
inline constexpr const char* transitions = "transitions.csv";
inline constexpr const char* census = "census.json";
inline constexpr const char* synth_corpus = "synth_corpus.jsonl";
inline constexpr const char* plots_dir = "plots";
std::string category_matrix(std::string_view generation);  // corr_G1.csv ...
std::string manifest(Stage stage);                         // manifest_<stage>.json
}  // namespace artifact

struct RunOutcome {
    int exit_code = kExitOk;
    std::string message;
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> written;
};

/// Runs one subcommand. Never throws: errors become exit codes 2 (input,
/// configuration, missing artifacts) or 3 (internal invariant or schema
/// violation, with a diagnostic dump in the output directory).
RunOutcome run(Stage stage, const RunConfig& config, std::ostream& log);

}  // namespace botdrift::report
