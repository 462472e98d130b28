#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/stats/adf.hpp"
#include "botdrift/synth.hpp"
#include "botdrift/topic.hpp"
#include "botdrift/transitions.hpp"

namespace botdrift::report {

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    corpus::InputFormat format = corpus::InputFormat::jsonl;
    corpus::CorpusConfig corpus;
    double alpha = 0.05;
    relations::Thresholds thresholds;
    topic::TopicParams topic;
    bool yates = false;
    stats::AdfSpec adf_spec = stats::AdfSpec::constant;
    std::optional<std::size_t> adf_max_lag;
    transitions::Scale transition_scale = transitions::Scale::signed_ordinal;
    std::optional<std::size_t> arrow_top_k;
    std::size_t top_hashtags = 30;
    std::optional<std::filesystem::path> lexicon;
    std::optional<synth::SynthSpec> synth;
    std::filesystem::path out_dir = "botdrift_out";

    /// The JSON the config was read from, echoed into manifests.
    std::string source_json;
};

/// Parses and range-checks a JSON config. Relative paths resolve against
/// `base_dir`. Throws Error(config).
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace botdrift::report
