#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "botdrift/error.hpp"
#include "botdrift/report/config.hpp"
#include "botdrift/report/pipeline.hpp"

namespace {

constexpr const char* kStages[] = {"ingest", "features", "series", "stationarity", "strata",
                                   "deps",   "corr",     "transitions", "synth", "all"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"botdrift: behavioural drift analysis for bot tweet corpora"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    for (const char* name : kStages) {
        CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " stage");
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides out_dir in the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : botdrift::report::kExitInput;
    }

    const std::string stage_name = app.get_subcommands().front()->get_name();
    const auto stage = botdrift::report::parse_stage(stage_name);

    botdrift::report::RunConfig config;
    try {
        config = botdrift::report::load_config(config_path);
    } catch (const botdrift::Error& e) {
        std::cerr << "botdrift: " << e.what() << "\n";
        return botdrift::report::kExitInput;
    }
    if (!out_dir.empty()) {
        config.out_dir = out_dir;
    }

    const auto outcome = botdrift::report::run(*stage, config, std::cerr);
    for (const auto& w : outcome.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (outcome.exit_code != botdrift::report::kExitOk) {
        std::cerr << "botdrift " << stage_name << ": " << outcome.message << "\n";
        if (outcome.exit_code == botdrift::report::kExitInternal) {
            std::cerr << "diagnostic written to "
                      << (config.out_dir / ("diagnostic_" + stage_name + ".txt")).string()
                      << "\n";
        }
    }
    return outcome.exit_code;
}
