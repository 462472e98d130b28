#include "botdrift/report/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/features.hpp"
#include "botdrift/parallel.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/report/digest.hpp"
#include "botdrift/report/plot_data.hpp"
#include "botdrift/report/schema.hpp"
#include "botdrift/sentiment.hpp"
#include "botdrift/series.hpp"
#include "botdrift/stats/stationarity.hpp"
#include "botdrift/strata.hpp"
#include "botdrift/synth.hpp"
#include "botdrift/transitions.hpp"

#ifndef BOTDRIFT_VERSION
#define BOTDRIFT_VERSION "0.0.0"
#endif

namespace botdrift::report {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace artifact {

std::string category_matrix(std::string_view generation) {
    return "corr_" + std::string(generation) + ".csv";
}

std::string manifest(Stage stage) { return "manifest_" + std::string(to_string(stage)) + ".json"; }

}  // namespace artifact

namespace {

constexpr std::array<std::string_view, 10> kStageNames = {
    "ingest", "features", "series", "stationarity", "strata",
    "deps",   "corr",     "transitions", "synth",   "all"};

// Shared state of one invocation. Upstream artifacts are read from disk on
// first use and cached, so `all` and single stages see identical inputs.
struct Context {
    const RunConfig& config;
    std::ostream& log;
    fs::path out;
    std::size_t threads = 1;
    std::optional<corpus::Corpus> corpus;
    std::optional<std::vector<features::FeatureVector>> vectors;
    std::vector<std::string> warnings;
};

struct StageRecord {
    std::vector<fs::path> inputs;
    std::vector<fs::path> outputs;
    std::vector<std::string> warnings;
};

fs::path path_of(const Context& ctx, const std::string& name) { return ctx.out / name; }

void require_artifact(const fs::path& p, std::string_view producer) {
    if (!fs::exists(p)) {
        fail(ErrorCode::precondition, "missing input " + p.string() + "; run the '" +
                                          std::string(producer) + "' stage first");
    }
}

void write_file(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::io, "cannot write " + p.string());
    }
    out << bytes;
    if (!out) {
        fail(ErrorCode::io, "write failed for " + p.string());
    }
}

std::string display_path(const Context& ctx, const fs::path& p) {
    const fs::path rel = p.lexically_relative(ctx.out);
    if (!rel.empty() && *rel.begin() != "..") {
        return rel.generic_string();
    }
    return p.generic_string();
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_manifest(Context& ctx, Stage stage, const StageRecord& rec, RunOutcome& outcome) {
    ordered_json m;
    m["stage"] = std::string(to_string(stage));
    m["version"] = BOTDRIFT_VERSION;
    m["timestamp"] = timestamp();
    ordered_json cfg;
    try {
        cfg = ordered_json::parse(ctx.config.source_json.empty() ? "{}" : ctx.config.source_json);
    } catch (const ordered_json::parse_error&) {
        cfg = ctx.config.source_json;
    }
    m["config"] = cfg;
    auto digests = [&](const std::vector<fs::path>& paths) {
        ordered_json arr = ordered_json::array();
        for (const auto& p : paths) {
            arr.push_back({{"path", display_path(ctx, p)}, {"sha256", sha256_file(p)}});
        }
        return arr;
    };
    m["inputs"] = digests(rec.inputs);
    m["outputs"] = digests(rec.outputs);
    m["warnings"] = rec.warnings;
    const fs::path p = path_of(ctx, artifact::manifest(stage));
    write_file(p, m.dump(2) + "\n");
    outcome.written.insert(outcome.written.end(), rec.outputs.begin(), rec.outputs.end());
    outcome.written.push_back(p);
    outcome.warnings.insert(outcome.warnings.end(), rec.warnings.begin(), rec.warnings.end());
}

const corpus::Corpus& load_corpus(Context& ctx, StageRecord& rec) {
    const fs::path p = path_of(ctx, artifact::corpus);
    require_artifact(p, "ingest");
    rec.inputs.push_back(p);
    if (!ctx.corpus) {
        ctx.corpus = corpus::ingest_file(p.string(), corpus::InputFormat::jsonl, ctx.config.corpus)
                         .corpus;
    }
    return *ctx.corpus;
}

const std::vector<features::FeatureVector>& load_features(Context& ctx, StageRecord& rec) {
    const corpus::Corpus& c = load_corpus(ctx, rec);
    const fs::path p = path_of(ctx, artifact::features);
    require_artifact(p, "features");
    rec.inputs.push_back(p);
    if (!ctx.vectors) {
        ctx.vectors = features::read_dump(p.string(), c);
    }
    return *ctx.vectors;
}

std::string profiles_csv(const corpus::Corpus& c) {
    std::ostringstream out;
    csv::Writer w(out);
    w.row({"account_id", "first_year", "last_year", "lifespan_years", "generation", "age_class",
           "action_profile", "tweet_count"});
    for (const auto& [id, p] : c.profiles) {
        w.row({p.account_id, std::to_string(p.first_year), std::to_string(p.last_year),
               std::to_string(p.lifespan_years), std::string(corpus::to_string(p.generation)),
               std::string(corpus::to_string(p.age_class)),
               std::string(corpus::to_string(p.action_profile)), std::to_string(p.tweet_count)});
    }
    return out.str();
}

void stage_synth(Context& ctx, StageRecord& rec) {
    if (!ctx.config.synth) {
        fail(ErrorCode::config, "the synth stage needs a 'synth' spec in the config");
    }
    std::ostringstream out;
    synth::write_corpus(out, *ctx.config.synth);
    const fs::path p = path_of(ctx, artifact::synth_corpus);
    write_file(p, out.str());
    rec.outputs.push_back(p);
    ctx.log << "synth: wrote " << p.string() << "\n";
}

void stage_ingest(Context& ctx, StageRecord& rec, const std::vector<fs::path>& inputs,
                  corpus::InputFormat format) {
    if (inputs.empty()) {
        fail(ErrorCode::config, "no input corpus configured");
    }
    std::vector<corpus::TweetRecord> records;
    ordered_json report;
    ordered_json per_input = ordered_json::array();
    ordered_json diagnostics = ordered_json::array();
    std::set<std::string> seen;
    std::size_t cross_duplicates = 0;
    for (const auto& in : inputs) {
        if (!fs::exists(in)) {
            fail(ErrorCode::io, "input " + in.string() + " does not exist");
        }
        rec.inputs.push_back(in);
        corpus::IngestResult r = corpus::ingest_file(in.string(), format, ctx.config.corpus);
        per_input.push_back({{"path", display_path(ctx, in)},
                             {"lines_seen", r.lines_seen},
                             {"accepted", r.corpus.records.size()},
                             {"rejected", r.diagnostics.size()}});
        for (const auto& d : r.diagnostics) {
            diagnostics.push_back(
                {{"input", display_path(ctx, in)}, {"line", d.line}, {"reason", d.reason}});
        }
        for (auto& t : r.corpus.records) {
            if (seen.insert(t.tweet_id).second) {
                records.push_back(std::move(t));
            } else {
                ++cross_duplicates;
            }
        }
        if (!r.diagnostics.empty()) {
            rec.warnings.push_back(display_path(ctx, in) + ": " +
                                   std::to_string(r.diagnostics.size()) + " lines rejected");
        }
    }
    if (cross_duplicates > 0) {
        rec.warnings.push_back(std::to_string(cross_duplicates) +
                               " tweet_ids repeated across inputs were dropped");
    }
    if (records.empty()) {
        fail(ErrorCode::corpus_rejected, "corpus empty");
    }
    corpus::Corpus c = corpus::make_corpus(std::move(records), ctx.config.corpus);

    std::size_t outside = 0;
    for (const auto& [id, p] : c.profiles) {
        outside += p.generation == corpus::Generation::outside;
    }
    if (outside > 0) {
        rec.warnings.push_back(std::to_string(outside) +
                               " accounts fall outside the generation bounds");
    }

    report["inputs"] = per_input;
    report["records"] = c.records.size();
    report["accounts"] = c.profiles.size();
    report["cross_input_duplicates"] = cross_duplicates;
    report["diagnostics"] = diagnostics;

    std::ostringstream jsonl;
    corpus::write_jsonl(jsonl, c.records);
    const fs::path pc = path_of(ctx, artifact::corpus);
    const fs::path pp = path_of(ctx, artifact::profiles);
    const fs::path pr = path_of(ctx, artifact::ingest_report);
    write_file(pc, jsonl.str());
    write_file(pp, profiles_csv(c));
    write_file(pr, report.dump(2) + "\n");
    rec.outputs.insert(rec.outputs.end(), {pc, pp, pr});
    ctx.corpus.reset();
    ctx.vectors.reset();
    ctx.log << "ingest: " << c.records.size() << " records, " << c.profiles.size()
            << " accounts\n";
}

void stage_features(Context& ctx, StageRecord& rec) {
    const corpus::Corpus& c = load_corpus(ctx, rec);
    const sentiment::Lexicon custom =
        ctx.config.lexicon ? sentiment::Lexicon::load(ctx.config.lexicon->string())
                           : sentiment::Lexicon{};
    if (ctx.config.lexicon) {
        rec.inputs.push_back(*ctx.config.lexicon);
    }
    const sentiment::Lexicon& lex = ctx.config.lexicon ? custom : sentiment::Lexicon::bundled();
    features::ExtractionConfig ec;
    ec.topic = ctx.config.topic;
    auto vectors = features::extract_features(c, lex, ec, ctx.threads);
    for (const auto& v : vectors) {
        if (!v.exclusive()) {
            fail(ErrorCode::internal, "feature family exclusivity violated");
        }
    }
    std::ostringstream out;
    features::write_dump(out, c, vectors);
    const fs::path p = path_of(ctx, artifact::features);
    write_file(p, out.str());
    validate_csv(p, features_schema());
    rec.outputs.push_back(p);
    ctx.vectors = std::move(vectors);
    ctx.log << "features: " << c.records.size() << " vectors\n";
}

void stage_series(Context& ctx, StageRecord& rec) {
    const auto& v = load_features(ctx, rec);
    const auto series = tsagg::build_all_series(*ctx.corpus, v, ctx.config.corpus.year_range);
    std::ostringstream out;
    tsagg::write_series_csv(out, series);
    const fs::path p = path_of(ctx, artifact::series);
    write_file(p, out.str());
    validate_csv(p, series_schema());
    rec.outputs.push_back(p);
    ctx.log << "series: " << series.size() << " series over "
            << ctx.config.corpus.year_range.length() << " years\n";
}

void stage_stationarity(Context& ctx, StageRecord& rec) {
    const fs::path in = path_of(ctx, artifact::series);
    require_artifact(in, "series");
    rec.inputs.push_back(in);
    const auto series = tsagg::read_series_csv(in.string());
    stats::VerdictConfig vc;
    vc.alpha = ctx.config.alpha;
    vc.adf_spec = ctx.config.adf_spec;
    vc.adf_max_lag = ctx.config.adf_max_lag;

    std::vector<stats::VerdictRow> rows(tsagg::kMetaFeatures.size());
    parallel_for(
        rows.size(),
        [&](std::size_t i) {
            const std::string name(tsagg::to_string(tsagg::kMetaFeatures[i]));
            rows[i].meta_feature = name;
            const tsagg::YearlySeries* s = nullptr;
            for (const auto& cand : series) {
                if (cand.name == name) {
                    s = &cand;
                }
            }
            if (s == nullptr) {
                fail(ErrorCode::schema, in.string() + " lacks the " + name + " series");
            }
            try {
                rows[i].verdict = stats::assess(name, s->years, s->counts, vc);
            } catch (const Error& e) {
                switch (e.code()) {
                    case ErrorCode::degenerate_series:
                    case ErrorCode::degenerate_regressor:
                    case ErrorCode::series_too_short:
                        rows[i].failure = e.what();
                        break;
                    default:
                        throw;
                }
            }
        },
        ctx.threads);

    for (const auto& r : rows) {
        if (r.verdict) {
            for (const auto& note : r.verdict->notes) {
                rec.warnings.push_back(r.meta_feature + ": " + note);
            }
        } else {
            rec.warnings.push_back(r.meta_feature + ": untestable (" + r.failure + ")");
        }
    }
    std::ostringstream out;
    stats::write_verdicts_csv(out, rows);
    const fs::path p = path_of(ctx, artifact::stationarity);
    write_file(p, out.str());
    validate_csv(p, verdict_schema());
    rec.outputs.push_back(p);
    ctx.log << "stationarity: " << rows.size() << " verdicts\n";
}

void stage_strata(Context& ctx, StageRecord& rec) {
    const auto& v = load_features(ctx, rec);
    const corpus::Corpus& c = *ctx.corpus;
    for (auto scheme : {tsagg::Scheme::generation, tsagg::Scheme::age_class}) {
        const auto strata = tsagg::summarize_stratum(c, v, scheme, ctx.config.top_hashtags);
        const auto outside = tsagg::summarize_outside(c, v, scheme, ctx.config.top_hashtags);
        std::size_t total = outside.tweets;
        for (const auto& s : strata) {
            total += s.tweets;
        }
        if (total != c.records.size()) {
            fail(ErrorCode::internal, "strata do not partition the corpus");
        }
        const fs::path p = path_of(ctx, scheme == tsagg::Scheme::generation
                                                ? artifact::strata_generation
                                                : artifact::strata_age);
        write_file(p, tsagg::summaries_to_json(scheme, strata, outside));
        validate_strata_json(p);
        rec.outputs.push_back(p);
        for (const auto& s : strata) {
            if (s.zero_population) {
                rec.warnings.push_back(std::string(tsagg::to_string(scheme)) + " stratum " +
                                       s.stratum + " is empty");
            }
        }
    }
    ctx.log << "strata: wrote generation and age-class summaries\n";
}

void stage_deps(Context& ctx, StageRecord& rec) {
    const auto& v = load_features(ctx, rec);
    const auto cells =
        relations::dependency_analysis(v, ctx.config.alpha, ctx.config.yates, ctx.threads);
    std::size_t undefined = 0;
    for (const auto& c : cells) {
        undefined += !c.test.has_value();
    }
    if (undefined > 0) {
        rec.warnings.push_back(std::to_string(undefined) +
                               " pairs have an undefined chi-square test (zero marginal)");
    }
    std::ostringstream out;
    relations::write_dependency_csv(out, cells);
    const fs::path p = path_of(ctx, artifact::dependencies);
    write_file(p, out.str());
    validate_csv(p, dependency_schema());
    rec.outputs.push_back(p);
    ctx.log << "deps: " << cells.size() << " pairs\n";
}

void stage_corr(Context& ctx, StageRecord& rec) {
    const auto& v = load_features(ctx, rec);
    const auto gens = relations::tweet_generations(*ctx.corpus);
    for (auto g : corpus::kGenerations) {
        const auto m =
            relations::build_category_matrix(v, gens, g, ctx.config.thresholds, ctx.threads);
        const auto dist = relations::category_distribution(m);
        std::size_t sum = 0;
        for (auto n : dist) {
            sum += n;
        }
        if (sum != features::kPairCount) {
            fail(ErrorCode::internal, "category counts do not sum to 153");
        }
        std::size_t degenerate = 0;
        for (const auto& [i, j] : features::all_pairs()) {
            degenerate += m.degenerate(i, j);
        }
        if (degenerate > 0) {
            rec.warnings.push_back(std::string(corpus::to_string(g)) + ": " +
                                   std::to_string(degenerate) +
                                   " pairs involve a constant feature and were set to NP");
        }
        std::ostringstream out;
        relations::write_category_csv(out, m);
        const fs::path p = path_of(ctx, artifact::category_matrix(corpus::to_string(g)));
        write_file(p, out.str());
        validate_csv(p, category_schema());
        rec.outputs.push_back(p);
    }
    ctx.log << "corr: three category matrices\n";
}

void stage_transitions(Context& ctx, StageRecord& rec) {
    std::vector<relations::CategoryMatrix> mats;
    for (auto g : corpus::kGenerations) {
        const fs::path p = path_of(ctx, artifact::category_matrix(corpus::to_string(g)));
        require_artifact(p, "corr");
        rec.inputs.push_back(p);
        mats.push_back(relations::read_category_csv(p.string(), std::string(corpus::to_string(g))));
    }
    const auto traj =
        transitions::trajectories(mats[0], mats[1], mats[2], ctx.config.transition_scale);
    const auto census = transitions::transition_census(traj);
    if (census.total() != features::kPairCount) {
        fail(ErrorCode::internal, "transition census does not partition the 153 pairs");
    }
    std::ostringstream out;
    transitions::write_report_csv(out, traj);
    const fs::path pt = path_of(ctx, artifact::transitions);
    const fs::path pc = path_of(ctx, artifact::census);
    write_file(pt, out.str());
    write_file(pc, transitions::census_to_json(census));
    validate_csv(pt, transitions_schema());
    validate_census_json(pc);
    rec.outputs.insert(rec.outputs.end(), {pt, pc});
    ctx.log << "transitions: " << traj.size() << " trajectories\n";
}

void emit_plots(Context& ctx, StageRecord& rec) {
    const PlotEmission e = emit_plot_data(ctx.out, ctx.config.arrow_top_k);
    rec.outputs.insert(rec.outputs.end(), e.written.begin(), e.written.end());
    for (const auto& s : e.skipped) {
        ctx.log << "plots: " << s << "\n";
    }
}

void run_stage(Context& ctx, Stage stage, RunOutcome& outcome) {
    if (stage == Stage::all) {
        std::vector<fs::path> inputs = ctx.config.inputs;
        corpus::InputFormat format = ctx.config.format;
        if (inputs.empty() && ctx.config.synth) {
            run_stage(ctx, Stage::synth, outcome);
            inputs.push_back(path_of(ctx, artifact::synth_corpus));
            format = corpus::InputFormat::jsonl;
        }
        StageRecord ingest;
        stage_ingest(ctx, ingest, inputs, format);
        write_manifest(ctx, Stage::ingest, ingest, outcome);
        for (Stage s : {Stage::features, Stage::series, Stage::stationarity, Stage::strata,
                        Stage::deps, Stage::corr, Stage::transitions}) {
            run_stage(ctx, s, outcome);
        }
        StageRecord summary;
        emit_plots(ctx, summary);
        for (const auto& p : outcome.written) {
            if (p.filename().string().rfind("manifest_", 0) != 0 &&
                std::find(summary.outputs.begin(), summary.outputs.end(), p) ==
                    summary.outputs.end()) {
                summary.inputs.push_back(p);
            }
        }
        write_manifest(ctx, Stage::all, summary, outcome);
        return;
    }

    StageRecord rec;
    switch (stage) {
        case Stage::synth: stage_synth(ctx, rec); break;
        case Stage::ingest:
            stage_ingest(ctx, rec, ctx.config.inputs, ctx.config.format);
            break;
        case Stage::features: stage_features(ctx, rec); break;
        case Stage::series: stage_series(ctx, rec); break;
        case Stage::stationarity: stage_stationarity(ctx, rec); break;
        case Stage::strata: stage_strata(ctx, rec); break;
        case Stage::deps: stage_deps(ctx, rec); break;
        case Stage::corr: stage_corr(ctx, rec); break;
        case Stage::transitions: stage_transitions(ctx, rec); break;
        case Stage::all: break;
    }
    write_manifest(ctx, stage, rec, outcome);
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::io:
        case ErrorCode::corpus_rejected:
        case ErrorCode::config:
        case ErrorCode::precondition:
        case ErrorCode::series_too_short:
        case ErrorCode::empty_population:
        case ErrorCode::missing_pairs:
        case ErrorCode::infeasible_spec:
            return kExitInput;
        default:
            return kExitInternal;
    }
}

void dump_diagnostic(const fs::path& out, Stage stage, const std::string& code,
                     const std::string& message) {
    std::error_code ec;
    fs::create_directories(out, ec);
    std::ofstream f(out / ("diagnostic_" + std::string(to_string(stage)) + ".txt"),
                    std::ios::trunc);
    f << "stage: " << to_string(stage) << "\n"
      << "error: " << code << "\n"
      << "message: " << message << "\n"
      << "version: " << BOTDRIFT_VERSION << "\n";
}

}  // namespace

std::optional<Stage> parse_stage(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kStageNames.size(); ++i) {
        if (kStageNames[i] == name) {
            return static_cast<Stage>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(Stage s) noexcept { return kStageNames[static_cast<std::size_t>(s)]; }

RunOutcome run(Stage stage, const RunConfig& config, std::ostream& log) {
    RunOutcome outcome;
    Context ctx{config, log, config.out_dir, thread_budget(), {}, {}, {}};
    try {
        std::error_code ec;
        fs::create_directories(ctx.out, ec);
        if (ec) {
            fail(ErrorCode::io, "cannot create output directory " + ctx.out.string());
        }
        run_stage(ctx, stage, outcome);
        outcome.message = "ok";
    } catch (const Error& e) {
        outcome.exit_code = exit_code_for(e.code());
        outcome.message = e.what();
        if (outcome.exit_code == kExitInternal) {
            dump_diagnostic(ctx.out, stage, std::string(to_string(e.code())), e.what());
        }
    } catch (const std::exception& e) {
        outcome.exit_code = kExitInternal;
        outcome.message = e.what();
        dump_diagnostic(ctx.out, stage, "internal", e.what());
    }
    return outcome;
}

}  // namespace botdrift::report
