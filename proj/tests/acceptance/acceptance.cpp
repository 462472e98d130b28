// Acceptance checks for criteria 1-7. Prints one PASS/FAIL line per criterion
// and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/features.hpp"
#include "botdrift/parallel.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/report/config.hpp"
#include "botdrift/report/pipeline.hpp"
#include "botdrift/sentiment.hpp"
#include "botdrift/series.hpp"
#include "botdrift/stats/adf.hpp"
#include "botdrift/stats/kpss.hpp"
#include "botdrift/stats/stationarity.hpp"
#include "botdrift/strata.hpp"
#include "botdrift/synth.hpp"
#include "botdrift/text.hpp"
#include "botdrift/topic.hpp"
#include "botdrift/transitions.hpp"
#include "fixtures.hpp"
#include "recount.hpp"

using namespace botdrift;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Collects sub-check failures so a criterion reports everything it saw.
class Checks {
public:
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok_ = false;
            if (!failures_.empty()) failures_ += "; ";
            failures_ += what;
        }
    }
    Outcome done(const std::string& summary) const {
        return {ok_, ok_ ? summary : summary + " | failed: " + failures_};
    }

private:
    bool ok_ = true;
    std::string failures_;
};

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fmt(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Classification of the reference stationarity rows.

struct ReferenceRow {
    const char* name;
    double adf_p;
    double level_p;
    double trend_p;
    double slope;
    stats::TrendType expect;
};

Outcome criterion_1() {
    using stats::TrendType;
    const ReferenceRow rows[] = {
        {"Tweeting", 0.714, 0.10, 0.10, 17084, TrendType::deterministic},
        {"Retweeting", 0.368, 0.036, 0.010, 3698, TrendType::stochastic},
        {"Replying", 0.811, 0.085, 0.064, 3866, TrendType::deterministic},
        {"URLs", 0.794, 0.10, 0.090, 22413, TrendType::deterministic},
        {"Hashtags", 0.960, 0.069, 0.10, 14712, TrendType::deterministic},
        {"Emojis", 0.907, 0.049, 0.063, 2361, TrendType::deterministic},
        {"Media", 0.410, 0.094, 0.086, 17889, TrendType::deterministic},
        {"Sentiment", 0.730, 0.10, 0.10, 6196, TrendType::deterministic},
        {"Duplicated text", 0.707, 0.10, 0.10, 8790, TrendType::deterministic},
        {"Languages", 0.636, 0.10, 0.10, -41, TrendType::deterministic},
    };
    Checks c;
    int det = 0, sto = 0, high = 0, low = 0;
    for (const auto& r : rows) {
        stats::AdfResult adf;
        adf.p_value = r.adf_p;
        adf.reject_unit_root = r.adf_p < 0.05;
        stats::KpssResult kpss;
        kpss.level_p = r.level_p;
        kpss.trend_p = r.trend_p;
        stats::TrendFit fit;
        fit.slope = r.slope;
        fit.direction = r.slope > 0 ? stats::Direction::upward : stats::Direction::downward;
        const auto t = stats::classify_stationarity(adf, kpss, 0.05);
        const auto p = stats::classify_predictability(t, fit);
        c.expect(t == r.expect, std::string(r.name) + " classified " + std::string(to_string(t)));
        const bool want_low = std::string(r.name) == "Retweeting";
        c.expect((p == stats::Predictability::low) == want_low,
                 std::string(r.name) + " predictability " + std::string(to_string(p)));
        det += t == TrendType::deterministic;
        sto += t == TrendType::stochastic;
        high += p == stats::Predictability::high;
        low += p == stats::Predictability::low;
    }
    c.expect(det == 9 && sto == 1, "trend-type counts");
    c.expect(high == 9 && low == 1, "predictability counts");
    return c.done(std::to_string(det) + " deterministic, " + std::to_string(sto) +
                  " stochastic; " + std::to_string(high) + " high, " + std::to_string(low) +
                  " low");
}

// ---------------------------------------------------------------------------
// 2. Category distributions and the nine-cell transition census.

Outcome criterion_2() {
    using relations::Category;
    using transitions::Dir;
    using transitions::GlobalLabel;
    Checks c;
    const auto m = fixtures::reference_matrices();
    // Counts in SN, MN, WN, NP, WP, MP, SP order.
    const std::array<std::array<std::size_t, 7>, 3> expect = {{
        {7, 25, 34, 33, 34, 20, 0},
        {8, 44, 33, 0, 28, 40, 0},
        {11, 61, 12, 0, 13, 52, 4},
    }};
    std::string sums;
    for (std::size_t g = 0; g < 3; ++g) {
        const auto d = relations::category_distribution(m[g]);
        std::size_t total = 0;
        for (auto x : d) total += x;
        c.expect(d == expect[g], m[g].generation() + " distribution");
        c.expect(total == 153, m[g].generation() + " sum " + std::to_string(total));
        sums += (g ? "/" : "") + std::to_string(total);
    }

    const auto census = transitions::transition_census(m[0], m[1], m[2]);
    struct Cell {
        Dir t1, t2;
        std::size_t count;
        GlobalLabel label;
    };
    const Cell cells[] = {
        {Dir::E, Dir::E, 29, GlobalLabel::Equal},      {Dir::D, Dir::D, 19, GlobalLabel::Decreased},
        {Dir::I, Dir::I, 15, GlobalLabel::Increased},  {Dir::D, Dir::I, 12, GlobalLabel::Flipped},
        {Dir::I, Dir::D, 11, GlobalLabel::Flipped},    {Dir::D, Dir::E, 26, GlobalLabel::MixedStable},
        {Dir::I, Dir::E, 22, GlobalLabel::MixedStable}, {Dir::E, Dir::I, 11, GlobalLabel::MixedStable},
        {Dir::E, Dir::D, 8, GlobalLabel::MixedStable},
    };
    std::string got;
    for (const auto& cell : cells) {
        const auto n = census.cell(cell.t1, cell.t2);
        got += (got.empty() ? "" : "/") + std::to_string(n);
        c.expect(n == cell.count, "cell (" + std::string(to_string(cell.t1)) + "," +
                                      std::string(to_string(cell.t2)) + ")=" + std::to_string(n));
        c.expect(transitions::global_label(cell.t1, cell.t2) == cell.label,
                 "label of (" + std::string(to_string(cell.t1)) + "," +
                     std::string(to_string(cell.t2)) + ")");
    }
    c.expect(census.total() == 153, "census total");
    return c.done("category sums " + sums + "; census " + got + " of " +
                  std::to_string(census.total()));
}

// ---------------------------------------------------------------------------
// 3. Monte Carlo calibration, 500 replicates at n = 200.

Outcome criterion_3() {
    const std::size_t n = 200;
    const int reps = 500;
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> z(0.0, 1.0);
    int adf_ar = 0, adf_rw = 0, kpss_rw = 0, kpss_wn = 0;
    std::vector<double> rw(n), ar(n), wn(n);
    for (int r = 0; r < reps; ++r) {
        double acc = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rw[i] = acc += z(rng);
            ar[i] = prev = 0.5 * prev + z(rng);
            wn[i] = z(rng);
        }
        adf_ar += stats::adf_test(ar).reject_unit_root;
        adf_rw += stats::adf_test(rw).reject_unit_root;
        kpss_rw += stats::kpss_test(rw, stats::KpssVariant::level).p_value < 0.05;
        kpss_wn += stats::kpss_test(wn, stats::KpssVariant::level).p_value < 0.05;
    }
    auto rate = [&](int k) { return static_cast<double>(k) / reps; };
    Checks c;
    c.expect(rate(adf_ar) >= 0.90, "ADF on AR(0.5) rejects " + fmt(rate(adf_ar)));
    c.expect(rate(adf_rw) <= 0.10, "ADF on random walk rejects " + fmt(rate(adf_rw)));
    c.expect(rate(kpss_rw) >= 0.90, "KPSS on random walk rejects " + fmt(rate(kpss_rw)));
    c.expect(rate(kpss_wn) <= 0.10, "KPSS on white noise rejects " + fmt(rate(kpss_wn)));
    return c.done("ADF reject AR(0.5) " + fmt(rate(adf_ar)) + ", RW " + fmt(rate(adf_rw)) +
                  "; KPSS reject RW " + fmt(rate(kpss_rw)) + ", WN " + fmt(rate(kpss_wn)));
}

// ---------------------------------------------------------------------------
// 4. Oracle equivalences.

Outcome criterion_4() {
    Checks c;
    std::mt19937_64 rng(4242);

    // Spearman on binary columns against the closed-form phi coefficient.
    double worst_phi = 0.0;
    int fixtures_run = 0;
    std::uniform_real_distribution<double> prob(0.05, 0.95);
    while (fixtures_run < 1000) {
        const std::size_t n = 10 + rng() % 2000;
        const auto x = fixtures::bernoulli_column(rng, n, prob(rng));
        const auto y = fixtures::bernoulli_column(rng, n, prob(rng));
        const double phi = fixtures::phi_oracle(x, y);
        if (!std::isfinite(phi)) continue;  // a constant column has no phi
        std::vector<features::FeatureVector> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i].f.set(features::index(features::Feature::F9), x[i] > 0.5);
            v[i].f.set(features::index(features::Feature::F15), y[i] > 0.5);
        }
        const std::vector<corpus::Generation> g(n, corpus::Generation::G1);
        const double rho = relations::spearman_binary(v, g, features::Feature::F9,
                                                      features::Feature::F15,
                                                      corpus::Generation::G1);
        worst_phi = std::max(worst_phi, std::abs(rho - phi));
        ++fixtures_run;
    }
    c.expect(worst_phi <= 1e-12, "Spearman vs phi max error " + sci(worst_phi));

    // Chi-square against the expected-count formula.
    double worst_chi = 0.0;
    std::uniform_int_distribution<std::uint64_t> cell(1, 500);
    for (int i = 0; i < 1000; ++i) {
        const auto a = cell(rng), b = cell(rng), cc = cell(rng), d = cell(rng);
        const double got = relations::chi2_test({a, b, cc, d}).chi2;
        const double want = fixtures::chi2_oracle(static_cast<double>(a), static_cast<double>(b),
                                                  static_cast<double>(cc), static_cast<double>(d));
        worst_chi = std::max(worst_chi, std::abs(got - want));
    }
    c.expect(worst_chi <= 1e-9, "chi2 max error " + sci(worst_chi));

    // Duplicate marking against pairwise comparison.
    const std::vector<std::string> words = {"buy", "now", "sale", "deal", "http://x.co/a", "", "#win"};
    std::size_t dup_mismatch = 0, dup_tweets = 0;
    for (int account = 0; account < 100; ++account) {
        const std::size_t n = 1 + rng() % 200;
        std::vector<text::NormalizedText> texts;
        for (std::size_t i = 0; i < n; ++i) {
            std::string t;
            const std::size_t len = rng() % 4;
            for (std::size_t w = 0; w < len; ++w) {
                t += (rng() % 2 ? "  " : " ") + words[rng() % words.size()];
                if (rng() % 5 == 0) t += "X";
            }
            texts.push_back(text::normalize_text(t));
        }
        const auto flags = topic::mark_duplicates(texts);
        for (std::size_t i = 0; i < n; ++i) {
            bool dup = false;
            for (std::size_t j = 0; j < n && !dup; ++j) {
                dup = j != i && !texts[i].cleaned.empty() && texts[i].cleaned == texts[j].cleaned;
            }
            dup_mismatch += flags[i] != dup;
            dup_tweets += dup;
        }
    }
    c.expect(dup_mismatch == 0, std::to_string(dup_mismatch) + " duplicate flags disagree");

    // Yearly series against a single-pass recount.
    std::size_t series_checked = 0, series_mismatch = 0, largest = 0;
    for (std::uint64_t seed = 1; seed <= 7; ++seed) {
        auto spec = fixtures::small_spec(seed * 31, 4 + seed * 2);
        if (seed == 7) {
            spec.tweeting = {400.0, 20.0, 5.0};
            spec.retweeting = {150.0, 10.0, 3.0};
            spec.replying = {50.0, 3.0, 2.0};
        }
        spec.content.language_hint = 0.7;
        const auto corp = corpus::make_corpus(synth::generate(spec));
        if (corp.records.size() > 10000) continue;
        largest = std::max(largest, corp.records.size());
        const auto vec = features::extract_features(corp, sentiment::Lexicon::bundled());
        const auto all = tsagg::build_all_series(corp, vec, {2009, 2020});
        const auto oracle = fixtures::recount(corp, vec, {2009, 2020});
        for (auto m : tsagg::kMetaFeatures) {
            ++series_checked;
            series_mismatch +=
                all[static_cast<std::size_t>(m)].counts != oracle.at(std::string(to_string(m)));
        }
    }
    c.expect(series_checked >= 50, "too few series checked");
    c.expect(series_mismatch == 0, std::to_string(series_mismatch) + " series disagree");

    return c.done("phi err " + sci(worst_phi) + " over 1000; chi2 err " +
                  sci(worst_chi) + "; duplicates agree on 100 accounts (" +
                  std::to_string(dup_tweets) + " flagged); " + std::to_string(series_checked) +
                  " series match recount (corpora up to " + std::to_string(largest) + " tweets)");
}

// ---------------------------------------------------------------------------
// 5. Round trip through the whole pipeline on planted data.

std::map<std::string, std::vector<std::string>> rows_by_first(const fs::path& p) {
    const auto t = csv::read_file(p.string());
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& r : t.rows) out[r.fields.at(0)] = r.fields;
    return out;
}

Outcome criterion_5() {
    Checks c;

    // Planted slope through the CLI pipeline on a ~100k-tweet corpus.
    const fs::path dir = fixtures::scratch_dir("accept_roundtrip");
    const std::string cfg_json = R"({
      "synth": {
        "seed": 20, "accounts_per_generation": 150,
        "rates": {"tweeting": {"intercept": 800, "slope": 20, "noise": 2},
                  "retweeting": {"intercept": 5000, "slope": 0, "noise": 20},
                  "replying": {"intercept": 2400, "slope": 0, "noise": 10}},
        "content": {"multi_hashtag": 0.3, "single_hashtag": 0.2, "media": 0.3}
      }
    })";
    auto cfg = report::parse_config(cfg_json, dir);
    cfg.out_dir = dir / "out";
    std::ostringstream log;
    const auto t0 = std::chrono::steady_clock::now();
    const auto outcome = report::run(report::Stage::all, cfg, log);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(outcome.exit_code == 0, "pipeline exit " + std::to_string(outcome.exit_code) + ": " +
                                         outcome.message);
    std::size_t tweets = 0;
    std::string slope = "NA", type = "NA", dir_s = "NA";
    if (outcome.exit_code == 0) {
        std::ifstream in(cfg.out_dir / report::artifact::corpus);
        for (std::string line; std::getline(in, line);) tweets += !line.empty();
        const auto verdicts = rows_by_first(cfg.out_dir / report::artifact::stationarity);
        const auto& tw = verdicts.at("tweeting");
        // meta_feature, adf_stat, adf_lag, adf_p, kpss_level_p, kpss_trend_p, trend_type, slope, direction
        type = tw.at(6);
        slope = tw.at(7);
        dir_s = tw.at(8);
        const double m = csv::parse_double(slope).value_or(NAN);
        c.expect(m >= 14.0 && m <= 26.0, "slope " + slope);
        c.expect(type == "deterministic" || type == "stochastic", "trend type " + type);
        c.expect(dir_s == "upward", "direction " + dir_s);
    }
    c.expect(tweets >= 95000, "corpus has " + std::to_string(tweets) + " tweets");
    c.expect(secs < 120.0, "end-to-end took " + fmt(secs, 1) + " s");

    // Planted correlation with about 10,000 tweets in the third generation.
    synth::SynthSpec s;
    s.seed = 2026;
    s.accounts_per_generation = 40;
    s.tweeting = {6200.0, 0.0, 0.0};
    s.retweeting = {0.0, 0.0, 0.0};
    s.replying = {0.0, 0.0, 0.0};
    s.content.multi_hashtag = 0.3;
    s.content.single_hashtag = 0.2;
    s.content.media = 0.3;
    s.correlations.push_back(
        {features::Feature::F10, features::Feature::F17, 0.5, corpus::Generation::G3});
    const auto corp = corpus::make_corpus(synth::generate(s));
    const auto vec = features::extract_features(corp, sentiment::Lexicon::bundled(), {},
                                                thread_budget());
    const auto gens = relations::tweet_generations(corp);
    const auto g3 = static_cast<std::size_t>(
        std::count(gens.begin(), gens.end(), corpus::Generation::G3));
    const auto m3 = relations::build_category_matrix(vec, gens, corpus::Generation::G3, {},
                                                     thread_budget());
    const auto cat = m3.at(features::Feature::F10, features::Feature::F17);
    const double rho = m3.rho(features::Feature::F10, features::Feature::F17);
    c.expect(g3 >= 10000 && g3 <= 11500, "G3 has " + std::to_string(g3) + " tweets");
    c.expect(cat == relations::Category::MP,
             "F10-F17 in G3 is " + std::string(cat ? relations::to_string(*cat) : "missing"));

    return c.done("100k run: " + std::to_string(tweets) + " tweets in " + fmt(secs, 1) +
                  " s; tweeting slope " + slope + " " + dir_s + " " + type +
                  "; G3 rho(F10,F17) " + fmt(rho) + " on " + std::to_string(g3) + " tweets -> " +
                  std::string(cat ? relations::to_string(*cat) : "missing"));
}

// ---------------------------------------------------------------------------
// 6. Structural invariants.

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string body = fixtures::read_text(e.path());
        if (e.path().filename().string().rfind("manifest_", 0) == 0) {
            const auto at = body.find("\"timestamp\"");
            if (at != std::string::npos) body.erase(at, body.find('\n', at) - at);
        }
        out[fs::relative(e.path(), dir).string()] = body;
    }
    return out;
}

Outcome criterion_6() {
    Checks c;
    std::size_t corpora = 0, tweets_total = 0;
    std::mt19937_64 rng(606);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto spec = fixtures::small_spec(seed * 977, 3 + rng() % 10);
        spec.content.url = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
        spec.content.multi_hashtag = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
        spec.content.emoji = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
        spec.content.template_reuse = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        spec.action_profile_mix = {0.2 + 0.1 * (seed % 3), 0.1, 0.5};
        const auto corp = corpus::make_corpus(synth::generate(spec));
        const auto vec = features::extract_features(corp, sentiment::Lexicon::bundled(), {}, 4);
        ++corpora;
        tweets_total += corp.records.size();

        std::size_t bad = 0;
        for (const auto& v : vec) bad += !v.exclusive();
        c.expect(bad == 0, std::to_string(bad) + " tweets break exclusivity (seed " +
                               std::to_string(seed) + ")");

        const auto gens = relations::tweet_generations(corp);
        std::array<relations::CategoryMatrix, 3> m;
        for (std::size_t g = 0; g < 3; ++g) {
            m[g] = relations::build_category_matrix(vec, gens, corpus::kGenerations[g]);
            std::size_t sum = 0;
            for (auto x : relations::category_distribution(m[g])) sum += x;
            c.expect(sum == 153, "category sum " + std::to_string(sum));
        }
        const auto census = transitions::transition_census(m[0], m[1], m[2]);
        c.expect(census.total() == 153, "census total " + std::to_string(census.total()));

        for (auto scheme : {tsagg::Scheme::generation, tsagg::Scheme::age_class}) {
            std::size_t n = tsagg::summarize_outside(corp, vec, scheme).tweets;
            for (const auto& s : tsagg::summarize_stratum(corp, vec, scheme)) n += s.tweets;
            c.expect(n == corp.records.size(), "strata cover " + std::to_string(n) + " of " +
                                                   std::to_string(corp.records.size()));
        }
    }

    // Two identical `all` runs, manifest timestamps excluded.
    const fs::path dir = fixtures::scratch_dir("accept_determinism");
    const std::string cfg_json = R"({"synth": {"seed": 66, "accounts_per_generation": 12}})";
    std::array<std::map<std::string, std::string>, 2> snaps;
    for (int k = 0; k < 2; ++k) {
        auto cfg = report::parse_config(cfg_json, dir);
        cfg.out_dir = dir / ("run" + std::to_string(k));
        std::ostringstream log;
        const auto o = report::run(report::Stage::all, cfg, log);
        c.expect(o.exit_code == 0, "all run " + std::to_string(k) + ": " + o.message);
        snaps[static_cast<std::size_t>(k)] = snapshot(cfg.out_dir);
    }
    std::size_t differing = 0;
    for (const auto& [name, body] : snaps[0]) {
        const auto it = snaps[1].find(name);
        differing += it == snaps[1].end() || it->second != body;
    }
    differing += snaps[1].size() != snaps[0].size();
    c.expect(differing == 0, std::to_string(differing) + " artifacts differ between runs");
    c.expect(snaps[0].size() > 20, "only " + std::to_string(snaps[0].size()) + " artifacts");

    return c.done(std::to_string(corpora) + " corpora (" + std::to_string(tweets_total) +
                  " tweets): exclusivity, 153-sums, census and strata partition hold; " +
                  std::to_string(snaps[0].size()) + " artifacts byte-identical across runs");
}

// ---------------------------------------------------------------------------
// 7. Boundary semantics.

Outcome criterion_7() {
    Checks c;
    c.expect(sentiment::classify_sentiment(0.2) == sentiment::Polarity::neutral, "+0.2");
    c.expect(sentiment::classify_sentiment(-0.2) == sentiment::Polarity::neutral, "-0.2");
    c.expect(relations::categorize(0.3) == relations::Category::MP, "0.3");
    c.expect(relations::categorize(0.7) == relations::Category::SP, "0.7");
    const corpus::GenerationBounds b;
    c.expect(corpus::assign_generation(2012, b) == corpus::Generation::G1, "2012");
    c.expect(corpus::assign_generation(2013, b) == corpus::Generation::G2, "2013");
    return c.done("sentiment(+-0.2)=neutral, categorize(0.3)=MP, categorize(0.7)=SP, "
                  "generation(2012)=G1, generation(2013)=G2");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {1, "classification fixture", 1.0, criterion_1},
        {2, "census fixture", 1.0, criterion_2},
        {3, "statistical calibration", 60.0, criterion_3},
        {4, "oracle equivalences", 30.0, criterion_4},
        {5, "planted round trip", 120.0, criterion_5},
        {6, "structural invariants", 0.0, criterion_6},
        {7, "boundary semantics", 0.0, criterion_7},
    };
    int failed = 0;
    for (const auto& cr : all) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // Criterion 5's limit applies to the end-to-end run it times itself.
        if (cr.limit_s > 0.0 && cr.id != 5 && secs >= cr.limit_s) {
            o.ok = false;
            o.detail += " | over the " + fmt(cr.limit_s, 0) + " s limit";
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << cr.id << " (" << cr.name
                  << ", " << fmt(secs, 3) << " s): " << o.detail << std::endl;
        failed += !o.ok;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed"
                         : std::string("acceptance: all 7 criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}
