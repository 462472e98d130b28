#include "botdrift/report/plot_data.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/features.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/series.hpp"
#include "botdrift/stats/trend.hpp"
#include "botdrift/transitions.hpp"

namespace botdrift::report {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void save(const fs::path& p, const std::string& bytes, PlotEmission& e) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::io, "cannot write " + p.string());
    }
    out << bytes;
    e.written.push_back(p);
}

std::string series_figure(const fs::path& in) {
    const auto series = tsagg::read_series_csv(in.string());
    std::ostringstream out;
    csv::Writer w(out);
    w.row({"panel", "year", "count", "trend"});
    for (const auto& s : series) {
        std::vector<double> t(s.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = static_cast<double>(s.years[i] - s.years.front());
        }
        std::optional<stats::TrendFit> fit;
        if (s.size() >= 2) {
            fit = stats::ols_trend(t, s.counts);
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            w.row({s.name, std::to_string(s.years[i]), csv::format_number(s.counts[i]),
                   fit ? csv::format_number(fit->intercept + fit->slope * t[i]) : "NA"});
        }
    }
    return out.str();
}

void strata_rows(csv::Writer& w, const fs::path& in) {
    std::ifstream f(in, std::ios::binary);
    const json doc = json::parse(f);
    const std::string scheme = doc.at("scheme").get<std::string>();
    auto emit = [&](const json& s) {
        const std::string name = s.at("stratum").get<std::string>();
        auto row = [&](const std::string& metric, const json& v) {
            w.row({scheme, name, metric,
                   v.is_number() ? csv::format_number(v.get<double>()) : std::string("NA")});
        };
        row("accounts", s.at("accounts"));
        row("tweets", s.at("tweets"));
        for (const auto& [k, v] : s.at("pooled_shares").items()) {
            if (k == "sentiment") {
                for (const auto& [sk, sv] : v.items()) {
                    row("share_sentiment_" + sk, sv);
                }
            } else {
                row("share_" + k, v);
            }
        }
        for (const auto& [k, v] : s.at("per_account").items()) {
            row("per_account_mean_" + k, v.at("mean"));
            row("per_account_median_" + k, v.at("median"));
        }
        row("mean_languages_per_account", s.at("mean_languages_per_account"));
        row("mean_emojis_per_emoji_post", s.at("mean_emojis_per_emoji_post"));
        row("image_posts", s.at("image_posts"));
        row("video_posts", s.at("video_posts"));
    };
    for (const auto& s : doc.at("strata")) {
        emit(s);
    }
    emit(doc.at("outside"));
}

std::string chi2_figure(const fs::path& in) {
    const csv::Table t = csv::read_file(in.string());
    const auto cols = [&](std::string_view n) {
        const auto c = t.column(n);
        if (!c) {
            fail(ErrorCode::schema, in.string() + " lacks column " + std::string(n));
        }
        return *c;
    };
    const std::size_t fi = cols("Fi"), fj = cols("Fj"), v = cols("cramers_v"), p = cols("p"),
                      dep = cols("dependent"), st = cols("structural");
    std::ostringstream out;
    csv::Writer w(out);
    w.row({"row", "col", "cramers_v", "neg_log10_p", "dependent", "structural"});
    for (const auto& r : t.rows) {
        const auto pv = csv::parse_double(r.fields[p]);
        std::string nlp = "NA";
        if (pv) {
            nlp = csv::format_number(*pv > 0.0 ? -std::log10(*pv) : 324.0);
        }
        // Both triangles so the grid renders without mirroring.
        w.row({r.fields[fi], r.fields[fj], r.fields[v], nlp, r.fields[dep], r.fields[st]});
        w.row({r.fields[fj], r.fields[fi], r.fields[v], nlp, r.fields[dep], r.fields[st]});
    }
    return out.str();
}

std::vector<transitions::GlobalTrajectory> read_trajectories(const fs::path& in) {
    const csv::Table t = csv::read_file(in.string());
    if (t.header != transitions::report_header()) {
        fail(ErrorCode::schema, in.string() + ": transitions header mismatch");
    }
    std::vector<transitions::GlobalTrajectory> out;
    for (const auto& r : t.rows) {
        const auto fi = features::parse_feature(r.fields.at(0));
        const auto fj = features::parse_feature(r.fields.at(1));
        const auto c1 = relations::parse_category(r.fields.at(2));
        const auto c2 = relations::parse_category(r.fields.at(3));
        const auto c3 = relations::parse_category(r.fields.at(4));
        if (!fi || !fj || !c1 || !c2 || !c3) {
            fail(ErrorCode::schema, in.string() + ":" + std::to_string(r.line) + ": bad row");
        }
        auto traj = transitions::make_trajectory(*fi, *fj, {*c1, *c2, *c3});
        // Keep the directions as reported (they depend on the configured scale).
        traj.t1 = r.fields.at(5) == "I" ? transitions::Dir::I
                  : r.fields.at(5) == "D" ? transitions::Dir::D
                                          : transitions::Dir::E;
        traj.t2 = r.fields.at(6) == "I" ? transitions::Dir::I
                  : r.fields.at(6) == "D" ? transitions::Dir::D
                                          : transitions::Dir::E;
        traj.label = transitions::global_label(traj.t1, traj.t2);
        out.push_back(traj);
    }
    return out;
}

std::string arrows_figure(const std::vector<transitions::GlobalTrajectory>& traj,
                          std::optional<std::size_t> k) {
    const auto top = transitions::top_transitions(traj, k);
    std::ostringstream out;
    csv::Writer w(out);
    w.row({"rank", "Fi", "Fj", "C1", "C2", "C3", "t1_dir", "t2_dir", "change"});
    std::size_t rank = 0;
    for (const auto& t : top) {
        const int change = std::abs(transitions::ordinal(t.categories[1]) -
                                    transitions::ordinal(t.categories[0])) +
                           std::abs(transitions::ordinal(t.categories[2]) -
                                    transitions::ordinal(t.categories[1]));
        w.row({std::to_string(++rank), features::name(t.fi), features::name(t.fj),
               std::string(relations::to_string(t.categories[0])),
               std::string(relations::to_string(t.categories[1])),
               std::string(relations::to_string(t.categories[2])),
               std::string(transitions::to_string(t.t1)),
               std::string(transitions::to_string(t.t2)), std::to_string(change)});
    }
    return out.str();
}

std::string patterns_figure(const std::vector<transitions::GlobalTrajectory>& traj) {
    std::ostringstream out;
    csv::Writer w(out);
    w.row({"row", "col", "pattern", "global_label"});
    for (const auto& t : traj) {
        const std::string p(transitions::to_string(transitions::evolution_pattern(t)));
        const std::string g(transitions::to_string(t.label));
        w.row({features::name(t.fi), features::name(t.fj), p, g});
        w.row({features::name(t.fj), features::name(t.fi), p, g});
    }
    return out.str();
}

}  // namespace

PlotEmission emit_plot_data(const fs::path& out_dir, std::optional<std::size_t> arrow_top_k) {
    PlotEmission e;
    const fs::path plots = out_dir / "plots";
    fs::create_directories(plots);

    const fs::path series = out_dir / "series.csv";
    if (fs::exists(series)) {
        save(plots / "fig_series.csv", series_figure(series), e);
    } else {
        e.skipped.emplace_back("fig_series.csv skipped: series.csv not found");
    }

    const fs::path sg = out_dir / "strata_generation.json";
    const fs::path sa = out_dir / "strata_age_class.json";
    if (fs::exists(sg) || fs::exists(sa)) {
        std::ostringstream out;
        csv::Writer w(out);
        w.row({"scheme", "stratum", "metric", "value"});
        for (const auto& p : {sg, sa}) {
            if (fs::exists(p)) {
                strata_rows(w, p);
            }
        }
        save(plots / "fig_strata.csv", out.str(), e);
    } else {
        e.skipped.emplace_back("fig_strata.csv skipped: no strata summaries found");
    }

    const fs::path deps = out_dir / "dependencies.csv";
    if (fs::exists(deps)) {
        save(plots / "fig_chi2_matrix.csv", chi2_figure(deps), e);
    } else {
        e.skipped.emplace_back("fig_chi2_matrix.csv skipped: dependencies.csv not found");
    }

    const fs::path trans = out_dir / "transitions.csv";
    if (fs::exists(trans)) {
        const auto traj = read_trajectories(trans);
        save(plots / "fig_transition_arrows.csv", arrows_figure(traj, arrow_top_k), e);
        save(plots / "fig_evolution_patterns.csv", patterns_figure(traj), e);
    } else {
        e.skipped.emplace_back("fig_transition_arrows.csv skipped: transitions.csv not found");
        e.skipped.emplace_back("fig_evolution_patterns.csv skipped: transitions.csv not found");
    }
    return e;
}

}  // namespace botdrift::report
