#include "botdrift/stats/stationarity.hpp"

#include <ostream>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"

namespace botdrift::stats {

std::string_view to_string(TrendType t) noexcept {
    switch (t) {
        case TrendType::stationary: return "stationary";
        case TrendType::deterministic: return "deterministic";
        case TrendType::stochastic: return "stochastic";
    }
    return "stationary";
}

std::string_view to_string(Predictability p) noexcept {
    return p == Predictability::high ? "high" : "low";
}

bool conflicting(const AdfResult& adf, const KpssResult& kpss, double alpha) noexcept {
    return adf.reject_unit_root && kpss.level_p < alpha;
}

TrendType classify_stationarity(const AdfResult& adf, const KpssResult& kpss, double alpha) {
    if (adf.reject_unit_root) {
        return kpss.level_p >= alpha ? TrendType::stationary : TrendType::stochastic;
    }
    return kpss.trend_p < alpha ? TrendType::stochastic : TrendType::deterministic;
}

Predictability classify_predictability(TrendType type, const TrendFit&) noexcept {
    return type == TrendType::stochastic ? Predictability::low : Predictability::high;
}

StationarityVerdict assess(std::string meta_feature, std::span<const int> years,
                           std::span<const double> counts, const VerdictConfig& config) {
    if (years.size() != counts.size()) {
        fail(ErrorCode::precondition, "years and counts differ in length");
    }
    if (counts.size() < 4) {
        fail(ErrorCode::series_too_short, meta_feature + ": fewer than 4 observations");
    }
    for (std::size_t i = 1; i < years.size(); ++i) {
        if (years[i] != years[i - 1] + 1) {
            fail(ErrorCode::precondition, meta_feature + ": years are not consecutive");
        }
    }
    StationarityVerdict v;
    v.meta_feature = std::move(meta_feature);
    v.adf = adf_test(counts, config.adf_max_lag, config.adf_spec, config.alpha);
    v.kpss = kpss_both(counts);
    std::vector<double> t(years.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = static_cast<double>(years[i] - years.front());
    }
    v.trend = ols_trend(t, counts);
    v.trend_type = classify_stationarity(v.adf, v.kpss, config.alpha);
    v.predictability = classify_predictability(v.trend_type, v.trend);
    if (conflicting(v.adf, v.kpss, config.alpha)) {
        v.notes.emplace_back("conflict: ADF rejects a unit root but KPSS rejects level stationarity");
    }
    if (v.trend_type == TrendType::stationary) {
        v.notes.emplace_back("zero-trend: stationary series, no drift to forecast");
    }
    if (counts.size() < kLowPowerLength) {
        v.notes.emplace_back("low-power: " + std::to_string(counts.size()) +
                             " observations, unit-root tests have little power");
    }
    return v;
}

std::vector<std::string> verdict_header() {
    return {"meta_feature", "adf_stat",   "adf_lag", "adf_p",     "kpss_level_p",
            "kpss_trend_p", "trend_type", "slope",   "direction", "predictability"};
}

void write_verdicts_csv(std::ostream& out, std::span<const VerdictRow> rows) {
    csv::Writer w(out);
    w.row(verdict_header());
    for (const auto& row : rows) {
        if (row.verdict) {
            const auto& v = *row.verdict;
            w.row({row.meta_feature, csv::format_number(v.adf.statistic),
                   std::to_string(v.adf.chosen_lag), csv::format_number(v.adf.p_value),
                   csv::format_number(v.kpss.level_p), csv::format_number(v.kpss.trend_p),
                   std::string(to_string(v.trend_type)), csv::format_number(v.trend.slope),
                   std::string(to_string(v.trend.direction)),
                   std::string(to_string(v.predictability))});
        } else {
            w.row({row.meta_feature, "NA", "NA", "NA", "NA", "NA", "degenerate", "NA", "NA",
                   "NA"});
        }
    }
}

}  // namespace botdrift::stats
