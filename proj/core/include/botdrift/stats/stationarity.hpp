#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/stats/adf.hpp"
#include "botdrift/stats/kpss.hpp"
#include "botdrift/stats/trend.hpp"

namespace botdrift::stats {

enum class TrendType : std::uint8_t { stationary, deterministic, stochastic };
enum class Predictability : std::uint8_t { high, low };

std::string_view to_string(TrendType t) noexcept;
std::string_view to_string(Predictability p) noexcept;

/// stationary: ADF rejects and KPSS level p >= alpha.
/// deterministic: ADF fails to reject and KPSS trend p >= alpha.
/// stochastic: ADF fails to reject and KPSS trend p < alpha, or the
/// conflicting case where ADF rejects but KPSS level p < alpha.
TrendType classify_stationarity(const AdfResult& adf, const KpssResult& kpss, double alpha);

/// ADF rejects a unit root while KPSS rejects level stationarity.
bool conflicting(const AdfResult& adf, const KpssResult& kpss, double alpha) noexcept;

/// high for deterministic and stationary series, low for stochastic ones.
Predictability classify_predictability(TrendType type, const TrendFit& trend) noexcept;

/// Series shorter than this are tested but carry a low-power warning.
inline constexpr std::size_t kLowPowerLength = 30;

struct VerdictConfig {
    double alpha = 0.05;
    AdfSpec adf_spec = AdfSpec::constant;
    std::optional<std::size_t> adf_max_lag;
};

struct StationarityVerdict {
    std::string meta_feature;
    AdfResult adf;
    KpssResult kpss;
    TrendFit trend;
    TrendType trend_type = TrendType::stationary;
    Predictability predictability = Predictability::high;
    std::vector<std::string> notes;  // conflict, zero-trend and low-power annotations
};

/// Runs ADF, both KPSS variants and the OLS trend on one yearly series.
StationarityVerdict assess(std::string meta_feature, std::span<const int> years,
                           std::span<const double> counts, const VerdictConfig& config = {});

/// A verdict row, or the reason the series could not be tested.
struct VerdictRow {
    std::string meta_feature;
    std::optional<StationarityVerdict> verdict;
    std::string failure;  // set when verdict is empty
};

/// CSV: meta_feature, adf_stat, adf_lag, adf_p, kpss_level_p, kpss_trend_p,
/// trend_type, slope, direction, predictability. Untestable rows carry NA
/// statistics and trend_type "degenerate".
std::vector<std::string> verdict_header();
void write_verdicts_csv(std::ostream& out, std::span<const VerdictRow> rows);

}  // namespace botdrift::stats
