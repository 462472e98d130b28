#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace botdrift::stats {

enum class KpssVariant : std::uint8_t { level, trend };

struct KpssStat {
    double statistic = 0.0;
    double p_value = 0.10;
    std::size_t bandwidth = 0;
};

struct KpssResult {
    double level_stat = 0.0;
    double trend_stat = 0.0;
    double level_p = 0.10;
    double trend_p = 0.10;
    std::size_t bandwidth = 0;
};

inline constexpr double kKpssMinP = 0.01;
inline constexpr double kKpssMaxP = 0.10;

/// Bartlett-kernel bandwidth floor(4 (n/100)^(1/4)).
std::size_t kpss_bandwidth(std::size_t n) noexcept;

/// KPSS statistic n^-2 Σ S_t^2 / s^2(l) on residuals from a constant (level)
/// or constant plus trend fit. Requires n >= 4 (Error(series_too_short)); a
/// zero long-run variance throws Error(degenerate_series).
KpssStat kpss_test(std::span<const double> y, KpssVariant variant);

/// Both variants on one series.
KpssResult kpss_both(std::span<const double> y);

/// Linear interpolation in the 10/5/2.5/1% table, clipped to [0.01, 0.10].
double kpss_p_value(double statistic, KpssVariant variant) noexcept;

}  // namespace botdrift::stats
