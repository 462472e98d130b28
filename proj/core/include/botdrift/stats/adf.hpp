#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace botdrift::stats {

enum class AdfSpec : std::uint8_t { constant, constant_trend };

std::string_view to_string(AdfSpec s) noexcept;

struct AdfResult {
    double statistic = 0.0;
    std::size_t chosen_lag = 0;
    double p_value = 1.0;
    bool reject_unit_root = false;
    std::size_t nobs = 0;
    std::array<double, 3> critical_values{};  // 1%, 5%, 10%
};

/// Default lag ceiling floor(12 (n/100)^(1/4)).
std::size_t default_adf_max_lag(std::size_t n) noexcept;

/// Augmented Dickey-Fuller test. Regresses Δy_t on y_{t-1}, Δy_{t-1..p} and
/// the deterministic terms; p in [0, max_lag] minimises AIC on a common
/// sample, then the chosen model is refit on all available observations.
/// max_lag is further capped at n/2 - deterministic terms - 1 so every
/// candidate regression keeps residual degrees of freedom.
///
/// Requires n >= max_lag + 4 (Error(series_too_short)); a constant series or an
/// exactly fitted regression throws Error(degenerate_series).
AdfResult adf_test(std::span<const double> y, std::optional<std::size_t> max_lag = std::nullopt,
                   AdfSpec spec = AdfSpec::constant, double alpha = 0.05);

/// MacKinnon (1994) response-surface p-value for a single-series tau statistic.
double adf_p_value(double statistic, AdfSpec spec) noexcept;

/// MacKinnon (2010) finite-sample critical values at 1%, 5%, 10%.
std::array<double, 3> adf_critical_values(std::size_t nobs, AdfSpec spec) noexcept;

}  // namespace botdrift::stats
