#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace botdrift::stats {

enum class Direction : std::uint8_t { upward, downward, flat };

std::string_view to_string(Direction d) noexcept;

inline constexpr double kFlatTolerance = 1e-9;

struct TrendFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    Direction direction = Direction::flat;
};

/// Closed-form least squares count = slope * t + intercept, with t the
/// offsets supplied (usually year - first year). Throws
/// Error(degenerate_regressor) when all t are identical or fewer than two.
TrendFit ols_trend(std::span<const double> t, std::span<const double> y,
                   double flat_tol = kFlatTolerance);

/// Same fit with t = 0, 1, ..., n-1.
TrendFit ols_trend(std::span<const double> y, double flat_tol = kFlatTolerance);

}  // namespace botdrift::stats
