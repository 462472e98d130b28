#include "botdrift/stats/trend.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "botdrift/error.hpp"

namespace botdrift::stats {

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::upward: return "upward";
        case Direction::downward: return "downward";
        case Direction::flat: return "flat";
    }
    return "flat";
}

TrendFit ols_trend(std::span<const double> t, std::span<const double> y, double flat_tol) {
    if (t.size() != y.size()) {
        fail(ErrorCode::precondition, "trend abscissa and series lengths differ");
    }
    const std::size_t n = y.size();
    if (n < 2) {
        fail(ErrorCode::degenerate_regressor, "trend fit needs at least two points");
    }
    const auto nd = static_cast<double>(n);
    double tbar = 0.0;
    double ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tbar += t[i];
        ybar += y[i];
    }
    tbar /= nd;
    ybar /= nd;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (t[i] - tbar) * (t[i] - tbar);
        sxy += (t[i] - tbar) * (y[i] - ybar);
        syy += (y[i] - ybar) * (y[i] - ybar);
    }
    if (sxx == 0.0) {
        fail(ErrorCode::degenerate_regressor, "trend fit with identical abscissae");
    }
    TrendFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * tbar;
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - fit.intercept - fit.slope * t[i];
            sse += r * r;
        }
        fit.r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
    }
    fit.direction = fit.slope > flat_tol    ? Direction::upward
                    : fit.slope < -flat_tol ? Direction::downward
                                            : Direction::flat;
    return fit;
}

TrendFit ols_trend(std::span<const double> y, double flat_tol) {
    std::vector<double> t(y.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = static_cast<double>(i);
    }
    return ols_trend(t, y, flat_tol);
}

}  // namespace botdrift::stats
