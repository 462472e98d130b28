#include "botdrift/stats/kpss.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "botdrift/error.hpp"

namespace botdrift::stats {

namespace {

constexpr std::array<double, 4> kPoints = {0.10, 0.05, 0.025, 0.01};
constexpr std::array<double, 4> kLevelCrit = {0.347, 0.463, 0.574, 0.739};
constexpr std::array<double, 4> kTrendCrit = {0.119, 0.146, 0.176, 0.216};

std::vector<double> residuals(std::span<const double> y, KpssVariant variant) {
    const std::size_t n = y.size();
    const auto nd = static_cast<double>(n);
    std::vector<double> e(n);
    double ybar = 0.0;
    for (double v : y) {
        ybar += v;
    }
    ybar /= nd;
    if (variant == KpssVariant::level) {
        for (std::size_t t = 0; t < n; ++t) {
            e[t] = y[t] - ybar;
        }
        return e;
    }
    const double tbar = (nd - 1.0) / 2.0;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dt = static_cast<double>(t) - tbar;
        sxy += dt * (y[t] - ybar);
        sxx += dt * dt;
    }
    const double slope = sxy / sxx;
    for (std::size_t t = 0; t < n; ++t) {
        e[t] = y[t] - ybar - slope * (static_cast<double>(t) - tbar);
    }
    return e;
}

}  // namespace

std::size_t kpss_bandwidth(std::size_t n) noexcept {
    return static_cast<std::size_t>(
        std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

KpssStat kpss_test(std::span<const double> y, KpssVariant variant) {
    const std::size_t n = y.size();
    if (n < 4) {
        fail(ErrorCode::series_too_short,
             "KPSS needs at least 4 observations, got " + std::to_string(n));
    }
    for (double v : y) {
        if (!std::isfinite(v)) {
            fail(ErrorCode::domain, "KPSS input contains a non-finite value");
        }
    }
    const std::vector<double> e = residuals(y, variant);
    const auto nd = static_cast<double>(n);

    double mean = 0.0;
    for (double v : y) {
        mean += v;
    }
    mean /= nd;
    double scale = 0.0;
    for (double v : y) {
        scale += (v - mean) * (v - mean);
    }

    double ee = 0.0;
    for (double v : e) {
        ee += v * v;
    }
    if (ee <= 1e-20 * scale || ee == 0.0) {
        fail(ErrorCode::degenerate_series, "KPSS residuals have zero variance");
    }

    const std::size_t l = std::min(kpss_bandwidth(n), n - 1);
    double s2 = ee / nd;
    for (std::size_t s = 1; s <= l; ++s) {
        double cov = 0.0;
        for (std::size_t t = s; t < n; ++t) {
            cov += e[t] * e[t - s];
        }
        const double w = 1.0 - static_cast<double>(s) / static_cast<double>(l + 1);
        s2 += 2.0 / nd * w * cov;
    }
    if (!(s2 > 0.0)) {
        fail(ErrorCode::degenerate_series, "KPSS long-run variance is zero");
    }

    double partial = 0.0;
    double sum_sq = 0.0;
    for (double v : e) {
        partial += v;
        sum_sq += partial * partial;
    }
    KpssStat out;
    out.statistic = sum_sq / (nd * nd * s2);
    out.p_value = kpss_p_value(out.statistic, variant);
    out.bandwidth = l;
    return out;
}

KpssResult kpss_both(std::span<const double> y) {
    const KpssStat level = kpss_test(y, KpssVariant::level);
    const KpssStat trend = kpss_test(y, KpssVariant::trend);
    return KpssResult{level.statistic, trend.statistic, level.p_value, trend.p_value,
                      level.bandwidth};
}

double kpss_p_value(double statistic, KpssVariant variant) noexcept {
    const auto& crit = variant == KpssVariant::level ? kLevelCrit : kTrendCrit;
    if (statistic <= crit.front()) {
        return kKpssMaxP;
    }
    if (statistic >= crit.back()) {
        return kKpssMinP;
    }
    for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
        if (statistic <= crit[i + 1]) {
            const double f = (statistic - crit[i]) / (crit[i + 1] - crit[i]);
            return kPoints[i] + f * (kPoints[i + 1] - kPoints[i]);
        }
    }
    return kKpssMinP;
}

}  // namespace botdrift::stats
