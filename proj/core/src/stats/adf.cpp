#include "botdrift/stats/adf.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "botdrift/error.hpp"
#include "botdrift/stats/distributions.hpp"
#include "botdrift/stats/ols.hpp"

namespace botdrift::stats {

namespace {

// MacKinnon (1994) single-series response surface, p = Phi(poly(tau)).
struct SurfaceCoefficients {
    double tau_max;
    double tau_min;
    double tau_star;
    std::array<double, 3> small_p;
    std::array<double, 4> large_p;
};

constexpr SurfaceCoefficients kSurfaceC{
    2.74, -18.83, -1.61, {2.1659, 1.4412, 0.038269}, {1.7339, 0.93202, -0.12745, -0.010368}};
constexpr SurfaceCoefficients kSurfaceCt{
    0.7, -16.18, -2.89, {3.2512, 1.6047, 0.049588}, {2.5261, 0.61654, -0.37956, -0.060285}};

// MacKinnon (2010) critical-value surfaces b0 + b1/T + b2/T^2 + b3/T^3.
constexpr std::array<std::array<double, 4>, 3> kCritC = {{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};
constexpr std::array<std::array<double, 4>, 3> kCritCt = {{
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
}};

std::size_t deterministic_terms(AdfSpec spec) { return spec == AdfSpec::constant ? 1 : 2; }

// Regression of dy[t] on y[t-1], dy[t-1..t-lag] and deterministic terms for
// t in [first, n-1), where dy[t] = y[t+1] - y[t].
OlsFit adf_regression(std::span<const double> y, std::span<const double> dy, std::size_t lag,
                      std::size_t first, AdfSpec spec) {
    const std::size_t rows = dy.size() - first;
    const std::size_t cols = 1 + lag + deterministic_terms(spec);
    Design x(rows, cols);
    std::vector<double> resp(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = first + r;
        resp[r] = dy[t];
        x(r, 0) = y[t];
        for (std::size_t l = 1; l <= lag; ++l) {
            x(r, l) = dy[t - l];
        }
        x(r, lag + 1) = 1.0;
        if (spec == AdfSpec::constant_trend) {
            x(r, lag + 2) = static_cast<double>(t + 1);
        }
    }
    return ols(x, resp);
}

}  // namespace

std::string_view to_string(AdfSpec s) noexcept {
    return s == AdfSpec::constant ? "constant" : "constant_trend";
}

std::size_t default_adf_max_lag(std::size_t n) noexcept {
    return static_cast<std::size_t>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

AdfResult adf_test(std::span<const double> y, std::optional<std::size_t> max_lag, AdfSpec spec,
                   double alpha) {
    const std::size_t n = y.size();
    const std::size_t requested = max_lag.value_or(default_adf_max_lag(n));
    if (n < requested + 4) {
        fail(ErrorCode::series_too_short,
             "ADF needs at least " + std::to_string(requested + 4) + " observations, got " +
                 std::to_string(n));
    }
    for (double v : y) {
        if (!std::isfinite(v)) {
            fail(ErrorCode::domain, "ADF input contains a non-finite value");
        }
    }

    std::vector<double> dy(n - 1);
    double dy_ss = 0.0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        dy[t] = y[t + 1] - y[t];
        dy_ss += dy[t] * dy[t];
    }
    if (dy_ss == 0.0) {
        fail(ErrorCode::degenerate_series, "ADF on a constant series");
    }

    const std::size_t det = deterministic_terms(spec);
    const std::size_t half = n / 2;
    const std::size_t cap = half > det + 1 ? half - det - 1 : 0;
    const std::size_t top = std::min(requested, cap);
    const double perfect = 1e-20 * dy_ss;

    // AIC over a common sample that every candidate lag can use.
    std::size_t best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t lag = 0; lag <= top; ++lag) {
        OlsFit fit;
        try {
            fit = adf_regression(y, dy, lag, top, spec);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::degenerate_regressor) {
                continue;
            }
            throw;
        }
        if (fit.rss <= perfect) {
            continue;
        }
        const auto m = static_cast<double>(fit.nobs);
        const double aic = m * std::log(fit.rss / m) + 2.0 * static_cast<double>(fit.beta.size());
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
            found = true;
        }
    }
    if (!found) {
        fail(ErrorCode::degenerate_series, "every ADF regression fits the series exactly");
    }

    OlsFit fit;
    try {
        fit = adf_regression(y, dy, best_lag, best_lag, spec);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::degenerate_regressor) {
            fail(ErrorCode::degenerate_series, std::string("ADF refit failed: ") + e.what());
        }
        throw;
    }
    if (fit.rss <= perfect || fit.std_errors[0] == 0.0) {
        fail(ErrorCode::degenerate_series, "ADF regression fits the series exactly");
    }

    AdfResult r;
    r.statistic = fit.beta[0] / fit.std_errors[0];
    r.chosen_lag = best_lag;
    r.nobs = fit.nobs;
    r.p_value = adf_p_value(r.statistic, spec);
    r.reject_unit_root = r.p_value < alpha;
    r.critical_values = adf_critical_values(r.nobs, spec);
    return r;
}

double adf_p_value(double statistic, AdfSpec spec) noexcept {
    const SurfaceCoefficients& c = spec == AdfSpec::constant ? kSurfaceC : kSurfaceCt;
    if (std::isnan(statistic)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (statistic > c.tau_max) {
        return 1.0;
    }
    if (statistic < c.tau_min) {
        return 0.0;
    }
    double poly = 0.0;
    double power = 1.0;
    if (statistic <= c.tau_star) {
        for (double k : c.small_p) {
            poly += k * power;
            power *= statistic;
        }
    } else {
        for (double k : c.large_p) {
            poly += k * power;
            power *= statistic;
        }
    }
    return normal_cdf(poly);
}

std::array<double, 3> adf_critical_values(std::size_t nobs, AdfSpec spec) noexcept {
    const auto& table = spec == AdfSpec::constant ? kCritC : kCritCt;
    const double t = static_cast<double>(nobs);
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& b = table[i];
        out[i] = b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t);
    }
    return out;
}

}  // namespace botdrift::stats
