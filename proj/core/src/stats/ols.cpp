#include "botdrift/stats/ols.hpp"

#include <cmath>
#include <string>

#include "botdrift/error.hpp"

namespace botdrift::stats {

OlsFit ols(const Design& x, std::span<const double> y) {
    const std::size_t n = x.rows;
    const std::size_t k = x.cols;
    if (y.size() != n) {
        fail(ErrorCode::precondition, "design rows and response length differ");
    }
    if (k == 0 || n <= k) {
        fail(ErrorCode::degenerate_regressor,
             "regression with " + std::to_string(n) + " rows and " + std::to_string(k) +
                 " columns has no residual degrees of freedom");
    }

    Design a = x;
    std::vector<double> qty(y.begin(), y.end());
    std::vector<double> col_norm(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            col_norm[j] += a(i, j) * a(i, j);
        }
        col_norm[j] = std::sqrt(col_norm[j]);
    }

    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) {
            norm += a(i, j) * a(i, j);
        }
        norm = std::sqrt(norm);
        // Column j is (numerically) in the span of the previous ones.
        if (norm <= 1e-10 * col_norm[j] || norm == 0.0) {
            fail(ErrorCode::degenerate_regressor,
                 "design matrix is rank deficient at column " + std::to_string(j));
        }
        const double alpha = a(j, j) > 0.0 ? -norm : norm;
        std::vector<double> v(n - j);
        for (std::size_t i = j; i < n; ++i) {
            v[i - j] = a(i, j);
        }
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double e : v) {
            vnorm2 += e * e;
        }
        if (vnorm2 > 0.0) {
            for (std::size_t c = j; c < k; ++c) {
                double dot = 0.0;
                for (std::size_t i = j; i < n; ++i) {
                    dot += v[i - j] * a(i, c);
                }
                const double f = 2.0 * dot / vnorm2;
                for (std::size_t i = j; i < n; ++i) {
                    a(i, c) -= f * v[i - j];
                }
            }
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) {
                dot += v[i - j] * qty[i];
            }
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = j; i < n; ++i) {
                qty[i] -= f * v[i - j];
            }
        }
    }

    OlsFit fit;
    fit.nobs = n;
    fit.beta.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < k; ++c) {
            s -= a(jj, c) * fit.beta[c];
        }
        fit.beta[jj] = s / a(jj, jj);
    }

    fit.residuals.resize(n);
    fit.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            pred += x(i, c) * fit.beta[c];
        }
        fit.residuals[i] = y[i] - pred;
        fit.rss += fit.residuals[i] * fit.residuals[i];
    }

    // diag((R'R)^-1) is the squared row norms of R^-1.
    std::vector<double> rinv(k * k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        rinv[c * k + c] = 1.0 / a(c, c);
        for (std::size_t r = c; r-- > 0;) {
            double s = 0.0;
            for (std::size_t m = r + 1; m <= c; ++m) {
                s += a(r, m) * rinv[m * k + c];
            }
            rinv[r * k + c] = -s / a(r, r);
        }
    }
    const double sigma2 = fit.rss / static_cast<double>(n - k);
    fit.std_errors.resize(k);
    for (std::size_t r = 0; r < k; ++r) {
        double s = 0.0;
        for (std::size_t c = r; c < k; ++c) {
            s += rinv[r * k + c] * rinv[r * k + c];
        }
        fit.std_errors[r] = std::sqrt(sigma2 * s);
    }
    return fit;
}

}  // namespace botdrift::stats
