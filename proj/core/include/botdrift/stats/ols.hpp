#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace botdrift::stats {

/// Dense row-major design matrix.
struct Design {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Design(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct OlsFit {
    std::vector<double> beta;
    std::vector<double> std_errors;
    std::vector<double> residuals;
    double rss = 0.0;
    std::size_t nobs = 0;
};

/// Least squares via Householder QR. Throws Error(degenerate_regressor) when
/// the design is rank deficient or has no residual degrees of freedom.
OlsFit ols(const Design& x, std::span<const double> y);

}  // namespace botdrift::stats
