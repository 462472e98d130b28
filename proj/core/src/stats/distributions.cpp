#include "botdrift/stats/distributions.hpp"

#include <cmath>

namespace botdrift::stats {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double chi2_1_sf(double x) noexcept {
    if (!(x > 0.0)) {
        return 1.0;
    }
    return std::erfc(std::sqrt(x / 2.0));
}

}  // namespace botdrift::stats
