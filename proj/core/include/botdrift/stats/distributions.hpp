#pragma once

namespace botdrift::stats {

double normal_cdf(double x) noexcept;

/// Upper tail of the chi-square distribution with one degree of freedom.
double chi2_1_sf(double x) noexcept;

}  // namespace botdrift::stats
