#pragma once

#include <vector>

namespace vinemeta::stats {

/// Kendall's tau-b of paired samples (ties handled); 0 for fewer than two
/// pairs or a constant sample.
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson correlation.
double correlation(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& x);

/// Standard deviation with divisor n (0 for a single value).
double population_sd(const std::vector<double>& x);

}  // namespace vinemeta::stats
