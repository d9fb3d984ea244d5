#pragma once

#include <cmath>
#include <numbers>

namespace vinemeta {

/// Standard normal cdf.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double norm_log_pdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

/// Standard normal quantile (Wichura AS241, relative error ~1e-16).
/// Returns -inf / +inf at p = 0 / 1 and NaN outside [0, 1].
double norm_quantile(double p);

/// P(X <= h, Y <= k) for a standard bivariate normal with correlation r (Genz).
double bvn_cdf(double h, double k, double r);

}  // namespace vinemeta
