#include "vinemeta/margins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "vinemeta/copula.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/normal.hpp"

namespace vinemeta {
namespace margins {

double mlogit(double pi_j, double pi_k) {
  if (!(pi_j > 0.0 && pi_k >= 0.0 && pi_j + pi_k < 1.0)) {
    std::ostringstream os;
    os << "mlogit: (" << pi_j << ", " << pi_k << ") is not an interior simplex point";
    throw DomainError(os.str());
  }
  return std::log(pi_j) - std::log1p(-(pi_j + pi_k));
}

double log_mlogit_inv(double x_j, double x_k) {
  const double m = std::max({0.0, x_j, x_k});
  return x_j - m - std::log(std::exp(-m) + std::exp(x_j - m) + std::exp(x_k - m));
}

double mlogit_inv(double x_j, double x_k) { return std::exp(log_mlogit_inv(x_j, x_k)); }

void validate(const NormalMargin& m) {
  if (!std::isfinite(m.mu) || !(m.sigma > 0.0) || !std::isfinite(m.sigma)) {
    throw DomainError("normal margin requires finite mu and sigma > 0");
  }
}

void validate(const BetaMargin& m) {
  if (!(m.pi > 0.0 && m.pi < 1.0) || !(m.gamma > 0.0 && m.gamma < 1.0)) {
    std::ostringstream os;
    os << "beta margin requires pi and gamma in (0, 1) (pi = " << m.pi << ", gamma = " << m.gamma << ")";
    throw DomainError(os.str());
  }
}

double cdf(const NormalMargin& m, double x) { return norm_cdf((x - m.mu) / m.sigma); }

double cdf(const BetaMargin& m, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(m.alpha(), m.beta(), x);
}

namespace {

void check_unit(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    std::ostringstream os;
    os << "quantile: u = " << u << " outside (0, 1)";
    throw DomainError(os.str());
  }
}

// log x for the lower-tail quantile of Beta(a, b) at probability p (p <= 1/2),
// together with log(1 - x).
std::pair<double, double> beta_lower_logs(double a, double b, double p) {
  double one_minus = 0.0;
  const double x = boost::math::ibeta_inv(a, b, p, &one_minus);
  if (x > 1e-300) return {std::log(x), std::log(one_minus)};
  // Leading tail term F(x) ~ x^a / (a B(a, b)).
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return {(std::log(p) + std::log(a) + log_beta) / a, 0.0};
}

// logit of the Beta(a, b) quantile given both u and 1 - u to full precision.
double beta_logit_quantile_pair(double a, double b, double u, double one_minus_u) {
  if (u <= 0.5) {
    const auto [lx, l1x] = beta_lower_logs(a, b, u);
    return lx - l1x;
  }
  // Upper half through the reflected distribution: 1 - X ~ Beta(b, a).
  const auto [lz, l1z] = beta_lower_logs(b, a, one_minus_u);
  return l1z - lz;
}

}  // namespace

double quantile(const NormalMargin& m, double u) {
  check_unit(u);
  return m.mu + m.sigma * norm_quantile(u);
}

double quantile(const BetaMargin& m, double u) {
  check_unit(u);
  validate(m);
  return boost::math::ibeta_inv(m.alpha(), m.beta(), u);
}

double beta_logit_quantile(const BetaMargin& m, double u) {
  check_unit(u);
  validate(m);
  return beta_logit_quantile_pair(m.alpha(), m.beta(), u, 1.0 - u);
}

}  // namespace margins

namespace {

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// Lower-tail logit quantiles y_k = logit(F^{-1}(expit(t_k))) of Beta(a, b) for
// t_k < 0 given in order of decreasing t. The first knot is solved directly;
// each later one starts from a second-order Taylor step off its neighbour and
// is polished by Halley iterations on log F(x(y)) = log p, which typically
// converge in two incomplete-beta evaluations.
void march_lower_tail(double a, double b, double log_beta, const std::vector<double>& ts,
                      std::vector<double>& ys) {
  ys.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double log_p = -softplus(-t);
    if (i == 0) {
      ys[i] = margins::beta_logit_quantile_pair(a, b, std::exp(log_p), std::exp(-softplus(t)));
      continue;
    }
    // Taylor prediction from knot i - 1 with the analytic slope and curvature.
    const double yp = ys[i - 1];
    const double tp = ts[i - 1];
    const double lxp = -softplus(-yp);
    const double l1xp = -softplus(yp);
    const double lup = -softplus(-tp);
    const double l1up = -softplus(tp);
    const double dy = std::exp(lup + l1up + log_beta - a * lxp - b * l1xp);
    const double d2y = dy * dy * (std::exp(lxp) * (a + b) - a) + dy * (std::exp(l1up) - std::exp(lup));
    const double h = t - tp;
    double y = yp + h * dy + 0.5 * h * h * d2y;

    bool converged = false;
    for (int it = 0; it < 8 && std::isfinite(y); ++it) {
      const double lx = -softplus(-y);
      if (lx < -700.0) {
        // Below the incomplete beta's range: leading tail term x^a / (a B(a, b)).
        y = (log_p + std::log(a) + log_beta) / a;
        converged = true;
        break;
      }
      const double l1x = -softplus(y);
      const double F = boost::math::ibeta(a, b, std::exp(lx));
      if (!(F > 0.0)) break;
      const double g = std::log(F) - log_p;
      const double g1 = std::exp(a * lx + b * l1x - log_beta - std::log(F));
      const double g2 = g1 * (a * std::exp(l1x) - b * std::exp(lx) - g1);
      const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
      y -= step;
      if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(y))) {
        converged = true;
        break;
      }
    }
    if (!converged || !std::isfinite(y)) {
      y = margins::beta_logit_quantile_pair(a, b, std::exp(log_p), std::exp(-softplus(t)));
    }
    ys[i] = y;
  }
}

}  // namespace

BetaQuantileTable::BetaQuantileTable(const BetaMargin& margin, std::size_t size) : margin_(margin) {
  margins::validate(margin);
  if (size < 4) throw DomainError("BetaQuantileTable: at least 4 knots required");
  const double a = margin.alpha();
  const double b = margin.beta();
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double t_max = std::log1p(-copula::kClamp) - std::log(copula::kClamp);
  t_min_ = -t_max;
  step_ = 2.0 * t_max / static_cast<double>(size - 1);

  std::vector<double> t(size);
  for (std::size_t k = 0; k < size; ++k) t[k] = t_min_ + step_ * static_cast<double>(k);

  // Knots left of the centre march down Beta(a, b); knots right of it march
  // down the reflection Beta(b, a) in -t.
  std::vector<double> ts, ys;
  std::vector<double> y(size);
  std::size_t mid = 0;
  while (mid < size && t[mid] < 0.0) ++mid;
  for (std::size_t k = mid; k-- > 0;) ts.push_back(t[k]);
  march_lower_tail(a, b, log_beta, ts, ys);
  for (std::size_t i = 0; i < ts.size(); ++i) y[mid - 1 - i] = ys[i];
  ts.clear();
  for (std::size_t k = mid; k < size; ++k) ts.push_back(-t[k]);
  march_lower_tail(b, a, log_beta, ts, ys);
  for (std::size_t i = 0; i < ts.size(); ++i) y[mid + i] = -ys[i];

  knots_.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double lx = -softplus(-y[k]);
    const double l1x = -softplus(y[k]);
    const double lu = -softplus(-t[k]);
    const double l1u = -softplus(t[k]);
    // dy/dt = B(a, b) u (1 - u) / (x^a (1 - x)^b)
    const double dy = std::exp(lu + l1u + log_beta - a * lx - b * l1x);
    const double d2y = dy * dy * (std::exp(lx) * (a + b) - a) + dy * (std::exp(l1u) - std::exp(lu));
    knots_[k] = {y[k], dy, d2y};
  }
}

double BetaQuantileTable::logit_quantile(double u) const {
  u = std::clamp(u, copula::kClamp, 1.0 - copula::kClamp);
  return logit_quantile_from_logit(std::log(u) - std::log1p(-u));
}

double BetaQuantileTable::logit_quantile_from_logit(double t) const {
  const double pos = (t - t_min_) / step_;
  const std::size_t last = knots_.size() - 2;
  const std::size_t k = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), last);
  const double s = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double s5 = s4 * s;
  const double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
  const double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
  const double h2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
  const double h3 = 0.5 * (s3 - 2.0 * s4 + s5);
  const double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
  const double h5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
  const Knot& k0 = knots_[k];
  const Knot& k1 = knots_[k + 1];
  const double h = step_;
  return h0 * k0.y + h1 * h * k0.dy + h2 * h * h * k0.d2y + h3 * h * h * k1.d2y + h4 * h * k1.dy +
         h5 * k1.y;
}

}  // namespace vinemeta
