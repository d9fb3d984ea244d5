#include "vinemeta/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vinemeta/error.hpp"
#include "vinemeta/quadrature.hpp"

namespace vinemeta::reference {

namespace {

double clamp_unit(double v) { return std::clamp(v, copula::kClamp, 1.0 - copula::kClamp); }

// Running log-sum-exp.
struct LogSum {
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;

  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x > max) {
      sum = sum * std::exp(max - x) + 1.0;
      max = x;
    } else {
      sum += std::exp(x - max);
    }
  }
  double value() const { return max + std::log(sum); }
};

}  // namespace

double study_log_pmf(const StudyTable& study, const ModelParams& params, MarginKind margin, std::size_t nq) {
  if (!is_valid(params, margin)) return -std::numeric_limits<double>::infinity();
  const auto rule = gauss_legendre_unit(nq);
  const auto dis = arm_counts(study, Arm::Diseased);
  const auto non = arm_counts(study, Arm::NonDiseased);
  const auto nm = margin == MarginKind::Normal ? normal_margins(params) : std::array<NormalMargin, 4>{};
  const auto bm = margin == MarginKind::Beta ? beta_margins(params) : std::array<BetaMargin, 4>{};

  LogSum acc;
  for (std::size_t q1 = 0; q1 < nq; ++q1)
    for (std::size_t q2 = 0; q2 < nq; ++q2)
      for (std::size_t q3 = 0; q3 < nq; ++q3)
        for (std::size_t q4 = 0; q4 < nq; ++q4) {
          const Point4 uq = {rule.nodes[q1], rule.nodes[q2], rule.nodes[q3], rule.nodes[q4]};
          const Point4 v = dvine::dependent_nodes(params.vine, uq);
          MultinomialCell cd, cn;
          if (margin == MarginKind::Normal) {
            double x[4];
            for (int j = 0; j < 4; ++j) x[j] = margins::quantile(nm[j], clamp_unit(v[j]));
            cd = cell_probs_normal(x[0], x[2], Arm::Diseased);
            cn = cell_probs_normal(x[1], x[3], Arm::NonDiseased);
          } else {
            double x[4];
            for (int j = 0; j < 4; ++j) x[j] = margins::quantile(bm[j], clamp_unit(v[j]));
            cd = cell_probs_beta(x[0], x[2], Arm::Diseased);
            cn = cell_probs_beta(x[1], x[3], Arm::NonDiseased);
          }
          const double lw = std::log(rule.weights[q1] * rule.weights[q2] * rule.weights[q3] * rule.weights[q4]);
          acc.add(lw + log_trinomial_pmf(dis, cd) + log_trinomial_pmf(non, cn));
        }
  return acc.value();
}

double loglik_quad(const std::vector<StudyTable>& data, const ModelParams& params, MarginKind margin,
                   std::size_t nq) {
  if (!is_valid(params, margin)) return -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = reference::study_log_pmf(data[i], params, margin, nq);
    if (!std::isfinite(v)) throw NumericError("study " + std::to_string(i) + ": log pmf is not finite");
    total += v;
  }
  return total;
}

double loglik_bivariate(const std::vector<StudyTable>& data, const BivParams& params, MarginKind margin,
                        Handling handling, std::size_t nq) {
  if (!is_valid(params, margin)) return -std::numeric_limits<double>::infinity();
  const auto rule = gauss_legendre_unit(nq);
  const auto prob = [&](int j, double v) {
    v = clamp_unit(v);
    if (margin == MarginKind::Normal) {
      const NormalMargin m{std::log(params.pi[j]) - std::log1p(-params.pi[j]), params.disp[j]};
      return 1.0 / (1.0 + std::exp(-margins::quantile(m, v)));
    }
    return margins::quantile(BetaMargin{params.pi[j], params.disp[j]}, v);
  };
  const auto log_binom = [](int n, int k, double p) {
    double l = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    if (k > 0) l += k * std::log(p);
    if (n - k > 0) l += (n - k) * std::log1p(-p);
    return l;
  };
  double total = 0.0;
  for (const auto& s : data) {
    const auto b = recode(s, handling);
    LogSum acc;
    for (std::size_t q1 = 0; q1 < nq; ++q1)
      for (std::size_t q2 = 0; q2 < nq; ++q2) {
        const double v1 = rule.nodes[q1];
        const double v2 = copula::hinv(params.copula, rule.nodes[q2], v1);
        acc.add(std::log(rule.weights[q1] * rule.weights[q2]) + log_binom(b.n1, b.tp, prob(0, v1)) +
                log_binom(b.n0, b.tn, prob(1, v2)));
      }
    total += acc.value();
  }
  return total;
}

}  // namespace vinemeta::reference
