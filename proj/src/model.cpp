#include "vinemeta/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vinemeta/error.hpp"
#include "vinemeta/kernel.hpp"

namespace vinemeta {

std::string to_token(ModelKind kind) {
  switch (kind) {
    case ModelKind::QuadNormal: return "quad-normal";
    case ModelKind::QuadBeta: return "quad-beta";
    case ModelKind::BivExclude: return "biv-exclude";
    case ModelKind::BivITD: return "biv-itd";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& token) {
  for (auto k : {ModelKind::QuadNormal, ModelKind::QuadBeta, ModelKind::BivExclude, ModelKind::BivITD}) {
    if (to_token(k) == token) return k;
  }
  throw DomainError("unknown model '" + token + "' (quad-normal|quad-beta|biv-exclude|biv-itd)");
}

const char* to_token(MarginKind kind) { return kind == MarginKind::Normal ? "normal" : "beta"; }

MarginKind parse_margin_kind(const std::string& token) {
  if (token == "normal") return MarginKind::Normal;
  if (token == "beta") return MarginKind::Beta;
  throw DomainError("unknown margin '" + token + "' (normal|beta)");
}

bool is_bivariate(ModelKind kind) { return kind == ModelKind::BivExclude || kind == ModelKind::BivITD; }

MultinomialCell cell_probs_normal(double x_main, double x_ne, Arm arm) {
  const double p_main = margins::mlogit_inv(x_main, x_ne);
  const double p_ne = margins::mlogit_inv(x_ne, x_main);
  // The remainder 1 / (1 + e^{x_main} + e^{x_ne}) is computed directly rather
  // than as 1 - p_main - p_ne so it keeps full relative precision.
  const double m = std::max({0.0, x_main, x_ne});
  const double rest = std::exp(-m) / (std::exp(-m) + std::exp(x_main - m) + std::exp(x_ne - m));
  if (arm == Arm::Diseased) return {{rest, p_main, p_ne}};
  return {{p_main, rest, p_ne}};
}

MultinomialCell cell_probs_beta(double x_main, double x_ne, Arm arm) {
  const double rest = (1.0 - x_main) * (1.0 - x_ne);
  const double p_ne = x_ne * (1.0 - x_main);
  if (arm == Arm::Diseased) return {{rest, x_main, p_ne}};
  return {{x_main, rest, p_ne}};
}

double log_multinomial_coefficient(const std::array<int, 3>& y) {
  return std::lgamma(y[0] + y[1] + y[2] + 1.0) - std::lgamma(y[0] + 1.0) - std::lgamma(y[1] + 1.0) -
         std::lgamma(y[2] + 1.0);
}

double log_trinomial_pmf(const std::array<int, 3>& y, const MultinomialCell& cell) {
  double lp = log_multinomial_coefficient(y);
  for (int k = 0; k < 3; ++k) {
    if (y[k] > 0) lp += y[k] * std::log(cell.p[k]);
  }
  return lp;
}

std::array<int, 3> arm_counts(const StudyTable& s, Arm arm) {
  if (arm == Arm::Diseased) return {s.y01, s.y11, s.y21};
  return {s.y00, s.y10, s.y20};
}

std::array<NormalMargin, 4> normal_margins(const ModelParams& p) {
  const auto& pi = p.pi;
  return {{{margins::mlogit(pi[0], pi[2]), p.disp[0]},
           {margins::mlogit(pi[1], pi[3]), p.disp[1]},
           {margins::mlogit(pi[2], pi[0]), p.disp[2]},
           {margins::mlogit(pi[3], pi[1]), p.disp[3]}}};
}

std::array<BetaMargin, 4> beta_margins(const ModelParams& p) {
  const auto& pi = p.pi;
  return {{{pi[0], p.disp[0]},
           {pi[1], p.disp[1]},
           {pi[2] / (1.0 - pi[0]), p.disp[2]},
           {pi[3] / (1.0 - pi[1]), p.disp[3]}}};
}

void validate(const ModelParams& p, MarginKind margin) {
  for (int j = 0; j < 4; ++j) {
    if (!(p.pi[j] > 0.0 && p.pi[j] < 1.0)) {
      std::ostringstream os;
      os << "pi" << j + 1 << " = " << p.pi[j] << " outside (0, 1)";
      throw DomainError(os.str());
    }
  }
  if (!(p.pi[0] + p.pi[2] < 1.0)) throw DomainError("pi1 + pi3 must be below 1");
  if (!(p.pi[1] + p.pi[3] < 1.0)) throw DomainError("pi2 + pi4 must be below 1");
  for (int j = 0; j < 4; ++j) {
    const double d = p.disp[j];
    const bool ok = margin == MarginKind::Normal ? (d > 0.0 && std::isfinite(d)) : (d > 0.0 && d < 1.0);
    if (!ok) {
      std::ostringstream os;
      os << (margin == MarginKind::Normal ? "sigma" : "gamma") << j + 1 << " = " << d << " inadmissible";
      throw DomainError(os.str());
    }
  }
  dvine::validate(p.vine);
}

void validate(const BivParams& p, MarginKind margin) {
  for (int j = 0; j < 2; ++j) {
    if (!(p.pi[j] > 0.0 && p.pi[j] < 1.0)) throw DomainError("bivariate pi outside (0, 1)");
    const double d = p.disp[j];
    const bool ok = margin == MarginKind::Normal ? (d > 0.0 && std::isfinite(d)) : (d > 0.0 && d < 1.0);
    if (!ok) throw DomainError("bivariate dispersion inadmissible");
  }
  copula::validate(p.copula);
}

bool is_valid(const ModelParams& p, MarginKind margin) noexcept {
  try {
    validate(p, margin);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

bool is_valid(const BivParams& p, MarginKind margin) noexcept {
  try {
    validate(p, margin);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

int parameter_count(const ModelParams& p) {
  int k = 8;
  for (const auto& c : dvine::pair_copulas(p.vine)) {
    if (c.family.kind != CopulaKind::Independence) ++k;
  }
  return k;
}

int parameter_count(const BivParams& p) { return p.copula.family.kind == CopulaKind::Independence ? 4 : 5; }

double aic(double loglik, int n_params) { return -2.0 * loglik + 2.0 * n_params; }

BinomialStudy recode(const StudyTable& s, Handling handling) {
  if (handling == Handling::Exclude) return {s.y11, s.y01 + s.y11, s.y00, s.y00 + s.y10};
  return {s.y11, s.diseased(), s.y00, s.non_diseased()};
}

double study_log_pmf(const StudyTable& study, const ModelParams& params, MarginKind margin, std::size_t nq) {
  if (!is_valid(params, margin)) return -std::numeric_limits<double>::infinity();
  QuadLikelihood lik({study}, margin, nq);
  return lik.loglik(params);
}

double loglik_quad(const std::vector<StudyTable>& data, const ModelParams& params, MarginKind margin,
                   std::size_t nq) {
  QuadLikelihood lik(data, margin, nq);
  return lik.loglik(params);
}

double loglik_bivariate(const std::vector<StudyTable>& data, const BivParams& params, MarginKind margin,
                        Handling handling, std::size_t nq) {
  BivariateLikelihood lik(data, margin, handling, nq);
  return lik.loglik(params);
}

}  // namespace vinemeta
