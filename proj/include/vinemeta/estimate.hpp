#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vinemeta/model.hpp"

namespace vinemeta {

/// Model structure to fit: model kind plus pair-copula families. For the
/// bivariate models only level1[0] (the copula of sensitivity and
/// specificity) is used.
struct FitSpec {
  ModelKind model = ModelKind::QuadBeta;
  std::array<CopulaFamily, 3> level1{kBVN, kBVN, kBVN};
  /// Families of C13|2, C24|3, C14|23 when not truncated.
  std::array<CopulaFamily, 3> upper{kBVN, kBVN, kBVN};
  bool truncated = false;
  /// Margins of the bivariate models (the quadrivariate kinds fix their own).
  MarginKind bivariate_margin = MarginKind::Beta;

  MarginKind margin() const noexcept;
  /// e.g. "quad-beta cln180,cln90,cln180 (truncated)" or "biv-itd normal bvn".
  std::string label() const;
  /// Pair-copula part of the label, e.g. "cln180,cln90,cln180 (truncated)".
  std::string copulas() const;
};

struct FitOptions {
  std::size_t nq = 15;
  int max_iter = 500;
  /// Relative step of the finite-difference gradient.
  double grad_step = 1e-5;
  /// Relative step of the finite-difference Hessian used for standard errors.
  double hess_step = 1e-4;
  double tol = 1e-7;
  /// A full-vine fit whose level-2/3 |tau| exceeds this fraction of its
  /// bound (1) is refitted as a truncated vine.
  double truncation_threshold = 0.95;
  bool compute_se = true;
  /// Starting Kendall's tau per pair (level-1 pairs first); empty entries use
  /// the default rule.
  std::vector<std::optional<double>> start_tau;
};

struct FitResult {
  FitSpec spec;
  ModelParams estimates;  // quadrivariate models
  BivParams biv;          // bivariate models
  /// Natural-scale parameters reported with standard errors: pi's,
  /// dispersions (sigma or gamma), then Kendall's tau of every free pair.
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> se;  // NaN when unavailable
  bool se_available = false;
  double loglik = 0.0;
  double aic = 0.0;
  int n_params = 0;
  bool converged = false;
  bool truncated = false;
  int iterations = 0;
  int evaluations = 0;
  double grad_max = 0.0;  // max-norm of the final gradient (unconstrained scale)
  std::string message;

  /// Value / SE by parameter name; NaN if absent.
  double value(const std::string& name) const;
  double stderr_of(const std::string& name) const;
};

/// Bijection between model parameters and R^k. Simplex pairs (pi1, pi3) and
/// (pi2, pi4) use the additive-logistic map with each log-ratio squashed to
/// (-25, 25) by 25 tanh(z / 25). Bounded parameters use smooth maps onto
/// their working ranges: log sigma in (log 1e-3, log 30) and gamma in
/// (1e-5, 1 - 1e-5) by scaled logistics, BVN rho = 0.999 tanh(z), Clayton
/// log theta in (log 1e-4, log 200), Frank theta = 150 tanh(z / 150).
/// Independence pairs carry no coordinate.
Eigen::VectorXd pack(const ModelParams& params, MarginKind margin);
ModelParams unpack(const Eigen::VectorXd& x, const FitSpec& spec);
Eigen::VectorXd pack(const BivParams& params, MarginKind margin);
BivParams unpack_bivariate(const Eigen::VectorXd& x, const FitSpec& spec);

/// Natural-scale reported parameters (see FitResult::values).
std::vector<std::string> natural_names(const FitSpec& spec);
std::vector<double> natural_values(const ModelParams& params, const FitSpec& spec);
std::vector<double> natural_values(const BivParams& params);

/// Starting values per the moment rule: pooled proportions, dispersion 0.5
/// (gamma) or 1 (sigma), |tau| = 0.2 with the sign of the Kendall's tau of
/// the empirical study logits (or the sign a Clayton rotation requires).
/// Throws DomainError naming the pair if a requested start_tau is not
/// attainable by its family.
ModelParams starting_values(const std::vector<StudyTable>& data, const FitSpec& spec, const FitOptions& options);
BivParams starting_values_bivariate(const std::vector<StudyTable>& data, const FitSpec& spec,
                                    const FitOptions& options);

/// Maximum-likelihood fit. A non-converged fit returns the best iterate with
/// converged = false.
FitResult fit(const std::vector<StudyTable>& data, const FitSpec& spec, const FitOptions& options = {});

/// Delta-method standard errors on the natural scale from the inverse of the
/// numerical Hessian of -loglik in the unconstrained space. A non-positive-
/// definite Hessian gets one nearest-PD repair (eigenvalues floored);
/// returns an empty vector when that fails too.
std::vector<double> standard_errors(const Eigen::MatrixXd& hessian, const Eigen::VectorXd& x,
                                    const std::function<std::vector<double>(const Eigen::VectorXd&)>& natural);

/// Fills result.se / se_available for a finished fit.
void standard_errors(const std::vector<StudyTable>& data, FitResult& result, const FitOptions& options);

}  // namespace vinemeta
