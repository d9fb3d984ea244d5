#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "vinemeta/copula.hpp"
#include "vinemeta/dvine.hpp"
#include "vinemeta/margins.hpp"
#include "vinemeta/study.hpp"

namespace vinemeta {

enum class ModelKind { QuadNormal, QuadBeta, BivExclude, BivITD };

/// How a bivariate analysis treats non-evaluable outcomes.
enum class Handling { Exclude, IntentToDiagnose };

enum class Arm { Diseased, NonDiseased };

/// quad-normal, quad-beta, biv-exclude, biv-itd
std::string to_token(ModelKind kind);
ModelKind parse_model_kind(const std::string& token);
const char* to_token(MarginKind kind);
MarginKind parse_margin_kind(const std::string& token);
bool is_bivariate(ModelKind kind);

/// Trinomial cell probabilities ordered by test result: negative, positive,
/// non-evaluable. For the diseased arm these are (FN, TP, NE+); for the
/// non-diseased arm (TN, FP, NE-).
struct MultinomialCell {
  std::array<double, 3> p{};
};

/// Parameters of the quadrivariate model. pi = (sensitivity, specificity,
/// P(NE+), P(NE-)); disp holds sigma_j (normal margins) or gamma_j (beta).
struct ModelParams {
  std::array<double, 4> pi{};
  std::array<double, 4> disp{};
  DVineSpec vine;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Parameters of the bivariate comparator: pi = (sensitivity, specificity).
struct BivParams {
  std::array<double, 2> pi{};
  std::array<double, 2> disp{};
  CopulaSpec copula;

  friend bool operator==(const BivParams&, const BivParams&) = default;
};

/// Latent (x_main, x_ne) = (x1, x3) for the diseased arm or (x2, x4) for the
/// non-diseased arm on the multinomial-logit scale.
MultinomialCell cell_probs_normal(double x_main, double x_ne, Arm arm = Arm::Diseased);
/// Same on the beta scale: x_main is the arm's accuracy, x_ne the conditional
/// probability of a non-evaluable result among the remainder.
MultinomialCell cell_probs_beta(double x_main, double x_ne, Arm arm = Arm::Diseased);

/// log of the trinomial pmf, coefficient included. Zero counts with zero
/// probability contribute nothing.
double log_trinomial_pmf(const std::array<int, 3>& y, const MultinomialCell& cell);
double log_multinomial_coefficient(const std::array<int, 3>& y);

/// Counts of a study arm ordered as in MultinomialCell.
std::array<int, 3> arm_counts(const StudyTable& study, Arm arm);

/// Margins implied by the parameters: normal means are l(pi1, pi3),
/// l(pi2, pi4), l(pi3, pi1), l(pi4, pi2); beta means are pi1, pi2,
/// pi3 / (1 - pi1), pi4 / (1 - pi2).
std::array<NormalMargin, 4> normal_margins(const ModelParams& params);
std::array<BetaMargin, 4> beta_margins(const ModelParams& params);

/// Throws DomainError when the parameters lie outside the model space.
void validate(const ModelParams& params, MarginKind margin);
void validate(const BivParams& params, MarginKind margin);
bool is_valid(const ModelParams& params, MarginKind margin) noexcept;
bool is_valid(const BivParams& params, MarginKind margin) noexcept;

/// Free parameters: 8 plus one per non-independence pair-copula (14 for the
/// full vine, 11 when truncated); 4 plus one for the bivariate model.
int parameter_count(const ModelParams& params);
int parameter_count(const BivParams& params);

/// -2 loglik + 2 k
double aic(double loglik, int n_params);

/// log pmf of one study by nq-point Gauss-Legendre cubature over the vine.
/// Returns -inf for parameters outside the model space.
double study_log_pmf(const StudyTable& study, const ModelParams& params, MarginKind margin,
                     std::size_t nq = 15);

/// Sum of study_log_pmf over the studies; -inf outside the model space.
/// Throws NumericError naming the study when a value is not finite.
double loglik_quad(const std::vector<StudyTable>& data, const ModelParams& params, MarginKind margin,
                   std::size_t nq = 15);

/// Bivariate copula mixed model on the recoded binomial data.
double loglik_bivariate(const std::vector<StudyTable>& data, const BivParams& params, MarginKind margin,
                        Handling handling, std::size_t nq = 15);

/// Binomial counts (positives of the diseased arm, negatives of the
/// non-diseased arm) and arm sizes after recoding.
struct BinomialStudy {
  int tp = 0;
  int n1 = 0;
  int tn = 0;
  int n0 = 0;
};
BinomialStudy recode(const StudyTable& study, Handling handling);

}  // namespace vinemeta
