#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vinemeta/estimate.hpp"
#include "vinemeta/study.hpp"

namespace vinemeta {

/// Which latent variable is regressed on the other: X1givenX2 gives the
/// sensitivity quantile at each specificity.
enum class SrocDirection { X1givenX2, X2givenX1 };

const char* to_token(SrocDirection direction);

/// A point in ROC space: (1 - specificity, sensitivity).
struct RocPoint {
  double fpr = 0.0;
  double sens = 0.0;
};

struct SrocCurve {
  double q = 0.5;
  SrocDirection direction = SrocDirection::X1givenX2;
  std::vector<RocPoint> points;  // ascending fpr
};

/// Quantile-regression curve of level q from the C12 pair-copula and the
/// sensitivity / specificity margins of a fit. The conditioning variable runs
/// over its marginal quantiles 0.001..0.999 on grid_size equally spaced
/// levels. With normal margins in the quadrivariate model, sensitivity and
/// specificity are read off the multinomial logit with the non-evaluable
/// effect at its mean. Throws DomainError unless 0 < q < 1 and grid_size >= 2.
SrocCurve sroc_curve(const FitResult& fit, double q, SrocDirection direction = SrocDirection::X1givenX2,
                     std::size_t grid_size = 100);

/// (1 - pi2, pi1) of the fit.
RocPoint summary_point(const FitResult& fit);

/// Classic: only positive and negative results count (sens = TP / (TP + FN)).
/// Simel: non-evaluable results stay in the denominators
/// (sens = TP / (TP + FN + NE+)).
enum class StudyPointDefinition { Classic, Simel };

const char* to_token(StudyPointDefinition definition);

struct StudyPoints {
  StudyPointDefinition definition = StudyPointDefinition::Classic;
  std::vector<std::string> ids;
  std::vector<RocPoint> points;
  /// One entry per study omitted for a zero denominator.
  std::vector<std::string> warnings;
};

StudyPoints study_points(const Dataset& data, StudyPointDefinition definition);
StudyPoints study_points(const std::vector<StudyTable>& studies, StudyPointDefinition definition);

/// CSV with columns q,direction,fpr,sens.
void write_curves_csv(std::ostream& os, const std::vector<SrocCurve>& curves);
/// CSV with columns kind,study_id,fpr,sens: the summary point ("summary")
/// followed by the study points of each definition.
void write_points_csv(std::ostream& os, const RocPoint& summary, const std::vector<StudyPoints>& studies);

}  // namespace vinemeta
