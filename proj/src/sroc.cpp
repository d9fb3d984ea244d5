#include "vinemeta/sroc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "vinemeta/error.hpp"
#include "vinemeta/margins.hpp"

namespace vinemeta {

namespace {

/// Maps a uniform quantile level of one latent margin to the probability
/// (sensitivity or specificity) it represents.
struct AccuracyMargin {
  MarginKind kind = MarginKind::Beta;
  double mean = 0.0;  // pi (beta) or mu on the logit / multinomial-logit scale (normal)
  double disp = 0.0;
  double ne_mu = 0.0;     // mean of the non-evaluable effect (quadrivariate normal)
  bool multinomial = false;

  double operator()(double u) const {
    if (kind == MarginKind::Beta) return margins::quantile(BetaMargin{mean, disp}, u);
    const double x = margins::quantile(NormalMargin{mean, disp}, u);
    if (multinomial) return margins::mlogit_inv(x, ne_mu);
    return 1.0 / (1.0 + std::exp(-x));
  }
};

struct SrocModel {
  AccuracyMargin sens, spec;
  CopulaSpec c12;
};

SrocModel model_of(const FitResult& fit) {
  SrocModel m;
  const MarginKind kind = fit.spec.margin();
  if (is_bivariate(fit.spec.model)) {
    const auto& p = fit.biv;
    m.c12 = p.copula;
    for (int j = 0; j < 2; ++j) {
      AccuracyMargin& a = j == 0 ? m.sens : m.spec;
      a.kind = kind;
      a.disp = p.disp[j];
      a.mean = kind == MarginKind::Beta ? p.pi[j] : std::log(p.pi[j]) - std::log1p(-p.pi[j]);
    }
    return m;
  }
  const auto& p = fit.estimates;
  m.c12 = p.vine.level1[0];
  if (kind == MarginKind::Beta) {
    const auto b = beta_margins(p);
    m.sens = {kind, b[0].pi, b[0].gamma, 0.0, false};
    m.spec = {kind, b[1].pi, b[1].gamma, 0.0, false};
  } else {
    const auto n = normal_margins(p);
    m.sens = {kind, n[0].mu, n[0].sigma, n[2].mu, true};
    m.spec = {kind, n[1].mu, n[1].sigma, n[3].mu, true};
  }
  return m;
}

}  // namespace

const char* to_token(SrocDirection direction) {
  return direction == SrocDirection::X1givenX2 ? "x1|x2" : "x2|x1";
}

const char* to_token(StudyPointDefinition definition) {
  return definition == StudyPointDefinition::Classic ? "classic" : "simel";
}

SrocCurve sroc_curve(const FitResult& fit, double q, SrocDirection direction, std::size_t grid_size) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  if (grid_size < 2) throw DomainError("SROC grid needs at least two points");
  const SrocModel m = model_of(fit);
  copula::validate(m.c12);

  SrocCurve curve;
  curve.q = q;
  curve.direction = direction;
  curve.points.resize(grid_size);
  constexpr double lo = 0.001, hi = 0.999;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double w = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    double sens, spec;
    if (direction == SrocDirection::X1givenX2) {
      spec = m.spec(w);
      sens = m.sens(copula::hinv_given_second(m.c12, q, w));
    } else {
      sens = m.sens(w);
      spec = m.spec(copula::hinv(m.c12, q, w));
    }
    curve.points[i] = {1.0 - spec, sens};
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const RocPoint& a, const RocPoint& b) { return a.fpr < b.fpr; });
  return curve;
}

RocPoint summary_point(const FitResult& fit) {
  if (is_bivariate(fit.spec.model)) return {1.0 - fit.biv.pi[1], fit.biv.pi[0]};
  return {1.0 - fit.estimates.pi[1], fit.estimates.pi[0]};
}

StudyPoints study_points(const std::vector<StudyTable>& studies, StudyPointDefinition definition) {
  Dataset d;
  d.studies = studies;
  for (std::size_t i = 0; i < studies.size(); ++i) d.ids.push_back("s" + std::to_string(i + 1));
  return study_points(d, definition);
}

StudyPoints study_points(const Dataset& data, StudyPointDefinition definition) {
  StudyPoints out;
  out.definition = definition;
  const bool simel = definition == StudyPointDefinition::Simel;
  for (std::size_t i = 0; i < data.studies.size(); ++i) {
    const auto& s = data.studies[i];
    const int n_dis = s.y01 + s.y11 + (simel ? s.y21 : 0);
    const int n_non = s.y00 + s.y10 + (simel ? s.y20 : 0);
    const std::string& id = data.ids[i];
    if (n_dis == 0 || n_non == 0) {
      out.warnings.push_back("study " + id + ": " + (n_dis == 0 ? "sensitivity" : "specificity") +
                             " undefined under the " + to_token(definition) + " definition; point omitted");
      continue;
    }
    out.ids.push_back(id);
    out.points.push_back({1.0 - static_cast<double>(s.y00) / n_non, static_cast<double>(s.y11) / n_dis});
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_curves_csv(std::ostream& os, const std::vector<SrocCurve>& curves) {
  os << "q,direction,fpr,sens\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) os << num(c.q) << ',' << to_token(c.direction) << ',' << num(p.fpr) << ',' << num(p.sens) << '\n';
  }
}

void write_points_csv(std::ostream& os, const RocPoint& summary, const std::vector<StudyPoints>& studies) {
  os << "kind,study_id,fpr,sens\n";
  os << "summary,," << num(summary.fpr) << ',' << num(summary.sens) << '\n';
  for (const auto& sp : studies) {
    for (std::size_t i = 0; i < sp.points.size(); ++i) {
      os << to_token(sp.definition) << ',' << sp.ids[i] << ',' << num(sp.points[i].fpr) << ',' << num(sp.points[i].sens)
         << '\n';
    }
  }
}

}  // namespace vinemeta
