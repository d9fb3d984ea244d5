#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vinemeta/error.hpp"
#include "vinemeta/sroc.hpp"

using namespace vinemeta;

namespace {

FitResult quad_beta_fit(CopulaSpec c12) {
  FitResult f;
  f.spec.model = ModelKind::QuadBeta;
  f.spec.level1 = {c12.family, clayton(Rotation::R90), clayton(Rotation::R180)};
  f.spec.truncated = true;
  f.estimates.pi = {0.90, 0.77, 0.06, 0.11};
  f.estimates.disp = {0.09, 0.08, 0.37, 0.15};
  f.estimates.vine = DVineSpec::truncated_vine(
      {c12, CopulaSpec{clayton(Rotation::R90), 2.2}, CopulaSpec{clayton(Rotation::R180), 0.7}});
  return f;
}

}  // namespace

TEST_CASE("study points under both definitions") {
  const StudyTable s{30, 10, 10, 5, 45, 10};
  const auto c = study_points({s}, StudyPointDefinition::Classic);
  const auto m = study_points({s}, StudyPointDefinition::Simel);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0].sens == doctest::Approx(0.9));
  CHECK(m.points[0].sens == doctest::Approx(0.75));
  CHECK(c.points[0].fpr == doctest::Approx(0.25));
  CHECK(m.points[0].fpr == doctest::Approx(0.4));
  CHECK(c.ids[0] == "s1");

  const StudyTable only_ne{5, 1, 0, 0, 0, 4};
  const auto w = study_points({s, only_ne}, StudyPointDefinition::Classic);
  CHECK(w.points.size() == 1);
  REQUIRE(w.warnings.size() == 1);
  CHECK(w.warnings[0].find("s2") != std::string::npos);
  CHECK(study_points({only_ne}, StudyPointDefinition::Simel).points[0].sens == 0.0);
}

TEST_CASE("quantile curves are ordered in q") {
  const auto f = quad_beta_fit({clayton(Rotation::R90), 1.5});
  for (SrocDirection dir : {SrocDirection::X1givenX2, SrocDirection::X2givenX1}) {
    const auto lo = sroc_curve(f, 0.01, dir, 60);
    const auto mid = sroc_curve(f, 0.5, dir, 60);
    const auto hi = sroc_curve(f, 0.99, dir, 60);
    REQUIRE(mid.points.size() == 60);
    for (std::size_t i = 1; i < mid.points.size(); ++i) CHECK(mid.points[i].fpr >= mid.points[i - 1].fpr);
    if (dir == SrocDirection::X1givenX2) {
      // Same fpr grid: compare sensitivities pointwise.
      for (std::size_t i = 0; i < 60; ++i) {
        CHECK(lo.points[i].fpr == doctest::Approx(mid.points[i].fpr));
        CHECK(lo.points[i].sens <= mid.points[i].sens);
        CHECK(mid.points[i].sens <= hi.points[i].sens);
      }
    }
  }
}

TEST_CASE("independence gives a flat median curve") {
  const auto f = quad_beta_fit(independence_copula());
  const auto c = sroc_curve(f, 0.5);
  const double s0 = c.points.front().sens;
  for (const auto& p : c.points) CHECK(std::abs(p.sens - s0) < 1e-9);
  CHECK(s0 == doctest::Approx(margins::quantile(BetaMargin{0.9, 0.09}, 0.5)).epsilon(1e-12));
}

TEST_CASE("normal margins and the bivariate comparator") {
  FitResult n;
  n.spec.model = ModelKind::QuadNormal;
  n.estimates.pi = {0.85, 0.8, 0.05, 0.08};
  n.estimates.disp = {0.8, 1.1, 0.6, 0.9};
  n.estimates.vine = DVineSpec::truncated_vine({CopulaSpec{kBVN, 0.0}, CopulaSpec{kBVN, 0.2}, CopulaSpec{kBVN, 0.1}});
  const auto c = sroc_curve(n, 0.5, SrocDirection::X1givenX2, 11);
  // Median latent sensitivity at the mean non-evaluable effect is pi1 itself.
  CHECK(c.points[5].sens == doctest::Approx(0.85).epsilon(1e-12));

  FitResult b;
  b.spec.model = ModelKind::BivITD;
  b.spec.bivariate_margin = MarginKind::Normal;
  b.biv = {{0.9, 0.7}, {1.0, 1.0}, {kBVN, -0.5}};
  const auto bc = sroc_curve(b, 0.5, SrocDirection::X1givenX2, 3);
  CHECK(bc.points[1].sens == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(bc.points[1].fpr == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(summary_point(b).sens == 0.9);
  CHECK(summary_point(b).fpr == doctest::Approx(0.3));
}

TEST_CASE("argument checks") {
  const auto f = quad_beta_fit({clayton(Rotation::R90), 1.5});
  CHECK_THROWS_AS(sroc_curve(f, 0.0), DomainError);
  CHECK_THROWS_AS(sroc_curve(f, 1.0), DomainError);
  CHECK_THROWS_AS(sroc_curve(f, 0.5, SrocDirection::X1givenX2, 1), DomainError);
}

TEST_CASE("CSV output") {
  const auto f = quad_beta_fit({clayton(Rotation::R90), 1.5});
  std::ostringstream c, p;
  write_curves_csv(c, {sroc_curve(f, 0.5, SrocDirection::X2givenX1, 2)});
  CHECK(c.str().rfind("q,direction,fpr,sens\n0.5,x2|x1,", 0) == 0);
  write_points_csv(p, summary_point(f), {study_points({StudyTable{30, 10, 10, 5, 45, 10}}, StudyPointDefinition::Simel)});
  CHECK(p.str() == "kind,study_id,fpr,sens\nsummary,,0.23,0.9\nsimel,s1,0.4,0.75\n");
}
