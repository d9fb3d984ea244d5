#include <doctest.h>

#include <cmath>
#include <string>

#include "vinemeta/bfgs.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/estimate.hpp"
#include "vinemeta/simulate.hpp"

using namespace vinemeta;

namespace {

FitSpec default_spec() {
  FitSpec s;
  s.model = ModelKind::QuadBeta;
  s.level1 = {clayton(Rotation::R180), clayton(Rotation::R90), clayton(Rotation::R180)};
  s.truncated = true;
  return s;
}

std::vector<StudyTable> default_data(std::size_t rep = 0) {
  auto d = SimDesign::defaults();
  return generate_dataset(d, rep);
}

}  // namespace

TEST_CASE("BFGS minimises smooth functions") {
  const Objective rosen = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const auto r = minimize_bfgs(rosen, Eigen::Vector2d(-1.2, 1.0));
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));

  const Objective walled = [](const Eigen::VectorXd& x) {
    if (x[0] <= 0) return HUGE_VAL;
    return x[0] - std::log(x[0]) + x[1] * x[1];
  };
  const auto w = minimize_bfgs(walled, Eigen::Vector2d(5.0, 3.0));
  CHECK(w.converged);
  CHECK(w.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(minimize_bfgs(walled, Eigen::Vector2d(-1.0, 0.0)), NumericError);
}

TEST_CASE("finite-difference derivatives") {
  const Objective f = [](const Eigen::VectorXd& x) { return std::exp(x[0]) + x[0] * x[1] * x[1]; };
  const Eigen::Vector2d x(0.3, -0.7);
  const auto g = numeric_gradient(f, x, f(x), 1e-6, true);
  CHECK(g[0] == doctest::Approx(std::exp(0.3) + 0.49).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(2 * 0.3 * -0.7).epsilon(1e-8));
  const auto h = numeric_hessian(f, x, f(x), 1e-4);
  CHECK(h(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-6));
  CHECK(h(0, 1) == doctest::Approx(-1.4).epsilon(1e-6));
  CHECK(h(1, 1) == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("delta-method standard errors") {
  Eigen::Matrix2d h;
  h << 4.0, 0.0, 0.0, 1.0;
  const auto id = [](const Eigen::VectorXd& x) { return std::vector<double>{x[0], x[1]}; };
  auto se = standard_errors(h, Eigen::Vector2d(0.0, 0.0), id);
  REQUIRE(se.size() == 2);
  CHECK(se[0] == doctest::Approx(0.5));
  CHECK(se[1] == doctest::Approx(1.0));
  // exp map: se(e^x) = e^x se(x)
  const auto ex = [](const Eigen::VectorXd& x) { return std::vector<double>{std::exp(x[0]), x[1]}; };
  se = standard_errors(h, Eigen::Vector2d(std::log(2.0), 0.0), ex);
  CHECK(se[0] == doctest::Approx(1.0).epsilon(1e-6));
  // An indefinite Hessian is repaired.
  h << 4.0, 0.0, 0.0, -1.0;
  se = standard_errors(h, Eigen::Vector2d(0.0, 0.0), id);
  REQUIRE(se.size() == 2);
  CHECK(std::isfinite(se[1]));
}

TEST_CASE("parameter packing round trip") {
  ModelParams p;
  p.pi = {0.90, 0.77, 0.06, 0.11};
  p.disp = {0.09, 0.08, 0.37, 0.15};
  p.vine = DVineSpec::truncated_vine(
      {CopulaSpec{clayton(Rotation::R180), 9.1}, CopulaSpec{clayton(Rotation::R90), 2.2}, CopulaSpec{clayton(Rotation::R180), 0.7}});
  const auto spec = default_spec();
  const auto x = pack(p, MarginKind::Beta);
  CHECK(x.size() == 11);
  const auto q = unpack(x, spec);
  for (int j = 0; j < 4; ++j) {
    CHECK(q.pi[j] == doctest::Approx(p.pi[j]).epsilon(1e-12));
    CHECK(q.disp[j] == doctest::Approx(p.disp[j]).epsilon(1e-12));
  }
  CHECK(q.vine.level1[1].theta == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(q.vine.truncated);

  FitSpec full;
  full.model = ModelKind::QuadNormal;
  full.level1 = {kBVN, kFrank, clayton()};
  full.upper = {kBVN, kFrank, clayton(Rotation::R270)};
  ModelParams n;
  n.pi = {0.85, 0.8, 0.05, 0.08};
  n.disp = {0.8, 1.1, 0.6, 0.9};
  n.vine.level1 = {CopulaSpec{kBVN, 0.7}, CopulaSpec{kFrank, -2.0}, CopulaSpec{clayton(), 1.0}};
  n.vine.level2 = {CopulaSpec{kBVN, -0.3}, CopulaSpec{kFrank, 0.5}};
  n.vine.level3 = {clayton(Rotation::R270), 0.4};
  const auto y = pack(n, MarginKind::Normal);
  CHECK(y.size() == 14);
  const auto m = unpack(y, full);
  CHECK(m.vine.level3.theta == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(m.disp[1] == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(m.pi[3] == doctest::Approx(0.08).epsilon(1e-12));

  BivParams b{{0.9, 0.8}, {0.1, 0.2}, {kFrank, -3.0}};
  FitSpec bs;
  bs.model = ModelKind::BivITD;
  bs.level1 = {kFrank, kBVN, kBVN};
  const auto bb = unpack_bivariate(pack(b, MarginKind::Beta), bs);
  CHECK(bb.pi[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(bb.copula.theta == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("reported parameter names") {
  const auto names = natural_names(default_spec());
  REQUIRE(names.size() == 11);
  CHECK(names[4] == "gamma1");
  CHECK(names[8] == "tau12");
  FitSpec b;
  b.model = ModelKind::BivExclude;
  b.bivariate_margin = MarginKind::Normal;
  CHECK(natural_names(b) == std::vector<std::string>{"pi1", "pi2", "sigma1", "sigma2", "tau12"});
  CHECK(b.label() == "biv-exclude normal bvn");
  CHECK(default_spec().label() == "quad-beta cln180,cln90,cln180 (truncated)");
}

TEST_CASE("starting values") {
  const auto data = default_data();
  FitOptions o;
  const auto s = starting_values(data, default_spec(), o);
  CHECK(s.pi[0] > 0.8);
  CHECK(s.disp[0] == 0.5);
  CHECK(copula::theta_to_tau(s.vine.level1[1]) == doctest::Approx(-0.2).epsilon(1e-9));
  o.start_tau = {std::nullopt, -0.4};
  CHECK(copula::theta_to_tau(starting_values(data, default_spec(), o).vine.level1[1]) == doctest::Approx(-0.4).epsilon(1e-9));
  o.start_tau = {0.5, 0.4};
  try {
    starting_values(data, default_spec(), o);
    FAIL("expected an unattainable starting tau to be rejected");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("C23") != std::string::npos);
  }
}

TEST_CASE("bivariate fit recovers the pooled proportions") {
  const auto data = default_data(3);
  FitSpec s;
  s.model = ModelKind::BivITD;
  s.level1 = {kBVN, kBVN, kBVN};
  const auto r = fit(data, s);
  CHECK(r.converged);
  CHECK(r.n_params == 5);
  CHECK(r.aic == doctest::Approx(-2 * r.loglik + 10));
  CHECK(r.value("pi1") == doctest::Approx(0.9).epsilon(0.05));
  CHECK(r.se_available);
  CHECK(r.stderr_of("pi1") > 0.0);
  CHECK(std::isnan(r.value("pi3")));
}

TEST_CASE("quadrivariate fit at reduced cubature") {
  const auto data = default_data(5);
  FitOptions o;
  o.nq = 7;
  const auto r = fit(data, default_spec(), o);
  CHECK(r.converged);
  CHECK(r.grad_max < 1e-3);
  CHECK(r.n_params == 11);
  CHECK(r.value("pi1") == doctest::Approx(0.9).epsilon(0.04));
  CHECK(r.value("pi2") == doctest::Approx(0.77).epsilon(0.06));
  CHECK(r.value("tau23") < 0.0);
  CHECK(r.se_available);
  for (double s : r.se) CHECK(std::isfinite(s));
  // The reported optimum is a local maximum of the likelihood.
  auto p = r.estimates;
  p.pi[0] -= 0.003;
  CHECK(loglik_quad(data, p, MarginKind::Beta, 7) < r.loglik);
}
