#include <doctest.h>

#include <cmath>

#include "../oracle_values.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/margins.hpp"

using namespace vinemeta;

TEST_CASE("beta quantiles match high-precision inversion") {
  for (const auto& c : oracle::kBetaQuantile) {
    const BetaMargin m{c.pi, c.gamma};
    CAPTURE(c.pi);
    CAPTURE(c.gamma);
    CAPTURE(c.u);
    CHECK(margins::beta_logit_quantile(m, c.u) == doctest::Approx(c.logit_x).epsilon(1e-10));
    CHECK(margins::quantile(m, c.u) == doctest::Approx(c.x).epsilon(1e-10));
  }
}

TEST_CASE("tabulated beta quantile tracks the exact one") {
  for (const auto& c : oracle::kBetaQuantile) {
    if (c.u < 1e-12 || c.u > 1 - 1e-12) continue;
    const BetaQuantileTable table(BetaMargin{c.pi, c.gamma});
    CAPTURE(c.u);
    CHECK(table.logit_quantile(c.u) == doctest::Approx(c.logit_x).epsilon(1e-7));
  }
  const BetaQuantileTable t(BetaMargin{0.9, 0.09});
  for (double u = 0.001; u < 1.0; u += 0.0371) {
    CHECK(t.logit_quantile(u) == doctest::Approx(margins::beta_logit_quantile(t.margin(), u)).epsilon(1e-8));
  }
}

TEST_CASE("beta cdf inverts the quantile") {
  const BetaMargin m{0.06 / 0.1, 0.37};
  for (double u : {0.001, 0.2, 0.5, 0.93}) CHECK(margins::cdf(m, margins::quantile(m, u)) == doctest::Approx(u).epsilon(1e-11));
  CHECK(m.alpha() / (m.alpha() + m.beta()) == doctest::Approx(m.pi));
  CHECK(1.0 / (m.alpha() + m.beta() + 1.0) == doctest::Approx(m.gamma));
}

TEST_CASE("normal margin") {
  const NormalMargin m{1.5, 0.4};
  CHECK(margins::quantile(m, 0.5) == doctest::Approx(1.5));
  CHECK(margins::cdf(m, margins::quantile(m, 0.9)) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK_THROWS_AS(margins::quantile(m, 0.0), DomainError);
  CHECK_THROWS_AS(margins::quantile(m, 1.0), DomainError);
}

TEST_CASE("multinomial logit") {
  const double p1 = 0.9, p3 = 0.06;
  const double x1 = margins::mlogit(p1, p3);
  const double x3 = margins::mlogit(p3, p1);
  CHECK(margins::mlogit_inv(x1, x3) == doctest::Approx(p1).epsilon(1e-14));
  CHECK(margins::mlogit_inv(x3, x1) == doctest::Approx(p3).epsilon(1e-14));
  CHECK(margins::log_mlogit_inv(-800.0, 0.0) == doctest::Approx(-800.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(margins::log_mlogit_inv(800.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("margin validation") {
  CHECK_THROWS_AS(margins::validate(BetaMargin{1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(margins::validate(BetaMargin{0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(margins::validate(BetaMargin{0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(margins::validate(NormalMargin{0.0, 0.0}), DomainError);
  CHECK_NOTHROW(margins::validate(BetaMargin{0.5, 0.2}));
}
