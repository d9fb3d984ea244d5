#include <doctest.h>

#include <cmath>
#include <vector>

#include "vinemeta/copula.hpp"
#include "vinemeta/dvine.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/normal.hpp"
#include "vinemeta/stats.hpp"

using namespace vinemeta;

namespace {

DVineSpec mixed_vine() {
  DVineSpec s;
  s.level1 = {CopulaSpec{clayton(Rotation::R180), 4.0}, CopulaSpec{clayton(Rotation::R90), 1.5},
              CopulaSpec{kFrank, 3.0}};
  s.level2 = {CopulaSpec{kBVN, 0.3}, CopulaSpec{clayton(), 0.8}};
  s.level3 = {kFrank, -2.0};
  return s;
}

}  // namespace

TEST_CASE("independent vine has zero log density") {
  CHECK(dvine::log_density(DVineSpec::independent(), {0.1, 0.5, 0.7, 0.99}) == 0.0);
  const Point4 w{0.2, 0.4, 0.6, 0.8};
  CHECK(dvine::dependent_nodes(DVineSpec::independent(), w) == w);
}

TEST_CASE("log density is the sum of pair terms for a truncated vine") {
  const std::array<CopulaSpec, 3> l1{CopulaSpec{kBVN, 0.5}, CopulaSpec{clayton(), 2.0}, CopulaSpec{kFrank, -4.0}};
  const auto vine = DVineSpec::truncated_vine(l1);
  const Point4 u{0.3, 0.6, 0.2, 0.85};
  const double expect = copula::log_pdf(l1[0], u[0], u[1]) + copula::log_pdf(l1[1], u[1], u[2]) +
                        copula::log_pdf(l1[2], u[2], u[3]);
  CHECK(dvine::log_density(vine, u) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(vine.truncated);
  CHECK(dvine::pair_copulas(vine)[3] == independence_copula());
}

TEST_CASE("dependent nodes invert the Rosenblatt transform") {
  const auto vine = mixed_vine();
  const Point4 w{0.37, 0.81, 0.12, 0.64};
  const Point4 x = dvine::dependent_nodes(vine, w);
  CHECK(x[0] == w[0]);
  CHECK(copula::hfunc(vine.level1[0], x[1], x[0]) == doctest::Approx(w[1]).epsilon(1e-10));
  // Third coordinate: h_{3|12} = h(h(x3|x2) | h(x1|x2)) under C13|2.
  const double a = copula::hfunc_given_second(vine.level1[0], x[0], x[1]);
  const double b = copula::hfunc(vine.level1[1], x[2], x[1]);
  CHECK(copula::hfunc(vine.level2[0], b, a) == doctest::Approx(w[2]).epsilon(1e-9));
  for (double xi : x) {
    CHECK(xi > 0.0);
    CHECK(xi < 1.0);
  }
}

TEST_CASE("vine density integrates to one") {
  // Monte Carlo with the vine sampler as importance density would be
  // circular; use a coarse midpoint grid on a mild vine instead.
  DVineSpec s;
  s.level1 = {CopulaSpec{kBVN, 0.3}, CopulaSpec{kFrank, 1.0}, CopulaSpec{clayton(), 0.5}};
  s.level2 = {CopulaSpec{kFrank, -1.0}, CopulaSpec{kBVN, 0.2}};
  s.level3 = {kFrank, 0.5};
  const int n = 24;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Point4 u{(i + 0.5) / n, (j + 0.5) / n, (k + 0.5) / n, (l + 0.5) / n};
          sum += std::exp(dvine::log_density(s, u));
        }
  CHECK(sum / std::pow(n, 4) == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("sampler reproduces the pair dependence") {
  const auto vine = mixed_vine();
  const auto draws = dvine::sample(vine, 20000, 11);
  REQUIRE(draws.size() == 20000);
  std::vector<double> a, b, c;
  for (std::size_t i = 0; i < 4000; ++i) {
    a.push_back(draws[i][0]);
    b.push_back(draws[i][1]);
    c.push_back(draws[i][2]);
  }
  CHECK(stats::kendall_tau(a, b) == doctest::Approx(copula::theta_to_tau(vine.level1[0])).epsilon(0.03));
  CHECK(stats::kendall_tau(b, c) == doctest::Approx(copula::theta_to_tau(vine.level1[1])).epsilon(0.05));
  CHECK(dvine::sample(vine, 10, 3) == dvine::sample(vine, 10, 3));
  CHECK(dvine::sample(vine, 10, 3) != dvine::sample(vine, 10, 4));
}

TEST_CASE("implied correlation of an all-BVN vine") {
  DVineSpec s;
  s.level1 = {CopulaSpec{kBVN, 0.5}, CopulaSpec{kBVN, 0.5}, CopulaSpec{kBVN, 0.5}};
  s.level2 = {CopulaSpec{kBVN, 0.0}, CopulaSpec{kBVN, 0.0}};
  s.level3 = {kBVN, 0.0};
  const auto r = dvine::bvn_implied_correlation(s);
  CHECK(r[0][2] == doctest::Approx(0.25));
  CHECK(r[1][3] == doctest::Approx(0.25));
  CHECK(r[0][3] == doctest::Approx(0.125));
  CHECK(r[3][0] == r[0][3]);
  s.level2[0].theta = 0.4;
  // rho13 = rho12 rho23 + rho13|2 sqrt((1 - rho12^2)(1 - rho23^2))
  CHECK(dvine::bvn_implied_correlation(s)[0][2] == doctest::Approx(0.25 + 0.4 * 0.75));
}

TEST_CASE("vine validation") {
  auto s = DVineSpec::truncated_vine({CopulaSpec{kBVN, 0.5}, CopulaSpec{kBVN, 0.5}, CopulaSpec{kBVN, 0.5}});
  CHECK_NOTHROW(dvine::validate(s));
  s.level2[0] = {kBVN, 0.2};
  CHECK_THROWS_AS(dvine::validate(s), DomainError);
  auto t = mixed_vine();
  t.level3 = {kBVN, 1.5};
  CHECK_THROWS_AS(dvine::validate(t), DomainError);
}
