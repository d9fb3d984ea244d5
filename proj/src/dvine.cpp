#include "vinemeta/dvine.hpp"

#include <cmath>

#include "vinemeta/error.hpp"
#include "vinemeta/random.hpp"

namespace vinemeta {

DVineSpec DVineSpec::truncated_vine(const std::array<CopulaSpec, 3>& level1) {
  DVineSpec spec;
  spec.level1 = level1;
  spec.level2 = {independence_copula(), independence_copula()};
  spec.level3 = independence_copula();
  spec.truncated = true;
  return spec;
}

DVineSpec DVineSpec::independent() {
  return truncated_vine({independence_copula(), independence_copula(), independence_copula()});
}

namespace dvine {

std::array<CopulaSpec, 6> pair_copulas(const DVineSpec& spec) {
  return {spec.level1[0], spec.level1[1], spec.level1[2], spec.level2[0], spec.level2[1], spec.level3};
}

void validate(const DVineSpec& spec) {
  const auto pairs = pair_copulas(spec);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      copula::validate(pairs[i]);
    } catch (const DomainError& e) {
      throw DomainError(std::string("pair C") + kPairNames[i] + ": " + e.what());
    }
  }
  if (spec.truncated) {
    for (std::size_t i = 3; i < pairs.size(); ++i) {
      if (pairs[i].family.kind != CopulaKind::Independence) {
        throw DomainError(std::string("truncated vine requires independence at C") + kPairNames[i]);
      }
    }
  }
}

double log_density(const DVineSpec& spec, const Point4& u) {
  const auto& [c12, c23, c34] = spec.level1;
  const auto& c13_2 = spec.level2[0];
  const auto& c24_3 = spec.level2[1];
  const auto& c14_23 = spec.level3;

  double ld = copula::log_pdf(c12, u[0], u[1]) + copula::log_pdf(c23, u[1], u[2]) +
              copula::log_pdf(c34, u[2], u[3]);

  const double f1_2 = copula::hfunc_given_second(c12, u[0], u[1]);
  const double f3_2 = copula::hfunc(c23, u[2], u[1]);
  const double f2_3 = copula::hfunc_given_second(c23, u[1], u[2]);
  const double f4_3 = copula::hfunc(c34, u[3], u[2]);
  ld += copula::log_pdf(c13_2, f1_2, f3_2) + copula::log_pdf(c24_3, f2_3, f4_3);

  const double f1_23 = copula::hfunc_given_second(c13_2, f1_2, f3_2);
  const double f4_23 = copula::hfunc(c24_3, f4_3, f2_3);
  ld += copula::log_pdf(c14_23, f1_23, f4_23);
  return ld;
}

Point4 dependent_nodes(const DVineSpec& spec, const Point4& u) {
  const auto& [c12, c23, c34] = spec.level1;
  const auto& c13_2 = spec.level2[0];
  const auto& c24_3 = spec.level2[1];
  const auto& c14_23 = spec.level3;

  const double v1 = u[0];
  const double v2 = copula::hinv(c12, u[1], v1);
  const double t1 = copula::hfunc_given_second(c12, v1, v2);  // F(1|2)
  const double t2 = copula::hinv(c13_2, u[2], t1);             // F(3|2)
  const double v3 = copula::hinv(c23, t2, v2);
  const double t3 = copula::hfunc_given_second(c23, v2, v3);  // F(2|3)
  const double t4 = copula::hfunc_given_second(c13_2, t1, t2);  // F(1|23)
  const double t5 = copula::hinv(c14_23, u[3], t4);            // F(4|23)
  const double t6 = copula::hinv(c24_3, t5, t3);               // F(4|3)
  const double v4 = copula::hinv(c34, t6, v3);
  return {v1, v2, v3, v4};
}

std::vector<Point4> sample(const DVineSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  Engine eng(seed);
  std::vector<Point4> out(n);
  for (auto& row : out) {
    Point4 u;
    for (auto& x : u) x = uniform_open(eng);
    row = dependent_nodes(spec, u);
  }
  return out;
}

std::array<std::array<double, 4>, 4> bvn_implied_correlation(const DVineSpec& spec) {
  for (const auto& c : pair_copulas(spec)) {
    if (c.family.kind != CopulaKind::BVN && c.family.kind != CopulaKind::Independence) {
      throw DomainError("bvn_implied_correlation: all pair-copulas must be BVN or independence");
    }
  }
  const double r12 = spec.level1[0].theta;
  const double r23 = spec.level1[1].theta;
  const double r34 = spec.level1[2].theta;
  const double r13_2 = spec.level2[0].theta;
  const double r24_3 = spec.level2[1].theta;
  const double r14_23 = spec.level3.theta;
  const auto c = [](double r) { return std::sqrt(1.0 - r * r); };

  const double r13 = r13_2 * c(r12) * c(r23) + r12 * r23;
  const double r24 = r24_3 * c(r23) * c(r34) + r23 * r34;
  const double r34_2 = (r34 - r23 * r24) / c(r23) / c(r24);
  const double r14_2 = r14_23 * c(r13_2) * c(r34_2) + r13_2 * r34_2;
  const double r14 = r14_2 * c(r12) * c(r24) + r12 * r24;

  return {{{1.0, r12, r13, r14}, {r12, 1.0, r23, r24}, {r13, r23, 1.0, r34}, {r14, r24, r34, 1.0}}};
}

}  // namespace dvine
}  // namespace vinemeta
