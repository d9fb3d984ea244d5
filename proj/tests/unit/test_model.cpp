#include <doctest.h>

#include <cmath>
#include <sstream>

#include "../oracle_values.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/kernel.hpp"
#include "vinemeta/model.hpp"
#include "vinemeta/reference.hpp"
#include "vinemeta/study.hpp"

using namespace vinemeta;

namespace {

ModelParams default_truth() {
  ModelParams p;
  p.pi = {0.90, 0.77, 0.06, 0.11};
  p.disp = {0.09, 0.08, 0.37, 0.15};
  p.vine = DVineSpec::truncated_vine({CopulaSpec{clayton(Rotation::R180), 9.111111111111111},
                                      CopulaSpec{clayton(Rotation::R90), 2.1666666666666665},
                                      CopulaSpec{clayton(Rotation::R180), 0.7027027027027027}});
  return p;
}

ModelParams full_vine_normal() {
  ModelParams p;
  p.pi = {0.85, 0.80, 0.05, 0.08};
  p.disp = {0.8, 1.1, 0.6, 0.9};
  p.vine.level1 = {CopulaSpec{kBVN, 0.7}, CopulaSpec{clayton(Rotation::R270), 1.0}, CopulaSpec{kFrank, 2.0}};
  p.vine.level2 = {CopulaSpec{kBVN, -0.3}, CopulaSpec{clayton(Rotation::R180), 0.5}};
  p.vine.level3 = {kFrank, 1.5};
  return p;
}

std::vector<StudyTable> small_data() {
  return {{40, 5, 3, 2, 50, 4}, {120, 30, 10, 8, 60, 2}, {7, 1, 0, 0, 9, 0}, {15, 2, 1, 3, 12, 0}};
}

}  // namespace

TEST_CASE("cell probabilities sum to one") {
  for (double a : {-30.0, -2.0, 0.0, 1.5, 40.0}) {
    for (double b : {-50.0, -1.0, 0.3, 20.0}) {
      for (Arm arm : {Arm::Diseased, Arm::NonDiseased}) {
        const auto c = cell_probs_normal(a, b, arm);
        CHECK(c.p[0] + c.p[1] + c.p[2] == doctest::Approx(1.0).epsilon(1e-15));
      }
    }
  }
  const auto d = cell_probs_beta(0.9, 0.2, Arm::Diseased);
  CHECK(d.p[1] == 0.9);
  CHECK(d.p[2] == doctest::Approx(0.02));
  CHECK(d.p[0] == doctest::Approx(0.08));
  const auto n = cell_probs_beta(0.8, 0.5, Arm::NonDiseased);
  CHECK(n.p[0] == 0.8);
  CHECK(n.p[1] == doctest::Approx(0.1));
}

TEST_CASE("trinomial pmf") {
  for (const auto& c : oracle::kTrinomial) {
    const std::array<int, 3> y{int(c.y0), int(c.y1), int(c.y2)};
    CHECK(log_trinomial_pmf(y, MultinomialCell{{c.p0, c.p1, c.p2}}) == doctest::Approx(c.logpmf).epsilon(1e-12));
  }
  CHECK(log_trinomial_pmf({3, 0, 0}, MultinomialCell{{1.0, 0.0, 0.0}}) == 0.0);
}

TEST_CASE("study pmf of an independence vine matches the beta-binomial closed form") {
  for (const auto& c : oracle::kIndepBetaStudy) {
    const StudyTable s{int(c.tn), int(c.fp), int(c.ne_neg), int(c.fn), int(c.tp), int(c.ne_pos)};
    ModelParams p;
    p.pi = {c.pi1, c.pi2, c.pi3, c.pi4};
    p.disp = {c.g1, c.g2, c.g3, c.g4};
    p.vine = DVineSpec::independent();
    CAPTURE(c.tn);
    CHECK(study_log_pmf(s, p, MarginKind::Beta, 60) == doctest::Approx(c.logpmf).epsilon(1e-7));
    CHECK(study_log_pmf(s, p, MarginKind::Beta, 15) == doctest::Approx(c.logpmf).epsilon(1e-2));
  }
}

TEST_CASE("cached kernel agrees with the serial reference") {
  const auto data = small_data();
  SUBCASE("beta margins, truncated Clayton vine") {
    const auto p = default_truth();
    QuadLikelihood q(data, MarginKind::Beta, 9);
    const auto per = q.study_log_pmfs(p);
    for (std::size_t i = 0; i < data.size(); ++i)
      CHECK(per[i] == doctest::Approx(reference::study_log_pmf(data[i], p, MarginKind::Beta, 9)).epsilon(1e-7));
  }
  SUBCASE("normal margins, full vine") {
    const auto p = full_vine_normal();
    QuadLikelihood q(data, MarginKind::Normal, 9);
    CHECK(q.loglik(p) == doctest::Approx(reference::loglik_quad(data, p, MarginKind::Normal, 9)).epsilon(1e-10));
  }
  SUBCASE("caches are invalidated by parameter changes") {
    QuadLikelihood q(data, MarginKind::Beta, 7);
    auto p = default_truth();
    const double l0 = q.loglik(p);
    p.vine.level1[1].theta = 1.0;
    const double l1 = q.loglik(p);
    CHECK(l1 == doctest::Approx(reference::loglik_quad(data, p, MarginKind::Beta, 7)).epsilon(1e-7));
    p.pi[2] = 0.08;
    const double l2 = q.loglik(p);
    CHECK(l2 == doctest::Approx(reference::loglik_quad(data, p, MarginKind::Beta, 7)).epsilon(1e-7));
    CHECK(q.loglik(default_truth()) == doctest::Approx(l0).epsilon(1e-14));
  }
  SUBCASE("bivariate kernel") {
    BivParams b{{0.9, 0.8}, {0.1, 0.2}, {kFrank, -3.0}};
    for (Handling h : {Handling::Exclude, Handling::IntentToDiagnose}) {
      BivariateLikelihood l(data, MarginKind::Beta, h, 15);
      CHECK(l.loglik(b) == doctest::Approx(reference::loglik_bivariate(data, b, MarginKind::Beta, h, 15)).epsilon(1e-7));
    }
    BivParams n{{0.9, 0.8}, {0.7, 1.2}, {kBVN, -0.4}};
    BivariateLikelihood l(data, MarginKind::Normal, Handling::Exclude, 15);
    CHECK(l.loglik(n) ==
          doctest::Approx(reference::loglik_bivariate(data, n, MarginKind::Normal, Handling::Exclude, 15)).epsilon(1e-10));
  }
}

TEST_CASE("likelihood is -inf outside the model space") {
  auto p = default_truth();
  p.pi[0] = 0.95;  // pi1 + pi3 > 1
  CHECK(std::isinf(loglik_quad(small_data(), p, MarginKind::Beta, 5)));
  CHECK_FALSE(is_valid(p, MarginKind::Beta));
  CHECK_THROWS_AS(validate(p, MarginKind::Beta), DomainError);
}

TEST_CASE("margins implied by the parameters") {
  const auto p = default_truth();
  const auto b = beta_margins(p);
  CHECK(b[2].pi == doctest::Approx(0.06 / 0.1));
  CHECK(b[3].pi == doctest::Approx(0.11 / 0.23));
  const auto n = normal_margins(p);
  CHECK(n[0].mu == doctest::Approx(std::log(0.9 / 0.04)));
  CHECK(n[3].mu == doctest::Approx(std::log(0.11 / 0.12)));
}

TEST_CASE("parameter counts and AIC") {
  CHECK(parameter_count(default_truth()) == 11);
  CHECK(parameter_count(full_vine_normal()) == 14);
  CHECK(parameter_count(BivParams{{0.9, 0.8}, {0.1, 0.1}, {kBVN, 0.1}}) == 5);
  CHECK(aic(-100.0, 11) == 222.0);
}

TEST_CASE("recoding for the bivariate comparators") {
  const StudyTable s{40, 5, 3, 2, 50, 4};
  const auto e = recode(s, Handling::Exclude);
  CHECK(e.tp == 50);
  CHECK(e.n1 == 52);
  CHECK(e.tn == 40);
  CHECK(e.n0 == 45);
  const auto i = recode(s, Handling::IntentToDiagnose);
  CHECK(i.n1 == 56);
  CHECK(i.n0 == 48);
}

TEST_CASE("model tokens") {
  for (const char* t : {"quad-normal", "quad-beta", "biv-exclude", "biv-itd"}) CHECK(to_token(parse_model_kind(t)) == t);
  CHECK_THROWS_AS(parse_model_kind("quad"), DomainError);
  CHECK(parse_margin_kind("normal") == MarginKind::Normal);
}

TEST_CASE("dataset parsing") {
  std::istringstream in("tp,study_id,fn,ne_pos,tn,fp,ne_neg,extra\n50,a,2,4,40,5,3,x\n\n9,b,0,0,7,1,0,y\n");
  const auto d = parse_dataset(in);
  REQUIRE(d.size() == 2);
  CHECK(d.ids[1] == "b");
  CHECK(d.studies[0] == StudyTable{40, 5, 3, 2, 50, 4});
  std::ostringstream out;
  write_dataset(out, d);
  std::istringstream back(out.str());
  const auto r = parse_dataset(back);
  CHECK(r.ids == d.ids);
  CHECK(r.studies == d.studies);

  auto fails_at = [](const std::string& text) {
    std::istringstream is(text);
    try {
      parse_dataset(is);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  const std::string h = "study_id,tn,fp,ne_neg,fn,tp,ne_pos\n";
  CHECK(fails_at("study_id,tn,fp,ne_neg,fn,tp\n") == 1);
  CHECK(fails_at(h + "a,1,2,3,4,5,6\na,1,2,3,4,5,6\n") == 3);
  CHECK(fails_at(h + "a,1,-2,3,4,5,6\n") == 2);
  CHECK(fails_at(h + "a,1,2.5,3,4,5,6\n") == 2);
  CHECK(fails_at(h + "a,0,0,0,0,0,0\n") == 2);
  CHECK(fails_at(h) >= 1);
}
