#include "vinemeta/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "vinemeta/dvine.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/margins.hpp"
#include "vinemeta/stats.hpp"

namespace vinemeta {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sequential-binomial multinomial draw.
std::array<int, 3> draw_trinomial(int n, const MultinomialCell& cell, Engine& eng) {
  std::array<int, 3> y{};
  int left = n;
  double mass = 1.0;
  for (int k = 0; k < 2; ++k) {
    const double p = mass > 0.0 ? std::clamp(cell.p[k] / mass, 0.0, 1.0) : 0.0;
    y[k] = left > 0 ? std::binomial_distribution<int>(left, p)(eng) : 0;
    left -= y[k];
    mass -= cell.p[k];
  }
  y[2] = left;
  return y;
}

}  // namespace

SimDesign SimDesign::defaults() {
  SimDesign d;
  d.truth.pi = {0.90, 0.77, 0.06, 0.11};
  d.truth.disp = {0.09, 0.08, 0.37, 0.15};
  const std::array<CopulaFamily, 3> fam = {clayton(Rotation::R180), clayton(Rotation::R90), clayton(Rotation::R180)};
  const std::array<double, 3> tau = {0.82, -0.52, 0.26};
  std::array<CopulaSpec, 3> level1;
  for (int k = 0; k < 3; ++k) level1[k] = {fam[k], copula::tau_to_theta(fam[k], tau[k])};
  d.truth.vine = DVineSpec::truncated_vine(level1);
  d.margin = MarginKind::Beta;
  return d;
}

void validate(const SimDesign& design) {
  if (design.n_studies < 1) throw DomainError("simulation design needs at least one study");
  if (design.replications < 1) throw DomainError("simulation design needs at least one replication");
  if (!(design.sizes.shape > 0.0) || !(design.sizes.rate > 0.0) || !(design.sizes.lag >= 0.0)) {
    throw DomainError("study-size distribution needs shape > 0, rate > 0, lag >= 0");
  }
  validate(design.truth, design.margin);
}

std::pair<int, int> draw_study_sizes(const StudySizeDist& dist, Engine& eng) {
  std::gamma_distribution<double> gamma(dist.shape, 1.0 / dist.rate);
  const int n1 = static_cast<int>(std::lround(gamma(eng) + dist.lag));
  const int n0 = static_cast<int>(std::lround(gamma(eng) + dist.lag));
  return {n1, n0};
}

StudyTable simulate_study(const ModelParams& truth, MarginKind margin, const Point4& u, int n1, int n0,
                          Engine& eng) {
  MultinomialCell dis, non;
  if (margin == MarginKind::Normal) {
    const auto m = normal_margins(truth);
    std::array<double, 4> x;
    for (int j = 0; j < 4; ++j) x[j] = margins::quantile(m[j], u[j]);
    dis = cell_probs_normal(x[0], x[2], Arm::Diseased);
    non = cell_probs_normal(x[1], x[3], Arm::NonDiseased);
  } else {
    const auto m = beta_margins(truth);
    std::array<double, 4> x;
    for (int j = 0; j < 4; ++j) x[j] = margins::quantile(m[j], u[j]);
    dis = cell_probs_beta(x[0], x[2], Arm::Diseased);
    non = cell_probs_beta(x[1], x[3], Arm::NonDiseased);
  }
  const auto yd = draw_trinomial(n1, dis, eng);
  const auto yn = draw_trinomial(n0, non, eng);
  StudyTable s;
  s.y01 = yd[0];
  s.y11 = yd[1];
  s.y21 = yd[2];
  s.y00 = yn[0];
  s.y10 = yn[1];
  s.y20 = yn[2];
  return s;
}

std::vector<StudyTable> generate_dataset(const SimDesign& design, std::size_t rep) {
  validate(design);
  const auto u = dvine::sample(design.truth.vine, design.n_studies, derive_seed(design.seed, 2 * rep));
  Engine eng(derive_seed(design.seed, 2 * rep + 1));
  std::vector<StudyTable> out;
  out.reserve(design.n_studies);
  for (std::size_t i = 0; i < design.n_studies; ++i) {
    const auto [n1, n0] = draw_study_sizes(design.sizes, eng);
    out.push_back(simulate_study(design.truth, design.margin, u[i], n1, n0, eng));
  }
  return out;
}

const ParamSummary* SimSummary::find(const std::string& name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

SimSummary summarize(const FitSpec& spec, const std::vector<ReplicateFit>& fits, const SimDesign& design) {
  FitSpec truth_spec;
  truth_spec.model = design.margin == MarginKind::Normal ? ModelKind::QuadNormal : ModelKind::QuadBeta;
  const auto pairs = dvine::pair_copulas(design.truth.vine);
  for (int k = 0; k < 3; ++k) {
    truth_spec.level1[k] = pairs[k].family;
    truth_spec.upper[k] = pairs[k + 3].family;
  }
  truth_spec.truncated = design.truth.vine.truncated;
  const auto truth_names = natural_names(truth_spec);
  const auto truth_values = natural_values(design.truth, truth_spec);

  SimSummary s;
  s.spec = spec;
  s.replications = fits.size();
  const auto names = natural_names(spec);
  for (const auto& f : fits) s.converged += f.converged ? 1 : 0;

  const bool same_scale = spec.margin() == design.margin && !is_bivariate(spec.model);
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto& name = names[j];
    const bool dispersion = name.rfind("sigma", 0) == 0 || name.rfind("gamma", 0) == 0;
    if (dispersion && !same_scale) continue;
    std::size_t t = 0;
    while (t < truth_names.size() && truth_names[t] != name) ++t;
    if (t == truth_names.size()) continue;

    ParamSummary p;
    p.name = name;
    p.truth = truth_values[t];
    std::vector<double> est, var;
    for (const auto& f : fits) {
      if (!f.converged) continue;
      est.push_back(f.values[j]);
      if (j < f.se.size() && std::isfinite(f.se[j])) var.push_back(f.se[j] * f.se[j]);
    }
    if (est.empty()) {
      p.bias = p.sd = p.rmse = p.sqrt_vbar = kNaN;
    } else {
      p.bias = stats::mean(est) - p.truth;
      p.sd = stats::population_sd(est);
      double mse = 0.0;
      for (double e : est) mse += (e - p.truth) * (e - p.truth);
      p.rmse = std::sqrt(mse / static_cast<double>(est.size()));
      p.sqrt_vbar = var.empty() ? kNaN : std::sqrt(stats::mean(var));
    }
    s.params.push_back(p);
  }
  return s;
}

SimulationResult run_simulation_study(const SimDesign& design, const std::vector<FitSpec>& specs,
                                      const FitOptions& options, const SimProgress& progress) {
  validate(design);
  const std::size_t reps = design.replications;
  SimulationResult result;
  result.fits.assign(specs.size(), std::vector<ReplicateFit>(reps));
  std::size_t done = 0;

  // Replicates are independent; each writes only its own slots.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const auto data = generate_dataset(design, rep);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      ReplicateFit rf;
      try {
        const FitResult r = fit(data, specs[k], options);
        rf.converged = r.converged;
        rf.names = r.names;
        rf.values = r.values;
        rf.se = r.se;
      } catch (const std::exception&) {
        rf.converged = false;
      }
      result.fits[k][rep] = std::move(rf);
    }
    if (progress) {
#pragma omp critical(vinemeta_sim_progress)
      progress(++done, reps);
    }
  }

  for (std::size_t k = 0; k < specs.size(); ++k) result.summaries.push_back(summarize(specs[k], result.fits[k], design));
  return result;
}

void write_summary_csv(std::ostream& os, const std::vector<SimSummary>& summaries) {
  // Union of parameter names in first-seen order.
  std::vector<std::string> cols;
  for (const auto& s : summaries) {
    for (const auto& p : s.params) {
      bool seen = false;
      for (const auto& c : cols) seen = seen || c == p.name;
      if (!seen) cols.push_back(p.name);
    }
  }
  os << "statistic,model,margin,copulas,replications,converged";
  for (const auto& c : cols) os << ',' << c;
  os << '\n';

  const auto fmt = [](double v) {
    if (!std::isfinite(v)) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", 100.0 * v);
    return std::string(buf);
  };
  const char* stats_names[] = {"Bias", "SD", "sqrtVbar", "RMSE"};
  for (int st = 0; st < 4; ++st) {
    for (const auto& s : summaries) {
      os << stats_names[st] << ',' << to_token(s.spec.model) << ',' << to_token(s.spec.margin()) << ',';
      os << '"' << s.spec.copulas() << '"' << ',' << s.replications << ',' << s.converged;
      for (const auto& c : cols) {
        os << ',';
        const ParamSummary* p = s.find(c);
        if (!p) continue;
        const double v = st == 0 ? p->bias : st == 1 ? p->sd : st == 2 ? p->sqrt_vbar : p->rmse;
        os << fmt(v);
      }
      os << '\n';
    }
  }
}

}  // namespace vinemeta
