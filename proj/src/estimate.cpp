#include "vinemeta/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vinemeta/bfgs.hpp"
#include "vinemeta/error.hpp"
#include "vinemeta/kernel.hpp"
#include "vinemeta/stats.hpp"

namespace vinemeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Every coordinate maps smoothly onto a bounded natural range. The bounds
// keep the cubature away from degenerate margins and copulas; an optimum on
// a bound is approached asymptotically, with a vanishing gradient, instead
// of against a wall the line search cannot cross.
struct Range {
  double lo, hi;
};
constexpr double kMaxLogit = 25.0;                    // (multinomial) logits of pi
constexpr Range kLogSigma{-6.907755278982137, 3.4011973816621555};  // sigma in (1e-3, 30)
constexpr Range kGamma{1e-5, 1.0 - 1e-5};
constexpr double kRhoMax = 0.999;
constexpr Range kLogClayton{-9.210340371976182, 5.298317366548036};  // theta in (1e-4, 200)
constexpr double kFrankMax = 150.0;

double logit(double p) { return std::log(p) - std::log1p(-p); }
double expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double to_coord(double v, Range r) {
  const double t = std::clamp((v - r.lo) / (r.hi - r.lo), 1e-12, 1.0 - 1e-12);
  return logit(t);
}
double from_coord(double z, Range r) { return r.lo + (r.hi - r.lo) * expit(z); }

// v = m tanh(z / m): identity near 0, saturating at +-m.
double to_coord_sym(double v, double m) { return m * std::atanh(std::clamp(v / m, -1.0 + 1e-12, 1.0 - 1e-12)); }
double from_coord_sym(double z, double m) { return m * std::tanh(z / m); }

double theta_to_coord(const CopulaSpec& c) {
  switch (c.family.kind) {
    case CopulaKind::BVN: return std::atanh(std::clamp(c.theta / kRhoMax, -1.0 + 1e-12, 1.0 - 1e-12));
    case CopulaKind::Clayton: return to_coord(std::log(c.theta), kLogClayton);
    case CopulaKind::Frank: return to_coord_sym(c.theta, kFrankMax);
    default: return 0.0;
  }
}

double coord_to_theta(CopulaFamily family, double z) {
  switch (family.kind) {
    case CopulaKind::BVN: return kRhoMax * std::tanh(z);
    case CopulaKind::Clayton: return std::exp(from_coord(z, kLogClayton));
    case CopulaKind::Frank: return from_coord_sym(z, kFrankMax);
    default: return 0.0;
  }
}

double disp_to_coord(double d, MarginKind margin) {
  return margin == MarginKind::Normal ? to_coord(std::log(d), kLogSigma) : to_coord(d, kGamma);
}

double coord_to_disp(double z, MarginKind margin) {
  return margin == MarginKind::Normal ? std::exp(from_coord(z, kLogSigma)) : from_coord(z, kGamma);
}

std::array<CopulaFamily, 6> families(const FitSpec& spec) {
  if (spec.truncated) return {spec.level1[0], spec.level1[1], spec.level1[2], kIndependence, kIndependence, kIndependence};
  return {spec.level1[0], spec.level1[1], spec.level1[2], spec.upper[0], spec.upper[1], spec.upper[2]};
}

void set_pair(DVineSpec& vine, int k, const CopulaSpec& c) {
  if (k < 3) {
    vine.level1[k] = c;
  } else if (k < 5) {
    vine.level2[k - 3] = c;
  } else {
    vine.level3 = c;
  }
}

// Additive-logistic pair (a, b) -> (p_a, p_b).
std::pair<double, double> simplex_pair(double za, double zb) {
  const double a = from_coord_sym(za, kMaxLogit), b = from_coord_sym(zb, kMaxLogit);
  return {margins::mlogit_inv(a, b), margins::mlogit_inv(b, a)};
}

// Sign rule and bounds for starting taus.
double attainable_start(CopulaFamily family, double tau, const char* pair) {
  try {
    const double th = copula::tau_to_theta(family, tau);
    return th;
  } catch (const DomainError& e) {
    throw DomainError(std::string("pair C") + pair + ": " + e.what());
  }
}

double default_tau(CopulaFamily family, double sign_hint, double magnitude) {
  if (family.kind == CopulaKind::Independence) return 0.0;
  if (family.kind == CopulaKind::Clayton) {
    const bool negative = family.rotation == Rotation::R90 || family.rotation == Rotation::R270;
    return negative ? -magnitude : magnitude;
  }
  return sign_hint < 0.0 ? -magnitude : magnitude;
}

double pooled(double num, double den) { return den > 0.0 ? num / den : 0.5; }

double empirical_logit(int a, int b) { return std::log((a + 0.5) / (b + 0.5)); }

}  // namespace

MarginKind FitSpec::margin() const noexcept {
  if (is_bivariate(model)) return bivariate_margin;
  return model == ModelKind::QuadNormal ? MarginKind::Normal : MarginKind::Beta;
}

std::string FitSpec::label() const {
  std::string out = to_token(model);
  if (is_bivariate(model)) out += std::string(" ") + to_token(bivariate_margin);
  return out + ' ' + copulas();
}

std::string FitSpec::copulas() const {
  if (is_bivariate(model)) return to_token(level1[0]);
  std::string out = to_token(level1[0]) + ',' + to_token(level1[1]) + ',' + to_token(level1[2]);
  if (truncated) return out + " (truncated)";
  return out + ',' + to_token(upper[0]) + ',' + to_token(upper[1]) + ',' + to_token(upper[2]);
}

double FitResult::value(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  return std::nan("");
}

double FitResult::stderr_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size() && i < se.size(); ++i) {
    if (names[i] == name) return se[i];
  }
  return std::nan("");
}

// ---------------------------------------------------------------------------
// Parameter transforms

Eigen::VectorXd pack(const ModelParams& p, MarginKind margin) {
  validate(p, margin);
  std::vector<double> x;
  for (int j : {0, 1, 2, 3}) x.push_back(to_coord_sym(margins::mlogit(p.pi[j], p.pi[(j + 2) % 4]), kMaxLogit));
  for (double d : p.disp) x.push_back(disp_to_coord(d, margin));
  for (const auto& c : dvine::pair_copulas(p.vine)) {
    if (c.family.kind != CopulaKind::Independence) x.push_back(theta_to_coord(c));
  }
  return Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

ModelParams unpack(const Eigen::VectorXd& x, const FitSpec& spec) {
  const MarginKind margin = spec.margin();
  ModelParams p;
  const auto [p1, p3] = simplex_pair(x[0], x[2]);
  const auto [p2, p4] = simplex_pair(x[1], x[3]);
  p.pi = {p1, p2, p3, p4};
  for (int j = 0; j < 4; ++j) p.disp[j] = coord_to_disp(x[4 + j], margin);
  p.vine = DVineSpec::independent();
  p.vine.truncated = spec.truncated;
  Eigen::Index k = 8;
  const auto fam = families(spec);
  for (int pair = 0; pair < 6; ++pair) {
    CopulaSpec c{fam[pair], 0.0};
    if (fam[pair].kind != CopulaKind::Independence) c.theta = coord_to_theta(fam[pair], x[k++]);
    set_pair(p.vine, pair, c);
  }
  if (k != x.size()) throw DomainError("unpack: coordinate count does not match the fit specification");
  return p;
}

Eigen::VectorXd pack(const BivParams& p, MarginKind margin) {
  validate(p, margin);
  std::vector<double> x = {to_coord_sym(logit(p.pi[0]), kMaxLogit), to_coord_sym(logit(p.pi[1]), kMaxLogit)};
  for (double d : p.disp) x.push_back(disp_to_coord(d, margin));
  if (p.copula.family.kind != CopulaKind::Independence) x.push_back(theta_to_coord(p.copula));
  return Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

BivParams unpack_bivariate(const Eigen::VectorXd& x, const FitSpec& spec) {
  const MarginKind margin = spec.margin();
  BivParams p;
  p.pi = {expit(from_coord_sym(x[0], kMaxLogit)), expit(from_coord_sym(x[1], kMaxLogit))};
  for (int j = 0; j < 2; ++j) p.disp[j] = coord_to_disp(x[2 + j], margin);
  p.copula = {spec.level1[0], 0.0};
  if (spec.level1[0].kind != CopulaKind::Independence) {
    if (x.size() != 5) throw DomainError("unpack_bivariate: expected 5 coordinates");
    p.copula.theta = coord_to_theta(spec.level1[0], x[4]);
  }
  return p;
}

std::vector<std::string> natural_names(const FitSpec& spec) {
  const char* disp = spec.margin() == MarginKind::Normal ? "sigma" : "gamma";
  std::vector<std::string> names;
  if (is_bivariate(spec.model)) {
    names = {"pi1", "pi2", std::string(disp) + "1", std::string(disp) + "2"};
    if (spec.level1[0].kind != CopulaKind::Independence) names.push_back("tau12");
    return names;
  }
  names = {"pi1", "pi2", "pi3", "pi4"};
  for (int j = 1; j <= 4; ++j) names.push_back(disp + std::to_string(j));
  const auto fam = families(spec);
  for (int k = 0; k < 6; ++k) {
    if (fam[k].kind != CopulaKind::Independence) names.push_back(std::string("tau") + dvine::kPairNames[k]);
  }
  return names;
}

std::vector<double> natural_values(const ModelParams& p, const FitSpec& spec) {
  std::vector<double> v(p.pi.begin(), p.pi.end());
  v.insert(v.end(), p.disp.begin(), p.disp.end());
  const auto pairs = dvine::pair_copulas(p.vine);
  const auto fam = families(spec);
  for (int k = 0; k < 6; ++k) {
    if (fam[k].kind != CopulaKind::Independence) v.push_back(copula::theta_to_tau(pairs[k]));
  }
  return v;
}

std::vector<double> natural_values(const BivParams& p) {
  std::vector<double> v = {p.pi[0], p.pi[1], p.disp[0], p.disp[1]};
  if (p.copula.family.kind != CopulaKind::Independence) v.push_back(copula::theta_to_tau(p.copula));
  return v;
}

// ---------------------------------------------------------------------------
// Starting values

ModelParams starting_values(const std::vector<StudyTable>& data, const FitSpec& spec, const FitOptions& options) {
  if (data.empty()) throw DomainError("no studies");
  double tp = 0, ne_pos = 0, n1 = 0, tn = 0, ne_neg = 0, n0 = 0;
  std::vector<double> x1, x2, x3, x4;
  for (const auto& s : data) {
    tp += s.y11;
    ne_pos += s.y21;
    n1 += s.diseased();
    tn += s.y00;
    ne_neg += s.y20;
    n0 += s.non_diseased();
    x1.push_back(empirical_logit(s.y11, s.y01));
    x2.push_back(empirical_logit(s.y00, s.y10));
    x3.push_back(empirical_logit(s.y21, s.y01));
    x4.push_back(empirical_logit(s.y20, s.y10));
  }
  // Keep the pooled proportions inside the simplex.
  const auto fix = [](double a, double b) {
    a = std::clamp(a, 0.005, 0.99);
    b = std::clamp(b, 0.005, 0.99);
    const double total = a + b;
    if (total > 0.99) {
      a *= 0.99 / total;
      b *= 0.99 / total;
    }
    return std::pair{a, b};
  };
  const auto [pi1, pi3] = fix(pooled(tp, n1), pooled(ne_pos, n1));
  const auto [pi2, pi4] = fix(pooled(tn, n0), pooled(ne_neg, n0));

  ModelParams p;
  p.pi = {pi1, pi2, pi3, pi4};
  const double d0 = spec.margin() == MarginKind::Normal ? 1.0 : 0.5;
  p.disp = {d0, d0, d0, d0};
  p.vine = DVineSpec::independent();
  p.vine.truncated = spec.truncated;

  const double hints[3] = {stats::kendall_tau(x1, x2), stats::kendall_tau(x2, x3), stats::kendall_tau(x3, x4)};
  const auto fam = families(spec);
  for (int k = 0; k < 6; ++k) {
    if (fam[k].kind == CopulaKind::Independence) continue;
    double tau = k < 3 ? default_tau(fam[k], hints[k], 0.2) : default_tau(fam[k], 0.0, 0.1);
    if (k >= 3 && fam[k].kind != CopulaKind::Clayton) tau = 0.0;
    if (static_cast<std::size_t>(k) < options.start_tau.size() && options.start_tau[k]) tau = *options.start_tau[k];
    set_pair(p.vine, k, {fam[k], attainable_start(fam[k], tau, dvine::kPairNames[k])});
  }
  return p;
}

BivParams starting_values_bivariate(const std::vector<StudyTable>& data, const FitSpec& spec,
                                    const FitOptions& options) {
  if (data.empty()) throw DomainError("no studies");
  const Handling handling = spec.model == ModelKind::BivExclude ? Handling::Exclude : Handling::IntentToDiagnose;
  double tp = 0, n1 = 0, tn = 0, n0 = 0;
  std::vector<double> xs, xc;
  for (const auto& s : data) {
    const auto b = recode(s, handling);
    tp += b.tp;
    n1 += b.n1;
    tn += b.tn;
    n0 += b.n0;
    xs.push_back(empirical_logit(b.tp, b.n1 - b.tp));
    xc.push_back(empirical_logit(b.tn, b.n0 - b.tn));
  }
  BivParams p;
  p.pi = {std::clamp(pooled(tp, n1), 0.005, 0.995), std::clamp(pooled(tn, n0), 0.005, 0.995)};
  const double d0 = spec.margin() == MarginKind::Normal ? 1.0 : 0.5;
  p.disp = {d0, d0};
  const CopulaFamily fam = spec.level1[0];
  double tau = default_tau(fam, stats::kendall_tau(xs, xc), 0.2);
  if (!options.start_tau.empty() && options.start_tau[0]) tau = *options.start_tau[0];
  p.copula = {fam, fam.kind == CopulaKind::Independence ? 0.0 : attainable_start(fam, tau, "12")};
  return p;
}

// ---------------------------------------------------------------------------
// Fitting

namespace {

struct Problem {
  Objective objective;
  std::function<std::vector<double>(const Eigen::VectorXd&)> natural;
};

Problem quad_problem(std::shared_ptr<QuadLikelihood> lik, const FitSpec& spec) {
  const MarginKind margin = spec.margin();
  Problem pr;
  pr.objective = [lik, spec, margin](const Eigen::VectorXd& x) {
    if (!x.allFinite()) return kInf;
    const ModelParams p = unpack(x, spec);
    if (!is_valid(p, margin)) return kInf;
    try {
      return -lik->loglik(p);
    } catch (const NumericError&) {
      return kInf;
    }
  };
  pr.natural = [spec](const Eigen::VectorXd& x) { return natural_values(unpack(x, spec), spec); };
  return pr;
}

Problem biv_problem(std::shared_ptr<BivariateLikelihood> lik, const FitSpec& spec) {
  const MarginKind margin = spec.margin();
  Problem pr;
  pr.objective = [lik, spec, margin](const Eigen::VectorXd& x) {
    if (!x.allFinite()) return kInf;
    const BivParams p = unpack_bivariate(x, spec);
    if (!is_valid(p, margin)) return kInf;
    try {
      return -lik->loglik(p);
    } catch (const NumericError&) {
      return kInf;
    }
  };
  pr.natural = [spec](const Eigen::VectorXd& x) { return natural_values(unpack_bivariate(x, spec)); };
  return pr;
}

void finish_result(FitResult& r, const Problem& pr, const BfgsResult& b, const FitOptions& options) {
  r.loglik = -b.f;
  r.aic = aic(r.loglik, r.n_params);
  r.converged = b.converged;
  r.iterations = b.iterations;
  r.evaluations = b.evaluations;
  r.grad_max = b.grad.size() ? b.grad.lpNorm<Eigen::Infinity>() : 0.0;
  r.message = b.message;
  r.values = pr.natural(b.x);
  r.se.assign(r.values.size(), std::nan(""));
  r.se_available = false;
  if (options.compute_se && r.converged) {
    int evals = 0;
    const Eigen::MatrixXd H = numeric_hessian(pr.objective, b.x, b.f, options.hess_step, &evals);
    r.evaluations += evals;
    if (H.allFinite()) {
      auto se = standard_errors(H, b.x, pr.natural);
      if (!se.empty()) {
        r.se = std::move(se);
        r.se_available = true;
      }
    }
  }
}

BfgsOptions bfgs_options(const FitOptions& o) {
  BfgsOptions b;
  b.max_iter = o.max_iter;
  b.grad_step = o.grad_step;
  b.tol = o.tol;
  return b;
}

FitResult fit_quad(const std::vector<StudyTable>& data, const FitSpec& spec, const FitOptions& options,
                   const ModelParams& start, std::shared_ptr<QuadLikelihood> lik) {
  const Problem pr = quad_problem(lik, spec);
  const Eigen::VectorXd x0 = pack(start, spec.margin());
  const BfgsResult b = minimize_bfgs(pr.objective, x0, bfgs_options(options));
  FitResult r;
  r.spec = spec;
  r.estimates = unpack(b.x, spec);
  r.names = natural_names(spec);
  r.n_params = parameter_count(r.estimates);
  r.truncated = spec.truncated;
  finish_result(r, pr, b, options);
  (void)data;
  return r;
}

}  // namespace

FitResult fit(const std::vector<StudyTable>& data, const FitSpec& spec, const FitOptions& options) {
  if (data.empty()) throw DomainError("no studies");
  if (is_bivariate(spec.model)) {
    const Handling handling = spec.model == ModelKind::BivExclude ? Handling::Exclude : Handling::IntentToDiagnose;
    auto lik = std::make_shared<BivariateLikelihood>(data, spec.margin(), handling, options.nq);
    const Problem pr = biv_problem(lik, spec);
    const BivParams start = starting_values_bivariate(data, spec, options);
    const BfgsResult b = minimize_bfgs(pr.objective, pack(start, spec.margin()), bfgs_options(options));
    FitResult r;
    r.spec = spec;
    r.biv = unpack_bivariate(b.x, spec);
    r.names = natural_names(spec);
    r.n_params = parameter_count(r.biv);
    finish_result(r, pr, b, options);
    return r;
  }

  auto lik = std::make_shared<QuadLikelihood>(data, spec.margin(), options.nq);
  const ModelParams start = starting_values(data, spec, options);
  FitResult r = fit_quad(data, spec, options, start, lik);
  if (spec.truncated) return r;

  // Upper-level dependence at the edge of its range: capture the dependence in
  // the first tree instead and refit the truncated vine.
  const auto pairs = dvine::pair_copulas(r.estimates.vine);
  bool boundary = false;
  for (int k = 3; k < 6; ++k) {
    if (std::abs(copula::theta_to_tau(pairs[k])) > options.truncation_threshold) boundary = true;
  }
  if (!boundary) return r;
  FitSpec truncated = spec;
  truncated.truncated = true;
  ModelParams restart = r.estimates;
  restart.vine = DVineSpec::truncated_vine(r.estimates.vine.level1);
  FitResult t = fit_quad(data, truncated, options, restart, lik);
  t.message = "truncated after boundary estimate at level 2/3; " + t.message;
  return t;
}

std::vector<double> standard_errors(const Eigen::MatrixXd& hessian, const Eigen::VectorXd& x,
                                    const std::function<std::vector<double>(const Eigen::VectorXd&)>& natural) {
  const Eigen::MatrixXd H = 0.5 * (hessian + hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
  if (eig.info() != Eigen::Success) return {};
  Eigen::VectorXd lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();
  if (!(lmax > 0.0)) return {};
  if (lambda.minCoeff() <= 0.0) {
    // Nearest positive-definite matrix in the Frobenius norm, floored so the
    // inverse stays bounded.
    const double floor = 1e-8 * lmax;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda[i] = std::max(lambda[i], floor);
  }
  const Eigen::MatrixXd V = eig.eigenvectors();
  const Eigen::MatrixXd cov = V * lambda.cwiseInverse().asDiagonal() * V.transpose();

  // Jacobian of the natural parameters by central differences.
  const std::vector<double> base = natural(x);
  const auto m = static_cast<Eigen::Index>(base.size());
  Eigen::MatrixXd J(m, x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    xp[j] = x[j] + h;
    const auto fp = natural(xp);
    xp[j] = x[j] - h;
    const auto fm = natural(xp);
    xp[j] = x[j];
    for (Eigen::Index i = 0; i < m; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  const Eigen::MatrixXd cov_nat = J * cov * J.transpose();
  std::vector<double> se(base.size());
  for (Eigen::Index i = 0; i < m; ++i) se[i] = std::sqrt(std::max(cov_nat(i, i), 0.0));
  return se;
}

void standard_errors(const std::vector<StudyTable>& data, FitResult& r, const FitOptions& options) {
  Problem pr;
  Eigen::VectorXd x;
  if (is_bivariate(r.spec.model)) {
    const Handling handling = r.spec.model == ModelKind::BivExclude ? Handling::Exclude : Handling::IntentToDiagnose;
    pr = biv_problem(std::make_shared<BivariateLikelihood>(data, r.spec.margin(), handling, options.nq), r.spec);
    x = pack(r.biv, r.spec.margin());
  } else {
    FitSpec spec = r.spec;
    spec.truncated = r.truncated;
    pr = quad_problem(std::make_shared<QuadLikelihood>(data, spec.margin(), options.nq), spec);
    x = pack(r.estimates, spec.margin());
  }
  const double fx = pr.objective(x);
  r.se.assign(r.values.size(), std::nan(""));
  r.se_available = false;
  if (!std::isfinite(fx)) return;
  const Eigen::MatrixXd H = numeric_hessian(pr.objective, x, fx, options.hess_step);
  if (!H.allFinite()) return;
  auto se = standard_errors(H, x, pr.natural);
  if (se.empty()) return;
  r.se = std::move(se);
  r.se_available = true;
}

}  // namespace vinemeta
