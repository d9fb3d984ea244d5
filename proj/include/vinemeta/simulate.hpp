#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vinemeta/estimate.hpp"
#include "vinemeta/model.hpp"
#include "vinemeta/random.hpp"
#include "vinemeta/study.hpp"

namespace vinemeta {

/// Shifted gamma: Gamma(shape, rate) + lag, rounded to the nearest integer.
struct StudySizeDist {
  double shape = 1.2;
  double rate = 0.01;
  double lag = 30.0;
};

struct SimDesign {
  std::size_t n_studies = 30;
  ModelParams truth;
  MarginKind margin = MarginKind::Beta;
  StudySizeDist sizes;
  std::size_t replications = 200;
  std::uint64_t seed = 1;

  /// Beta margins, pi = (0.90, 0.77, 0.06, 0.11), gamma = (0.09, 0.08, 0.37,
  /// 0.15), Clayton {180, 90, 180} truncated vine with tau = (0.82, -0.52, 0.26).
  static SimDesign defaults();
};

void validate(const SimDesign& design);

/// Diseased and non-diseased arm sizes, drawn independently.
std::pair<int, int> draw_study_sizes(const StudySizeDist& dist, Engine& eng);

/// Replicate `rep` of the design; depends only on (design.seed, rep).
std::vector<StudyTable> generate_dataset(const SimDesign& design, std::size_t rep);

/// One simulated study from latent uniforms u (a vine draw).
StudyTable simulate_study(const ModelParams& truth, MarginKind margin, const Point4& u, int n1, int n0, Engine& eng);

/// Summary of one parameter over the converged replicates, on the natural
/// scale. sqrt_vbar is NaN when no replicate produced standard errors.
struct ParamSummary {
  std::string name;
  double truth = 0.0;
  double bias = 0.0;
  double sd = 0.0;
  double rmse = 0.0;
  double sqrt_vbar = 0.0;
};

struct SimSummary {
  FitSpec spec;
  std::size_t replications = 0;
  std::size_t converged = 0;
  std::vector<ParamSummary> params;

  /// NaN-valued fields if the parameter is not summarised.
  const ParamSummary* find(const std::string& name) const;
};

/// Estimates of one fit to one replicate.
struct ReplicateFit {
  bool converged = false;
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> se;
};

struct SimulationResult {
  std::vector<SimSummary> summaries;  // one per fit spec
  /// fits[spec][rep]
  std::vector<std::vector<ReplicateFit>> fits;
};

/// Aggregates replicate fits against the truth. Parameters without a
/// same-scale counterpart in the truth (dispersions of a fit whose margin
/// kind differs from the generating one, and the dispersions of bivariate
/// comparators) are omitted.
SimSummary summarize(const FitSpec& spec, const std::vector<ReplicateFit>& fits, const SimDesign& design);

using SimProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Fits every spec to every replicate (parallel over replicates) and
/// aggregates. Results do not depend on the thread count.
SimulationResult run_simulation_study(const SimDesign& design, const std::vector<FitSpec>& specs,
                                      const FitOptions& options = {}, const SimProgress& progress = {});

/// CSV with rows Bias/SD/sqrtVbar/RMSE per spec, columns per parameter,
/// values scaled by 100.
void write_summary_csv(std::ostream& os, const std::vector<SimSummary>& summaries);

}  // namespace vinemeta
