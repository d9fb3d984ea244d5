#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vinemeta/estimate.hpp"
#include "vinemeta/simulate.hpp"
#include "vinemeta/sroc.hpp"

namespace vinemeta::cli {

enum class Subcommand { Fit, Simulate, Sroc };

struct RunConfig {
  Subcommand subcommand = Subcommand::Fit;
  std::string input;
  std::string output = ".";
  std::vector<std::string> models;   // model tokens; empty = subcommand default
  std::string margin = "beta";       // margins of the bivariate models
  std::vector<std::string> copulas;  // each "c12,c23,c34[,c13.2,c24.3,c14.23]"
  bool truncate = false;
  std::size_t nq = 15;
  std::uint64_t seed = 1;
  std::size_t replications = 200;
  std::size_t studies = 30;
  std::vector<double> q_levels{0.01, 0.5, 0.99};
  std::size_t grid = 100;
  int threads = 0;  // 0: VINEMETA_THREADS, else all processors
  std::string start_tau;  // "t12,t23,t34,..." with empty entries for defaults
  bool standard_errors = true;
  int max_iter = 500;
  std::string fit_json;  // sroc: reuse a fit document instead of refitting
  bool export_datasets = false;
  // Simulation truth; defaults match SimDesign::defaults().
  std::string truth_margin = "beta";
  std::vector<double> truth_pi{0.90, 0.77, 0.06, 0.11};
  std::vector<double> truth_disp{0.09, 0.08, 0.37, 0.15};
  std::vector<double> truth_tau{0.82, -0.52, 0.26};
  std::string truth_copulas = "cln180,cln90,cln180";
};

/// Parses the command line (and a --config file of key = value lines;
/// flags take precedence) and runs the subcommand. Returns the exit status:
/// 0 on success, 1 on invalid input, 2 when a fit did not converge.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fit specifications requested by the configuration. Throws DomainError on
/// unknown tokens or inadmissible combinations.
std::vector<FitSpec> fit_specs(const RunConfig& config);

FitOptions fit_options(const RunConfig& config);
SimDesign sim_design(const RunConfig& config);

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sroc(const RunConfig& config, std::ostream& out, std::ostream& err);

/// JSON document of a set of fits with an AIC ranking; fixed field order.
std::string fit_json(const std::vector<FitResult>& fits, const RunConfig& config);
/// Fixed-width table: one column per fit, rows pi, dispersions, taus,
/// log-likelihood, parameter count and AIC.
std::string fit_table(const std::vector<FitResult>& fits);
/// Fits stored in a document written by fit_json.
std::vector<FitResult> fits_from_json(const std::string& text);

}  // namespace vinemeta::cli
