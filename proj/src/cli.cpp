#include "vinemeta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vinemeta/error.hpp"
#include "vinemeta/kernel.hpp"

namespace vinemeta::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<CopulaFamily> parse_families(const std::string& list) {
  std::vector<CopulaFamily> out;
  for (const auto& tok : split(list, ',')) out.push_back(parse_family(trim(tok)));
  return out;
}

ModelKind parse_model(const std::string& token) { return parse_model_kind(trim(token)); }

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("VINEMETA_THREADS")) threads = std::atoi(env);
  }
  set_thread_count(threads > 0 ? threads : 0);
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DomainError("cannot create output directory " + dir + ": " + ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path.string());
  f << content;
}

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "-";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void validate(const RunConfig& c) {
  if (c.nq < 2) throw DomainError("--nq must be at least 2");
  if (c.replications < 1) throw DomainError("--reps must be at least 1");
  if (c.studies < 1) throw DomainError("--studies must be at least 1");
  if (c.grid < 2) throw DomainError("--grid must be at least 2");
  for (double q : c.q_levels) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("--q-levels entries must lie in (0, 1)");
  }
}

std::vector<std::size_t> aic_ranking(const std::vector<FitResult>& fits) {
  std::vector<std::size_t> idx(fits.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double x = std::isfinite(fits[a].aic) ? fits[a].aic : INFINITY;
    const double y = std::isfinite(fits[b].aic) ? fits[b].aic : INFINITY;
    return x < y;
  });
  return idx;
}

Json to_json(const FitResult& r) {
  Json j;
  const bool biv = is_bivariate(r.spec.model);
  j["model"] = to_token(r.spec.model);
  j["margin"] = to_token(r.spec.margin());
  j["label"] = r.spec.label();
  j["truncated"] = r.truncated;
  j["converged"] = r.converged;
  j["message"] = r.message;
  j["loglik"] = r.loglik;
  j["aic"] = r.aic;
  j["n_params"] = r.n_params;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["grad_max"] = r.grad_max;
  Json params = Json::array();
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    Json p;
    p["name"] = r.names[i];
    p["estimate"] = r.values[i];
    if (r.se_available && std::isfinite(r.se[i])) {
      p["se"] = r.se[i];
    } else {
      p["se"] = nullptr;
    }
    params.push_back(p);
  }
  j["parameters"] = params;
  Json pairs = Json::array();
  if (biv) {
    pairs.push_back({{"pair", "12"},
                     {"family", to_token(r.biv.copula.family)},
                     {"theta", r.biv.copula.theta},
                     {"tau", copula::theta_to_tau(r.biv.copula)}});
    j["pi"] = r.biv.pi;
    j["disp"] = r.biv.disp;
  } else {
    const auto pc = dvine::pair_copulas(r.estimates.vine);
    for (int k = 0; k < 6; ++k) {
      pairs.push_back({{"pair", dvine::kPairNames[k]},
                       {"family", to_token(pc[k].family)},
                       {"theta", pc[k].theta},
                       {"tau", copula::theta_to_tau(pc[k])}});
    }
    j["pi"] = r.estimates.pi;
    j["disp"] = r.estimates.disp;
  }
  j["pair_copulas"] = pairs;
  return j;
}

FitResult from_json(const Json& j) {
  FitResult r;
  r.spec.model = parse_model_kind(j.at("model").get<std::string>());
  const MarginKind margin = parse_margin_kind(j.at("margin").get<std::string>());
  r.spec.bivariate_margin = margin;
  r.truncated = j.at("truncated").get<bool>();
  r.spec.truncated = r.truncated;
  r.converged = j.at("converged").get<bool>();
  r.message = j.value("message", "");
  r.loglik = j.at("loglik").is_number() ? j.at("loglik").get<double>() : NAN;
  r.aic = j.at("aic").is_number() ? j.at("aic").get<double>() : NAN;
  r.n_params = j.at("n_params").get<int>();
  const auto& pairs = j.at("pair_copulas");
  std::vector<CopulaSpec> cs;
  for (const auto& p : pairs) cs.push_back({parse_family(p.at("family").get<std::string>()), p.at("theta").get<double>()});
  if (is_bivariate(r.spec.model)) {
    if (cs.size() != 1) throw DomainError("bivariate fit needs one pair-copula");
    r.spec.level1[0] = cs[0].family;
    r.biv.pi = j.at("pi").get<std::array<double, 2>>();
    r.biv.disp = j.at("disp").get<std::array<double, 2>>();
    r.biv.copula = cs[0];
    validate(r.biv, margin);
    r.values = natural_values(r.biv);
  } else {
    if (cs.size() != 6) throw DomainError("quadrivariate fit needs six pair-copulas");
    for (int k = 0; k < 3; ++k) {
      r.spec.level1[k] = cs[k].family;
      r.spec.upper[k] = cs[k + 3].family;
    }
    r.estimates.pi = j.at("pi").get<std::array<double, 4>>();
    r.estimates.disp = j.at("disp").get<std::array<double, 4>>();
    r.estimates.vine.level1 = {cs[0], cs[1], cs[2]};
    r.estimates.vine.level2 = {cs[3], cs[4]};
    r.estimates.vine.level3 = cs[5];
    r.estimates.vine.truncated = r.truncated;
    validate(r.estimates, r.spec.margin());
    r.values = natural_values(r.estimates, r.spec);
  }
  r.names = natural_names(r.spec);
  r.se.assign(r.names.size(), NAN);
  const auto& params = j.at("parameters");
  for (std::size_t i = 0; i < params.size() && i < r.se.size(); ++i) {
    if (params[i].at("se").is_number()) {
      r.se[i] = params[i].at("se").get<double>();
      r.se_available = true;
    }
  }
  return r;
}

std::vector<FitResult> fit_all(const std::vector<StudyTable>& data, const RunConfig& config, std::ostream& err) {
  const auto specs = fit_specs(config);
  const auto options = fit_options(config);
  std::vector<FitResult> fits;
  for (const auto& spec : specs) {
    fits.push_back(fit(data, spec, options));
    const auto& r = fits.back();
    if (!r.converged) err << "warning: " << spec.label() << " did not converge (" << r.message << ")\n";
  }
  return fits;
}

bool all_converged(const std::vector<FitResult>& fits) {
  return std::all_of(fits.begin(), fits.end(), [](const FitResult& r) { return r.converged; });
}

}  // namespace

std::vector<FitSpec> fit_specs(const RunConfig& config) {
  std::vector<std::string> models = config.models;
  std::vector<std::string> copulas = config.copulas;
  const MarginKind biv_margin = parse_margin_kind(config.margin);

  std::vector<FitSpec> specs;
  if (config.subcommand == Subcommand::Simulate && models.empty() && copulas.empty()) {
    // The generating model, the normal-margin BVN alternative and both
    // bivariate comparators.
    const auto truth = parse_families(config.truth_copulas);
    if (truth.size() != 3) throw DomainError("--truth-copulas needs three families");
    FitSpec s;
    s.model = parse_margin_kind(config.truth_margin) == MarginKind::Beta ? ModelKind::QuadBeta : ModelKind::QuadNormal;
    s.level1 = {truth[0], truth[1], truth[2]};
    s.truncated = true;
    specs.push_back(s);
    FitSpec alt;
    alt.model = s.model == ModelKind::QuadBeta ? ModelKind::QuadNormal : ModelKind::QuadBeta;
    alt.truncated = true;
    specs.push_back(alt);
    for (ModelKind m : {ModelKind::BivExclude, ModelKind::BivITD}) {
      FitSpec b;
      b.model = m;
      b.bivariate_margin = parse_margin_kind(config.truth_margin);
      specs.push_back(b);
    }
    return specs;
  }
  if (models.empty()) models = {"quad-beta"};
  if (copulas.empty()) copulas = {"bvn,bvn,bvn"};

  for (const auto& mtok : models) {
    for (const auto& m1 : split(mtok, ',')) {
      const ModelKind model = parse_model(m1);
      for (const auto& ctok : copulas) {
        const auto fam = parse_families(ctok);
        FitSpec s;
        s.model = model;
        s.bivariate_margin = biv_margin;
        if (is_bivariate(model)) {
          if (fam.empty()) throw DomainError("--copulas needs at least one family");
          s.level1[0] = fam[0];
          const bool dup = std::any_of(specs.begin(), specs.end(), [&](const FitSpec& o) {
            return o.model == s.model && o.level1[0] == s.level1[0];
          });
          if (!dup) specs.push_back(s);
          continue;
        }
        if (fam.size() != 3 && fam.size() != 6) {
          throw DomainError("--copulas needs three (level 1) or six families, got '" + ctok + "'");
        }
        s.level1 = {fam[0], fam[1], fam[2]};
        if (fam.size() == 6) {
          if (config.truncate) throw DomainError("--truncate conflicts with six pair-copula families");
          s.upper = {fam[3], fam[4], fam[5]};
        }
        s.truncated = config.truncate;
        specs.push_back(s);
      }
    }
  }
  return specs;
}

FitOptions fit_options(const RunConfig& config) {
  FitOptions o;
  o.nq = config.nq;
  o.max_iter = config.max_iter;
  o.compute_se = config.standard_errors;
  if (!config.start_tau.empty()) {
    for (const auto& tok : split(config.start_tau, ',')) {
      const std::string t = trim(tok);
      if (t.empty()) {
        o.start_tau.emplace_back();
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != t.size()) throw DomainError("--start-tau: '" + t + "' is not a number");
      o.start_tau.emplace_back(v);
    }
    if (o.start_tau.size() > 6) throw DomainError("--start-tau takes at most six values");
  }
  return o;
}

SimDesign sim_design(const RunConfig& config) {
  SimDesign d;
  d.n_studies = config.studies;
  d.replications = config.replications;
  d.seed = config.seed;
  d.margin = parse_margin_kind(config.truth_margin);
  if (config.truth_pi.size() != 4 || config.truth_disp.size() != 4 || config.truth_tau.size() != 3) {
    throw DomainError("the simulation truth needs four pi, four dispersions and three taus");
  }
  const auto fam = parse_families(config.truth_copulas);
  if (fam.size() != 3) throw DomainError("--truth-copulas needs three families");
  std::copy(config.truth_pi.begin(), config.truth_pi.end(), d.truth.pi.begin());
  std::copy(config.truth_disp.begin(), config.truth_disp.end(), d.truth.disp.begin());
  std::array<CopulaSpec, 3> level1;
  for (int k = 0; k < 3; ++k) {
    level1[k] = {fam[k], fam[k].kind == CopulaKind::Independence ? 0.0 : copula::tau_to_theta(fam[k], config.truth_tau[k])};
  }
  d.truth.vine = DVineSpec::truncated_vine(level1);
  validate(d);
  return d;
}

std::string fit_json(const std::vector<FitResult>& fits, const RunConfig& config) {
  Json doc;
  doc["input"] = config.input;
  doc["nq"] = config.nq;
  Json arr = Json::array();
  for (const auto& f : fits) arr.push_back(to_json(f));
  doc["fits"] = arr;
  Json rank = Json::array();
  for (std::size_t i : aic_ranking(fits)) rank.push_back({{"index", i}, {"label", fits[i].spec.label()}, {"aic", fits[i].aic}});
  doc["aic_ranking"] = rank;
  doc["all_converged"] = all_converged(fits);
  return doc.dump(2) + "\n";
}

std::vector<FitResult> fits_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("fit document: ") + e.what());
  }
  std::vector<FitResult> out;
  try {
    for (const auto& f : doc.at("fits")) out.push_back(from_json(f));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("fit document: ") + e.what());
  }
  return out;
}

std::string fit_table(const std::vector<FitResult>& fits) {
  static const char* order[] = {"pi1",    "pi2",    "pi3",    "pi4",    "sigma1", "sigma2",   "sigma3",   "sigma4",
                                "gamma1", "gamma2", "gamma3", "gamma4", "tau12",  "tau23",    "tau34",    "tau13|2",
                                "tau24|3", "tau14|23"};
  constexpr int w0 = 10, w = 20;
  std::ostringstream os;
  const auto cell = [&](const std::string& s) { os << std::setw(w) << s; };
  os << std::left << std::setw(w0) << "" << std::right;
  for (const auto& f : fits) {
    std::string head = to_token(f.spec.model);
    if (is_bivariate(f.spec.model)) head += std::string(" ") + to_token(f.spec.margin());
    cell(head);
  }
  os << '\n' << std::left << std::setw(w0) << "" << std::right;
  for (const auto& f : fits) {
    std::string c = f.spec.copulas();
    const auto pos = c.find(" (truncated)");
    if (pos != std::string::npos) c = c.substr(0, pos) + " [t]";
    if (c.size() > w - 1) c = c.substr(0, w - 2) + "~";
    cell(c);
  }
  os << '\n';
  for (const char* name : order) {
    const bool any = std::any_of(fits.begin(), fits.end(), [&](const FitResult& f) {
      return std::find(f.names.begin(), f.names.end(), name) != f.names.end();
    });
    if (!any) continue;
    os << std::left << std::setw(w0) << name << std::right;
    for (const auto& f : fits) {
      const double v = f.value(name);
      if (!std::isfinite(v)) {
        cell("-");
        continue;
      }
      const double se = f.stderr_of(name);
      cell(fixed(v, 3) + (std::isfinite(se) ? " (" + fixed(se, 3) + ")" : std::string()));
    }
    os << '\n';
  }
  os << std::left << std::setw(w0) << "loglik" << std::right;
  for (const auto& f : fits) cell(fixed(f.loglik, 2));
  os << '\n' << std::left << std::setw(w0) << "#par" << std::right;
  for (const auto& f : fits) cell(std::to_string(f.n_params));
  os << '\n' << std::left << std::setw(w0) << "AIC" << std::right;
  for (const auto& f : fits) cell(fixed(f.aic, 2));
  os << '\n' << std::left << std::setw(w0) << "converged" << std::right;
  for (const auto& f : fits) cell(f.converged ? (f.truncated && !f.spec.truncated ? "yes (truncated)" : "yes") : "NO");
  os << '\n';
  if (fits.size() > 1) {
    os << "\nAIC ranking:\n";
    int rank = 1;
    for (std::size_t i : aic_ranking(fits)) {
      os << "  " << rank++ << ". " << fits[i].spec.label() << "  AIC " << fixed(fits[i].aic, 2)
         << (fits[i].converged ? "" : "  (not converged)") << '\n';
    }
  }
  return os.str();
}

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  if (config.input.empty()) throw DomainError("fit needs --input");
  apply_threads(config.threads);
  const Dataset data = read_dataset(config.input);
  const auto fits = fit_all(data.studies, config, err);
  ensure_directory(config.output);
  write_file(fs::path(config.output) / "fit.json", fit_json(fits, config));
  const std::string table = fit_table(fits);
  write_file(fs::path(config.output) / "fit.txt", table);
  out << table;
  return all_converged(fits) ? 0 : 2;
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  apply_threads(config.threads);
  const SimDesign design = sim_design(config);
  const auto specs = fit_specs(config);
  ensure_directory(config.output);
  if (config.export_datasets) {
    const fs::path dir = fs::path(config.output) / "datasets";
    ensure_directory(dir.string());
    for (std::size_t rep = 0; rep < design.replications; ++rep) {
      char name[32];
      std::snprintf(name, sizeof name, "rep_%04zu.csv", rep + 1);
      std::ostringstream os;
      write_dataset(os, generate_dataset(design, rep));
      write_file(dir / name, os.str());
    }
  }
  std::size_t step = std::max<std::size_t>(1, design.replications / 10);
  const auto result = run_simulation_study(design, specs, fit_options(config), [&](std::size_t done, std::size_t total) {
    if (done % step == 0 || done == total) err << "replicate " << done << "/" << total << '\n';
  });

  std::ostringstream summary;
  write_summary_csv(summary, result.summaries);
  write_file(fs::path(config.output) / "sim_summary.csv", summary.str());

  // Per-replicate estimates, for inspection.
  std::ostringstream per;
  per << "spec,replicate,converged,parameter,estimate,se\n";
  for (std::size_t k = 0; k < specs.size(); ++k) {
    for (std::size_t rep = 0; rep < result.fits[k].size(); ++rep) {
      const auto& f = result.fits[k][rep];
      for (std::size_t i = 0; i < f.names.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g,", f.values[i]);
        per << '"' << specs[k].label() << "\"," << rep + 1 << ',' << (f.converged ? 1 : 0) << ',' << f.names[i] << ','
            << buf;
        if (i < f.se.size() && std::isfinite(f.se[i])) {
          std::snprintf(buf, sizeof buf, "%.10g", f.se[i]);
          per << buf;
        }
        per << '\n';
      }
    }
  }
  write_file(fs::path(config.output) / "sim_fits.csv", per.str());

  out << summary.str();
  for (const auto& s : result.summaries) {
    if (s.converged < s.replications) {
      err << "note: " << s.spec.label() << ": " << s.replications - s.converged << " of " << s.replications
          << " replicates did not converge and were excluded\n";
    }
  }
  return 0;
}

int run_sroc(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate(config);
  if (config.input.empty()) throw DomainError("sroc needs --input (the study data)");
  apply_threads(config.threads);
  const Dataset data = read_dataset(config.input);
  std::vector<FitResult> fits;
  if (!config.fit_json.empty()) {
    std::ifstream f(config.fit_json);
    if (!f) throw DomainError("cannot open " + config.fit_json);
    std::stringstream ss;
    ss << f.rdbuf();
    fits = fits_from_json(ss.str());
    if (fits.empty()) throw DomainError("fit document holds no fits");
  } else {
    fits = fit_all(data.studies, config, err);
  }
  // Best converged fit by AIC; the best overall if none converged.
  std::size_t best = aic_ranking(fits).front();
  for (std::size_t i : aic_ranking(fits)) {
    if (fits[i].converged) {
      best = i;
      break;
    }
  }
  const FitResult& chosen = fits[best];

  std::vector<SrocCurve> curves;
  for (SrocDirection dir : {SrocDirection::X1givenX2, SrocDirection::X2givenX1}) {
    for (double q : config.q_levels) curves.push_back(sroc_curve(chosen, q, dir, config.grid));
  }
  std::vector<StudyPoints> points = {study_points(data, StudyPointDefinition::Classic),
                                     study_points(data, StudyPointDefinition::Simel)};
  for (const auto& p : points) {
    for (const auto& w : p.warnings) err << "warning: " << w << '\n';
  }
  ensure_directory(config.output);
  std::ostringstream c, p;
  write_curves_csv(c, curves);
  write_points_csv(p, summary_point(chosen), points);
  write_file(fs::path(config.output) / "sroc_curves.csv", c.str());
  write_file(fs::path(config.output) / "sroc_points.csv", p.str());
  const RocPoint sp = summary_point(chosen);
  out << "SROC from " << chosen.spec.label() << "\nsummary point: fpr " << fixed(sp.fpr, 4) << ", sens "
      << fixed(sp.sens, 4) << '\n';
  return chosen.converged ? 0 : 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Multinomial quadrivariate D-vine copula mixed model for diagnostic meta-analysis"};
  app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  auto* fit_cmd = app.add_subcommand("fit", "Fit models to a dataset and rank them by AIC")->fallthrough();
  auto* sim_cmd = app.add_subcommand("simulate", "Simulation study: generate, fit and summarise")->fallthrough();
  auto* sroc_cmd = app.add_subcommand("sroc", "SROC quantile curves, summary point and study points")->fallthrough();

  app.add_option("--input,-i", c.input, "Study CSV: study_id,tn,fp,ne_neg,fn,tp,ne_pos");
  app.add_option("--output,-o", c.output, "Output directory")->capture_default_str();
  app.add_option("--model", c.models, "quad-normal|quad-beta|biv-exclude|biv-itd (repeatable or comma list)");
  app.add_option("--margin", c.margin, "Margins of the bivariate models: beta|normal")->capture_default_str();
  app.add_option("--copulas", c.copulas,
                 "c12,c23,c34[,c13.2,c24.3,c14.23] from indep|bvn|frank|cln0|cln90|cln180|cln270 (repeatable); "
                 "upper levels default to bvn");
  app.add_flag("--truncate", c.truncate, "Independence above level 1");
  app.add_option("--nq", c.nq, "Gauss-Legendre nodes per dimension")->capture_default_str();
  app.add_option("--seed", c.seed, "Simulation seed")->capture_default_str();
  app.add_option("--reps", c.replications, "Simulation replications")->capture_default_str();
  app.add_option("--studies", c.studies, "Studies per simulated dataset")->capture_default_str();
  app.add_option("--q-levels", c.q_levels, "SROC quantile levels")->delimiter(',')->capture_default_str();
  app.add_option("--grid", c.grid, "SROC grid size")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (default: VINEMETA_THREADS or all processors)");
  app.add_option("--start-tau", c.start_tau, "Starting Kendall's tau per pair, e.g. 0.5,,-0.3");
  app.add_flag("!--no-se", c.standard_errors, "Skip standard errors");
  app.add_option("--max-iter", c.max_iter, "Optimiser iteration limit")->capture_default_str();
  app.add_option("--fit", c.fit_json, "sroc: fit document written by the fit subcommand");
  app.add_flag("--export-datasets", c.export_datasets, "simulate: also write every replicate as CSV");
  app.add_option("--truth-margin", c.truth_margin, "simulate: generating margins beta|normal")->capture_default_str();
  app.add_option("--truth-pi", c.truth_pi, "simulate: pi1..pi4")->delimiter(',')->capture_default_str();
  app.add_option("--truth-disp", c.truth_disp, "simulate: dispersions 1..4")->delimiter(',')->capture_default_str();
  app.add_option("--truth-tau", c.truth_tau, "simulate: tau12,tau23,tau34")->delimiter(',')->capture_default_str();
  app.add_option("--truth-copulas", c.truth_copulas, "simulate: level-1 families (truncated vine)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (fit_cmd->parsed()) c.subcommand = Subcommand::Fit;
  if (sim_cmd->parsed()) c.subcommand = Subcommand::Simulate;
  if (sroc_cmd->parsed()) c.subcommand = Subcommand::Sroc;

  try {
    switch (c.subcommand) {
      case Subcommand::Fit: return run_fit(c, out, err);
      case Subcommand::Simulate: return run_simulate(c, out, err);
      case Subcommand::Sroc: return run_sroc(c, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace vinemeta::cli
