#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/random.hpp"
#include "entmono/report.hpp"
#include "entmono/state_io.hpp"
#include "entmono/telesim.hpp"

namespace entmono::cli {

namespace {

std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string render_rows(const RunConfig& cfg, const std::vector<CounterexampleRow>& rows) {
  switch (cfg.format) {
    case OutputFormat::Csv: return counterexample_csv(rows);
    case OutputFormat::Json: return counterexample_json(rows);
    case OutputFormat::Table: break;
  }
  return counterexample_table(rows);
}

// Writes `text` to --out when given, else to `out`. Returns false on I/O error.
bool emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (!cfg.output_path) {
    out << text;
    return true;
  }
  std::ofstream file(*cfg.output_path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write " << cfg.output_path->string() << '\n';
    return false;
  }
  out << "wrote " << cfg.output_path->string() << '\n';
  return true;
}

bool any_error(const std::vector<CounterexampleRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.error.has_value(); });
}

bool valid_config(const RunConfig& cfg, std::ostream& err) {
  if (cfg.restarts < 1) {
    err << "error: --restarts must be positive\n";
    return false;
  }
  if (!(cfg.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return false;
  }
  return true;
}

}  // namespace

const std::vector<double>& reproduce_grid() {
  static const std::vector<double> grid = {0.15, 0.2,  0.3, 5.0 / 12.0, 0.5,
                                           0.6,  0.75, 0.9, 0.99,       1.0};
  return grid;
}

int cmd_reproduce_paper(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!valid_config(cfg, err)) return kExitUsage;
  const auto rows = gamma_sweep(reproduce_grid(), cfg.restarts, cfg.seed, cfg.tol);
  if (!emit(cfg, render_rows(cfg, rows), out, err)) return kExitData;
  if (any_error(rows)) {
    err << "error: optimizer failed on at least one row\n";
    return kExitNumeric;
  }
  bool confirmed = true;
  for (const auto& r : rows) {
    if (r.gamma >= 0.5 && r.gamma < 1.0 && !r.fef_violated) confirmed = false;
    if (r.gamma == 1.0 && r.fef_violated) confirmed = false;
  }
  if (!confirmed) {
    err << "claims not confirmed: violation pattern differs from expectation\n";
    return kExitClaimsNotConfirmed;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, double gamma_min, double gamma_max, int steps,
              std::ostream& out, std::ostream& err) {
  if (!valid_config(cfg, err)) return kExitUsage;
  if (!(gamma_min >= 0.0 && gamma_max <= 1.0 && gamma_min <= gamma_max) || steps < 1) {
    err << "error: need 0 <= --gamma-min <= --gamma-max <= 1 and --steps >= 1\n";
    return kExitUsage;
  }
  std::vector<double> grid;
  for (int k = 0; k < steps; ++k) {
    grid.push_back(steps == 1 ? gamma_min
                              : gamma_min + (gamma_max - gamma_min) * k / (steps - 1));
  }
  const auto rows = gamma_sweep(grid, cfg.restarts, cfg.seed, cfg.tol);
  if (!emit(cfg, render_rows(cfg, rows), out, err)) return kExitData;
  return any_error(rows) ? kExitNumeric : kExitOk;
}

int cmd_check(const RunConfig& cfg, int qubits, int trials, std::ostream& out,
              std::ostream& err) {
  if (qubits < 3 || qubits > 5) {
    err << "error: --qubits must be 3, 4 or 5\n";
    return kExitUsage;
  }
  if (trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kExitUsage;
  }
  const Dims dims(static_cast<std::size_t>(qubits), 2);
  std::map<std::string, double> min_residual = {
      {"concurrence", std::numeric_limits<double>::infinity()},
      {"fef", std::numeric_limits<double>::infinity()},
      {"fidelity", std::numeric_limits<double>::infinity()}};
  std::map<std::string, int> violations = {{"concurrence", 0}, {"fef", 0}, {"fidelity", 0}};
  double max_affine_gap = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto psi = haar_pure(dims, derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const auto c = ckw_residual(psi);
    const auto f = fef_monogamy_residual(psi);
    const auto g = fidelity_monogamy_residual(psi);
    for (const auto* r : {&c, &f, &g}) {
      const std::string k(to_string(r->kind));
      min_residual[k] = std::min(min_residual[k], r->residual);
      if (!r->holds) ++violations[k];
    }
    max_affine_gap = std::max(max_affine_gap, std::abs(f.residual - g.residual));
  }
  const bool ok = violations["concurrence"] + violations["fef"] + violations["fidelity"] == 0;

  std::string text;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["qubits"] = qubits;
    doc["trials"] = trials;
    doc["seed"] = cfg.seed;
    for (const auto& [k, v] : min_residual) doc["min_residual"][k] = v;
    for (const auto& [k, v] : violations) doc["violations"][k] = v;
    doc["max_fef_fidelity_residual_gap"] = max_affine_gap;
    doc["holds"] = ok;
    text = doc.dump(2) + "\n";
  } else if (cfg.format == OutputFormat::Csv) {
    std::ostringstream s;
    s << "kind,min_residual,violations\n";
    for (const auto& [k, v] : min_residual) {
      s << k << ',' << format_full(v) << ',' << violations[k] << '\n';
    }
    text = s.str();
  } else {
    std::ostringstream s;
    s << "qubits " << qubits << ", trials " << trials << ", seed " << cfg.seed << '\n';
    for (const auto& [k, v] : min_residual) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-12s min residual % .3e  violations %d\n", k.c_str(),
                    v, violations[k]);
      s << line;
    }
    char line[128];
    std::snprintf(line, sizeof line, "  max |fef - fidelity residual| %.3e\n", max_affine_gap);
    s << line << (ok ? "all monogamy inequalities hold\n" : "VIOLATION found\n");
    text = s.str();
  }
  if (!emit(cfg, text, out, err)) return kExitData;
  return ok ? kExitOk : kExitClaimsNotConfirmed;
}

int cmd_fef(const RunConfig& cfg, const std::filesystem::path& state_file,
            const std::optional<Dims>& dims, std::ostream& out, std::ostream& err) {
  if (!valid_config(cfg, err)) return kExitUsage;
  const AnyState state = read_state_file(state_file);
  DensityOperator rho = as_density(state);

  Dims target;
  if (dims) {
    target = *dims;
  } else {
    target = {rho.dims()[0], rho.dimension() / std::max<std::size_t>(rho.dims()[0], 1)};
  }
  if (product(target) != rho.dimension()) {
    err << "error: --dims product " << product(target) << " does not match state dimension "
        << rho.dimension() << '\n';
    return kExitData;
  }
  if (target.size() != 2 || target[0] != 2 || target[1] < 2 || target[1] > 4) {
    err << "error: fef needs a 2 x d state with d in {2,3,4}\n";
    return kExitData;
  }
  rho = rho.with_dims(target);

  const auto result = fef_2xd(rho, FefOptions{cfg.restarts, cfg.tol, cfg.seed});
  std::optional<double> closed_two_qubit;
  if (target[1] == 2) closed_two_qubit = fef_two_qubit(rho).value;
  std::optional<double> closed_pure;
  if (const auto* psi = std::get_if<PureState>(&state)) {
    closed_pure = fef_pure(psi->with_dims(target));
  }

  std::string text;
  if (cfg.format == OutputFormat::Table) {
    std::ostringstream s;
    s << "fef        " << fixed6(result.value) << '\n';
    s << "fidelity   " << fixed6(fidelity_from_fef(result.value)) << '\n';
    s << "restarts   " << result.restarts_used << '\n';
    s << "iterations " << result.iterations << '\n';
    s << "converged  " << (result.converged ? "true" : "false") << '\n';
    if (closed_two_qubit) s << "two-qubit closed form " << fixed6(*closed_two_qubit) << '\n';
    if (closed_pure) s << "pure-state closed form " << fixed6(*closed_pure) << '\n';
    text = s.str();
  } else if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["dims"] = target;
    doc["fef"] = result.value;
    doc["fidelity"] = fidelity_from_fef(result.value);
    doc["restarts"] = result.restarts_used;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["two_qubit_closed_form"] =
        closed_two_qubit ? nlohmann::ordered_json(*closed_two_qubit) : nullptr;
    doc["pure_closed_form"] = closed_pure ? nlohmann::ordered_json(*closed_pure) : nullptr;
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream s;
    s << "fef,fidelity,restarts,iterations,converged,two_qubit_closed_form,pure_closed_form\n";
    s << format_full(result.value) << ',' << format_full(fidelity_from_fef(result.value)) << ','
      << result.restarts_used << ',' << result.iterations << ','
      << (result.converged ? "true" : "false") << ','
      << (closed_two_qubit ? format_full(*closed_two_qubit) : "") << ','
      << (closed_pure ? format_full(*closed_pure) : "") << '\n';
    text = s.str();
  }
  return emit(cfg, text, out, err) ? kExitOk : kExitData;
}

int cmd_telesim(const RunConfig& cfg, double gamma, long long samples, std::ostream& out,
                std::ostream& err) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    err << "error: --gamma must lie in [0,1]\n";
    return kExitUsage;
  }
  if (samples < 100) {
    err << "error: --samples must be at least 100\n";
    return kExitUsage;
  }
  const auto channel = build_channel(sigma_gamma_pair(SigmaGammaParams(gamma), PartyPair::P13));
  const auto est =
      mc_average_fidelity(channel, static_cast<std::size_t>(samples), cfg.seed);

  std::string text;
  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["gamma"] = gamma;
    doc["samples"] = est.samples;
    doc["seed"] = est.seed;
    doc["mc_mean"] = est.mc_mean;
    doc["mc_std_err"] = est.mc_std_err;
    doc["exact_value"] = est.exact_value;
    doc["consistent"] = est.consistent();
    text = doc.dump(2) + "\n";
  } else if (cfg.format == OutputFormat::Csv) {
    text = "gamma,samples,seed,mc_mean,mc_std_err,exact_value,consistent\n" +
           format_full(gamma) + ',' + std::to_string(est.samples) + ',' +
           std::to_string(est.seed) + ',' + format_full(est.mc_mean) + ',' +
           format_full(est.mc_std_err) + ',' + format_full(est.exact_value) + ',' +
           (est.consistent() ? "true" : "false") + '\n';
  } else {
    std::ostringstream s;
    s << "gamma       " << fixed6(gamma) << '\n';
    s << "samples     " << est.samples << '\n';
    s << "mc_mean     " << fixed6(est.mc_mean) << '\n';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", est.mc_std_err);
    s << "mc_std_err  " << buf << '\n';
    s << "exact       " << fixed6(est.exact_value) << '\n';
    s << "consistent  " << (est.consistent() ? "true" : "false") << '\n';
    text = s.str();
  }
  if (!emit(cfg, text, out, err)) return kExitData;
  return est.consistent() ? kExitOk : kExitNumeric;
}

Dims parse_dims_list(const std::string& text) {
  Dims dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size() || v <= 0) throw std::invalid_argument("bad dimension '" + item + "'");
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims.empty()) throw std::invalid_argument("empty dims list");
  return dims;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement monogamy diagnostics: concurrence, fully entangled fraction, "
               "teleportation fidelity"};
  app.name("entmono");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "table";
  std::string out_path;
  auto common = [&](CLI::App* sub, bool optimizer) {
    sub->add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", out_path, "Write the output to this file");
    if (optimizer) {
      sub->add_option("--restarts", cfg.restarts, "Optimizer restarts")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      sub->add_option("--tol", cfg.tol, "Optimizer gain tolerance")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
    }
  };

  auto* reproduce = app.add_subcommand("reproduce-paper", "Counterexample table over a gamma grid");
  common(reproduce, true);

  double gmin = 0.0, gmax = 1.0;
  int steps = 21;
  auto* sweep = app.add_subcommand("sweep", "Counterexample rows on an evenly spaced gamma grid");
  common(sweep, true);
  sweep->add_option("--gamma-min", gmin)->required();
  sweep->add_option("--gamma-max", gmax)->required();
  sweep->add_option("--steps", steps)->capture_default_str();

  int qubits = 3, trials = 200;
  auto* check = app.add_subcommand("check", "Monogamy inequalities on Haar-random pure states");
  common(check, false);
  check->add_option("--qubits", qubits)->capture_default_str();
  check->add_option("--trials", trials)->capture_default_str();

  std::string state_path, dims_text;
  auto* fef = app.add_subcommand("fef", "Fully entangled fraction of a state file");
  common(fef, true);
  fef->add_option("--state", state_path, "JSON state file")->required();
  fef->add_option("--dims", dims_text, "Bipartition as 2,d (default: first subsystem vs rest)");

  double gamma = 0.9;
  long long samples = 100000;
  auto* telesim = app.add_subcommand("telesim", "Monte-Carlo teleportation fidelity");
  common(telesim, false);
  telesim->add_option("--gamma", gamma)->required();
  telesim->add_option("--samples", samples)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  cfg.format = format == "csv" ? OutputFormat::Csv
               : format == "json" ? OutputFormat::Json
                                  : OutputFormat::Table;
  if (!out_path.empty()) cfg.output_path = out_path;

  try {
    if (reproduce->parsed()) {
      cfg.command = "reproduce-paper";
      return cmd_reproduce_paper(cfg, out, err);
    }
    if (sweep->parsed()) {
      cfg.command = "sweep";
      return cmd_sweep(cfg, gmin, gmax, steps, out, err);
    }
    if (check->parsed()) {
      cfg.command = "check";
      return cmd_check(cfg, qubits, trials, out, err);
    }
    if (fef->parsed()) {
      cfg.command = "fef";
      std::optional<Dims> dims;
      if (!dims_text.empty()) {
        try {
          dims = parse_dims_list(dims_text);
        } catch (const std::exception& e) {
          err << "usage error: --dims: " << e.what() << '\n';
          return kExitUsage;
        }
      }
      return cmd_fef(cfg, state_path, dims, out, err);
    }
    if (telesim->parsed()) {
      cfg.command = "telesim";
      return cmd_telesim(cfg, gamma, samples, out, err);
    }
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ArgumentError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ShapeError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << " (best so far " << format_full(e.best_so_far())
        << ")\n";
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace entmono::cli
