// tripent: batch front end for the triplet-entanglement library.
//
// Exit codes: 0 success, 1 computation-domain error, 2 input/config error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tripent/config.hpp"
#include "tripent/csv.hpp"
#include "tripent/error.hpp"
#include "tripent/report.hpp"
#include "tripent/sampling_sim.hpp"
#include "tripent/spdc.hpp"
#include "tripent/triple_gaussian.hpp"
#include "tripent/witness.hpp"

namespace fs = std::filesystem;
using namespace tripent;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

Vec3 to_vec3(const std::vector<double>& v, const char* name) {
  if (v.size() != 3) throw UsageError(std::string(name) + " needs exactly three comma-separated values");
  return {v[0], v[1], v[2]};
}

json config_json(const SpdcConfig& c) {
  json j = {{"lambda_p", c.lambda_p}, {"L_z", c.L_z},       {"sigma_p", c.sigma_p},   {"n_p", c.n_p},
            {"n_1", c.n_1},           {"n_2", c.n_2},       {"n_3", c.n_3},           {"ng_p", c.ng_p},
            {"ng_1", c.ng_1},         {"ng_2", c.ng_2},     {"ng_3", c.ng_3},         {"chi3_eff", c.chi3_eff},
            {"kappa0", c.kappa0},     {"pump_power", c.pump_power}};
  j["qpm_order"] = c.qpm_order ? json(*c.qpm_order) : json(nullptr);
  j["qpm_period"] = c.qpm_period ? json(*c.qpm_period) : json(nullptr);
  j["pump_bandwidth"] = c.pump_bandwidth ? json(*c.pump_bandwidth) : json(nullptr);
  return j;
}

// ---- e3f --------------------------------------------------------------------

struct E3fArgs {
  double sigma_u = 1.0;
  double sigma_v = 1.0;
  bool as_json = false;
  std::string out;
};

int cmd_e3f(const E3fArgs& a) {
  const auto s = TripleGaussianState::symmetric(a.sigma_u, a.sigma_v);
  const auto coeffs = WitnessCoefficients::triplet_default();
  EntanglementReport r;
  r.exact_e3f_gebits = exact_e3f(s);
  r.entropy_x_bits = gaussian_differential_entropy(linear_combination_sd(s, coeffs.eta));
  r.entropy_k_bits = gaussian_differential_entropy(linear_combination_sd(to_momentum(s), coeffs.beta));
  r.set_witness(continuous_witness(coeffs, r.entropy_x_bits, r.entropy_k_bits));
  r.inputs = {{"command", "e3f"},
              {"sigma_u", a.sigma_u},
              {"sigma_v", a.sigma_v},
              {"sigma_w", a.sigma_v},
              {"eta", coeffs.eta},
              {"beta", coeffs.beta},
              {"min_product_convention", kMinProductConvention},
              {"witness_source", "exact Gaussian entropies"}};
  if (a.as_json || !a.out.empty()) {
    emit(serialize_report(r), a.out);
  }
  if (!a.as_json) std::cout << fmt(*r.exact_e3f_gebits) << '\n';
  return 0;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  double sigma_p_min = 0.0;
  double sigma_p_max = 0.0;
  std::size_t points = 200;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  const SpdcConfig c = load_spdc_config(a.config);
  const auto rows = witness_sweep(c, {a.sigma_p_min, a.sigma_p_max, a.points});
  emit(format_sweep_csv(rows), a.out);
  if (!a.out.empty()) {
    std::cerr << "sweep: " << rows.size() << " rows, final witness - exact = "
              << fmt(rows.back().witness_gebits - rows.back().exact_gebits) << " gebits\n";
  }
  return 0;
}

// ---- rate -------------------------------------------------------------------

struct RateArgs {
  std::string config;
  std::optional<int> qpm_order;
  std::optional<double> pump_power;
  std::optional<double> length;
  bool as_json = false;
  std::string out;
};

int cmd_rate(const RateArgs& a) {
  SpdcConfig c = load_spdc_config(a.config);
  if (a.qpm_order) c.qpm_order = *a.qpm_order;
  if (a.pump_power) c.pump_power = *a.pump_power;
  if (a.length) c.L_z = *a.length;
  c.validate();

  const double per_second = triplet_rate(c);
  const double constant = rate_constant(c);
  json j = {{"inputs", {{"command", "rate"}, {"config_file", a.config}, {"config", config_json(c)}}},
            {"rate_constant_per_m_W_s", constant},
            {"triplets_per_second", per_second},
            {"triplets_per_minute", 60.0 * per_second},
            {"qpm_penalty", c.qpm_order ? qpm_penalty(*c.qpm_order) : 1.0},
            {"tool_version", tool_version()}};
  if (a.as_json || !a.out.empty()) emit(serialize_json(j), a.out);
  if (!a.as_json) {
    std::cout << "rate_constant " << fmt(constant) << " /(m W s)\n"
              << "triplets_per_second " << fmt(per_second) << '\n'
              << "triplets_per_minute " << fmt(60.0 * per_second) << '\n';
  }
  return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::optional<double> sigma_u;
  std::optional<double> sigma_v;
  std::string config;
  std::vector<double> eta{1.0, -0.5, -0.5};
  std::vector<double> beta{1.0, 1.0, 1.0};
  ScanSettings scan;
  std::string out_dir;
};

int cmd_simulate(const SimulateArgs& a) {
  std::optional<TripleGaussianState> state;
  json source;
  if (!a.config.empty()) {
    if (a.sigma_u || a.sigma_v) throw UsageError("simulate: give either --config or --sigma-u/--sigma-v, not both");
    const SpdcConfig c = load_spdc_config(a.config);
    state = gaussian_fit_position_widths(c);
    source = {{"config_file", a.config}, {"config", config_json(c)}};
  } else {
    if (!a.sigma_u || !a.sigma_v) throw UsageError("simulate: --sigma-u and --sigma-v (or --config) are required");
    state = TripleGaussianState::symmetric(*a.sigma_u, *a.sigma_v);
  }
  const WitnessCoefficients coeffs{to_vec3(a.eta, "--eta"), to_vec3(a.beta, "--beta")};

  auto run = run_end_to_end(*state, coeffs, a.scan);
  run.report.inputs["command"] = "simulate";
  if (!source.is_null()) run.report.inputs["source"] = source;

  const std::string text = serialize_report(run.report);
  if (a.out_dir.empty()) {
    std::cout << text;
    return 0;
  }
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  write_file_atomic(dir / "report.json", text);
  write_file_atomic(dir / "position_tree.csv", format_tree_records(run.position_tree));
  write_file_atomic(dir / "momentum_tree.csv", format_tree_records(run.momentum_tree));
  std::cout << "witness_gebits " << fmt(run.report.witness_gebits) << '\n'
            << "certified_gebits " << fmt(run.report.certified_gebits) << '\n';
  if (run.report.exact_e3f_gebits) std::cout << "exact_e3f_gebits " << fmt(*run.report.exact_e3f_gebits) << '\n';
  std::cout << "wrote " << (dir / "report.json").string() << '\n';
  return 0;
}

// ---- validate ---------------------------------------------------------------

struct ValidateArgs {
  std::size_t dim = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_validate(const ValidateArgs& a) {
  const auto r = verify_correlation_relation(a.dim, a.trials, a.seed);
  const json j = {{"inputs", {{"command", "validate"}, {"dim", a.dim}, {"trials", a.trials}, {"seed", a.seed}}},
                  {"max_violation", r.max_violation},
                  {"mean_mutual_information", r.mean_mutual_information},
                  {"mean_entanglement", r.mean_entanglement},
                  {"violations_above_tolerance", r.violations_above_tolerance},
                  {"tolerance", 1e-9},
                  {"tool_version", tool_version()}};
  emit(serialize_json(j), a.out);
  return r.violations_above_tolerance == 0 ? 0 : 1;
}

// ---- witness ----------------------------------------------------------------

struct WitnessArgs {
  std::string x_samples;
  std::string k_samples;
  std::vector<double> eta{1.0, -0.5, -0.5};
  std::vector<double> beta{1.0, 1.0, 1.0};
  std::optional<double> bin_width_x;
  std::optional<double> bin_width_k;
  double bin_fraction = 0.1;
  bool optimize = false;
  std::size_t bootstrap = 64;
  std::uint64_t seed = 0x5EED;
  std::string out;
};

int cmd_witness(const WitnessArgs& a) {
  const auto x = load_samples_csv(a.x_samples);
  const auto k = load_samples_csv(a.k_samples);
  if (x.basis != Basis::position) throw InputError(a.x_samples + ": expected an x1,x2,x3 header");
  if (k.basis != Basis::momentum) throw InputError(a.k_samples + ": expected a k1,k2,k3 header");

  WitnessCoefficients coeffs{to_vec3(a.eta, "--eta"), to_vec3(a.beta, "--beta")};
  json optimizer = nullptr;
  if (a.optimize) {
    OptimizerOptions opt;
    opt.bin_fraction = a.bin_fraction;
    const auto res = optimize_coefficients(x.samples, k.samples, coeffs, opt);
    optimizer = {{"init_eta", coeffs.eta},
                 {"init_beta", coeffs.beta},
                 {"init_objective_gebits", res.init_witness_gebits},
                 {"objective_gebits", res.witness_gebits},
                 {"evaluations", res.evaluations},
                 {"warnings", res.warnings},
                 {"bin_fraction", opt.bin_fraction},
                 {"max_ratio", opt.max_ratio},
                 {"grid_points", opt.grid_points},
                 {"refinement_sweeps", opt.refinement_sweeps}};
    coeffs = res.coefficients;
  }

  // Unset widths default to bin_fraction x the sample sd of each combination.
  auto default_width = [&](const SampleSet& s, const Vec3& c) {
    const auto values = project(s, c);
    double mean = 0.0, ss = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    if (!(sd > 0.0)) throw DomainError("witness: zero spread in a linear combination; give an explicit bin width");
    return a.bin_fraction * sd;
  };
  const double wx = a.bin_width_x ? *a.bin_width_x : default_width(x.samples, coeffs.eta);
  const double wk = a.bin_width_k ? *a.bin_width_k : default_width(k.samples, coeffs.beta);

  auto report = witness_from_samples(x.samples, k.samples, coeffs, wx, wk, {a.bootstrap, a.seed});
  report.inputs["command"] = "witness";
  report.inputs["x_samples_file"] = a.x_samples;
  report.inputs["k_samples_file"] = a.k_samples;
  report.inputs["bin_width_rule"] = (a.bin_width_x && a.bin_width_k) ? "user" : "bin_fraction * sample sd";
  report.inputs["bin_fraction"] = a.bin_fraction;
  report.inputs["optimizer"] = optimizer;
  emit(serialize_report(report), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tripartite entanglement of photon triplets: exact values, witnesses, SPDC models, scan simulation"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  E3fArgs e3f;
  auto* c_e3f = app.add_subcommand("e3f", "Exact E3F of a symmetric triple-Gaussian state");
  c_e3f->add_option("--sigma-u", e3f.sigma_u, "width along (x1+x2+x3)/sqrt(3), m")->required()->check(CLI::PositiveNumber);
  c_e3f->add_option("--sigma-v", e3f.sigma_v, "width of the two relative coordinates, m")->required()->check(CLI::PositiveNumber);
  c_e3f->add_flag("--json", e3f.as_json, "print the full JSON report");
  c_e3f->add_option("--out", e3f.out, "write the JSON report to this file");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Closed-form witness and exact E3F versus pump radius (CSV)");
  c_sweep->add_option("--config", sweep.config, "SPDC config file")->required();
  c_sweep->add_option("--sigma-p-min", sweep.sigma_p_min, "m")->required();
  c_sweep->add_option("--sigma-p-max", sweep.sigma_p_max, "m")->required();
  c_sweep->add_option("--points", sweep.points, "log-spaced points")->capture_default_str();
  c_sweep->add_option("--out", sweep.out, "CSV output path (stdout if omitted)");

  RateArgs rate;
  auto* c_rate = app.add_subcommand("rate", "Triplet generation rate");
  c_rate->add_option("--config", rate.config, "SPDC config file")->required();
  c_rate->add_option("--qpm-order", rate.qpm_order, "override the quasi-phase-matching order");
  c_rate->add_option("--pump-power", rate.pump_power, "override pump power, W");
  c_rate->add_option("--length", rate.length, "override medium length L_z, m");
  c_rate->add_flag("--json", rate.as_json, "print JSON");
  c_rate->add_option("--out", rate.out, "write JSON to this file");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulated adaptive coincidence scans and the resulting witness");
  c_sim->add_option("--sigma-u", sim.sigma_u, "m")->check(CLI::PositiveNumber);
  c_sim->add_option("--sigma-v", sim.sigma_v, "m")->check(CLI::PositiveNumber);
  c_sim->add_option("--config", sim.config, "SPDC config; uses the Gaussian-fit position widths");
  c_sim->add_option("--eta", sim.eta, "position coefficients")->delimiter(',')->capture_default_str();
  c_sim->add_option("--beta", sim.beta, "momentum coefficients")->delimiter(',')->capture_default_str();
  c_sim->add_option("--n", sim.scan.n_samples, "triplets per scan")->capture_default_str();
  c_sim->add_option("--threshold", sim.scan.threshold, "refinement count threshold (0: max(16, n/4096))")
      ->capture_default_str();
  c_sim->add_option("--depth", sim.scan.max_depth, "maximum refinement depth")->capture_default_str();
  c_sim->add_option("--seed", sim.scan.seed, "RNG seed")->capture_default_str();
  c_sim->add_option("--bootstrap", sim.scan.bootstrap_replicates, "bootstrap replicates")->capture_default_str();
  c_sim->add_option("--out", sim.out_dir, "output directory for report.json and tree CSVs");

  ValidateArgs val;
  auto* c_val = app.add_subcommand("validate", "Check the entanglement-correlation relation on random pure states");
  c_val->add_option("--dim", val.dim, "local dimension (2..8)")->capture_default_str();
  c_val->add_option("--trials", val.trials)->capture_default_str();
  c_val->add_option("--seed", val.seed)->capture_default_str();
  c_val->add_option("--out", val.out, "write JSON to this file");

  WitnessArgs wit;
  auto* c_wit = app.add_subcommand("witness", "Witness from position and momentum sample CSVs");
  c_wit->add_option("--x-samples", wit.x_samples, "CSV with x1,x2,x3 header")->required();
  c_wit->add_option("--k-samples", wit.k_samples, "CSV with k1,k2,k3 header")->required();
  c_wit->add_option("--eta", wit.eta)->delimiter(',')->capture_default_str();
  c_wit->add_option("--beta", wit.beta)->delimiter(',')->capture_default_str();
  c_wit->add_option("--bin-width-x", wit.bin_width_x, "m")->check(CLI::PositiveNumber);
  c_wit->add_option("--bin-width-k", wit.bin_width_k, "rad/m")->check(CLI::PositiveNumber);
  c_wit->add_option("--bin-fraction", wit.bin_fraction, "default bin width as a fraction of the sample sd")
      ->capture_default_str();
  c_wit->add_flag("--optimize", wit.optimize, "search eta/beta to maximize the witness");
  c_wit->add_option("--bootstrap", wit.bootstrap)->capture_default_str();
  c_wit->add_option("--seed", wit.seed)->capture_default_str();
  c_wit->add_option("--out", wit.out, "write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_e3f->parsed()) return cmd_e3f(e3f);
    if (c_sweep->parsed()) return cmd_sweep(sweep);
    if (c_rate->parsed()) return cmd_rate(rate);
    if (c_sim->parsed()) return cmd_simulate(sim);
    if (c_val->parsed()) return cmd_validate(val);
    if (c_wit->parsed()) return cmd_witness(wit);
  } catch (const std::invalid_argument& e) {  // usage and validation errors
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
