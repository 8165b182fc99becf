// jcpure: scenario runner and verification harness.
//
//   jcpure simulate --config field_mixture.json --out field.csv
//   jcpure wigner   --config field_mixture.json --t 12.54 --out wigner.csv
//   jcpure verify   --config field_mixture.json
//
// Exit codes: 0 pass, 1 a verification check failed, 2 usage or configuration error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jcpure/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::string config_path;
  std::optional<std::string> scenario;
  std::optional<double> C, alpha_re, alpha_im, beta_re, beta_im, lambda, t_max;
  std::optional<std::size_t> steps, N;
  std::string out;
  unsigned threads = 0;
  bool print_config = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--scenario", o.scenario,
                  "field-mixture | atom-mixture | two-atom-bell | two-atom-field-entangled");
  cmd->add_option("--C", o.C, "mixture weight C in [0, 1]");
  cmd->add_option("--alpha-re", o.alpha_re);
  cmd->add_option("--alpha-im", o.alpha_im);
  cmd->add_option("--beta-re", o.beta_re);
  cmd->add_option("--beta-im", o.beta_im);
  cmd->add_option("--lambda", o.lambda, "atom-field coupling");
  cmd->add_option("--t-max", o.t_max, "last time on the grid");
  cmd->add_option("--steps", o.steps, "grid points, both endpoints included");
  cmd->add_option("--N", o.N, "Fock truncation (0 = automatic)");
  cmd->add_option("--out", o.out, "output file (default: standard output)");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--print-config", o.print_config, "print the effective configuration as JSON and exit");
}

jcpure::ScenarioConfig build_config(const Overrides& o) {
  jcpure::ScenarioConfig cfg;
  if (!o.config_path.empty()) cfg = jcpure::load_config(o.config_path);
  if (o.scenario) cfg.scenario = jcpure::parse_scenario_kind(*o.scenario);
  if (o.C) cfg.C = *o.C;
  if (o.alpha_re) cfg.alpha.real(*o.alpha_re);
  if (o.alpha_im) cfg.alpha.imag(*o.alpha_im);
  if (o.beta_re) cfg.beta.real(*o.beta_re);
  if (o.beta_im) cfg.beta.imag(*o.beta_im);
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.t_max) cfg.t_max = *o.t_max;
  if (o.steps) cfg.steps = *o.steps;
  if (o.N) cfg.N = *o.N;
  return jcpure::resolve(cfg);
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw jcpure::ConfigError("out", "cannot open " + path + " for writing");
  write(file);
}

int run_verify(const jcpure::ScenarioConfig& cfg, const Overrides& o, bool corrupt_mapping) {
  jcpure::VerifyOptions options;
  options.threads = o.threads;
  if (corrupt_mapping) std::swap(options.mapping[1], options.mapping[2]);

  const auto checks = jcpure::run_verify(cfg, options);
  std::cout << "jcpure verify: scenario " << jcpure::to_string(cfg.scenario) << ", N = " << cfg.N
            << ", steps = " << cfg.steps << "\n";
  const jcpure::CheckResult* first_failure = nullptr;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "  PASS  " : "  FAIL  ") << std::left << std::setw(24) << c.name
              << " worst = " << std::setw(12) << std::setprecision(4) << c.value << " limit = " << std::setw(10)
              << c.threshold << "  " << c.detail << "\n";
    if (!c.passed && first_failure == nullptr) first_failure = &c;
  }
  if (first_failure != nullptr) {
    std::cout << "verify FAILED: " << first_failure->name << "\n";
    return kExitCheckFailed;
  }
  std::cout << "verify passed (" << checks.size() << " checks)\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jaynes-Cummings dynamics with mixed initial states: entropies, purification and two-atom checks"};
  app.require_subcommand(1);

  Overrides sim, wig, ver;
  auto* simulate = app.add_subcommand("simulate", "entropy / inversion time series as CSV");
  add_common(simulate, sim);

  auto* wigner = app.add_subcommand("wigner", "Wigner function of the field on a phase-space grid as CSV");
  add_common(wigner, wig);
  std::optional<double> wigner_t;
  std::size_t resolution = 201;
  double extent = 8.0;
  std::optional<double> x_min, x_max, p_min, p_max;
  wigner->add_option("--t", wigner_t, "time (default 12.54 / lambda)");
  wigner->add_option("--res", resolution, "points per axis")->check(CLI::PositiveNumber);
  wigner->add_option("--extent", extent, "square grid [-extent, extent]^2")->check(CLI::PositiveNumber);
  wigner->add_option("--x-min", x_min);
  wigner->add_option("--x-max", x_max);
  wigner->add_option("--p-min", p_min);
  wigner->add_option("--p-max", p_max);

  auto* verify = app.add_subcommand("verify", "run the cross-model checks; exit 0 iff all pass");
  add_common(verify, ver);
  bool corrupt_mapping = false;
  verify->add_flag("--corrupt-mapping", corrupt_mapping, "swap A2/A3 in the two-atom relabelling (negative control)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*simulate) {
      const auto cfg = build_config(sim);
      if (sim.print_config) {
        std::cout << jcpure::to_json_string(cfg) << "\n";
        return kExitPass;
      }
      const auto rows = jcpure::simulate(cfg, sim.threads);
      emit(sim.out, [&](std::ostream& out) { jcpure::write_simulation_csv(out, cfg, rows); });
      return kExitPass;
    }
    if (*wigner) {
      const auto cfg = build_config(wig);
      if (wig.print_config) {
        std::cout << jcpure::to_json_string(cfg) << "\n";
        return kExitPass;
      }
      jcpure::WignerGridSpec spec;
      spec.x_min = x_min.value_or(-extent);
      spec.x_max = x_max.value_or(extent);
      spec.p_min = p_min.value_or(-extent);
      spec.p_max = p_max.value_or(extent);
      spec.resolution = resolution;
      spec.threads = wig.threads;
      const double t = wigner_t.value_or(12.54 / cfg.lambda);
      const auto grid = jcpure::run_wigner(cfg, t, spec);
      emit(wig.out, [&](std::ostream& out) { jcpure::write_wigner_csv(out, cfg, t, grid); });
      return kExitPass;
    }
    const auto cfg = build_config(ver);
    if (ver.print_config) {
      std::cout << jcpure::to_json_string(cfg) << "\n";
      return kExitPass;
    }
    return run_verify(cfg, ver, corrupt_mapping);
  } catch (const jcpure::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const jcpure::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
