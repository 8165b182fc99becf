#pragma once

// Scenario runner: configuration, time sweeps, CSV output and the cross-model
// verification suite behind the `jcpure` tool.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jcpure/entropy.hpp"
#include "jcpure/observables.hpp"
#include "jcpure/purification.hpp"
#include "jcpure/two_atom.hpp"

namespace jcpure {

enum class ScenarioKind { FieldMixture, AtomMixture, TwoAtomBell, TwoAtomFieldEntangled };

std::string_view to_string(ScenarioKind kind);
/// Throws ConfigError("scenario", ...) for unknown names.
ScenarioKind parse_scenario_kind(std::string_view name);

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::FieldMixture;
  double C = 0.5;
  complex alpha{4.0, 0.0};
  complex beta{-4.0, 0.0};
  double lambda = 1.0;
  double t_max = 30.0;
  std::size_t steps = 601;
  std::size_t N = 0;  // 0 picks the truncation automatically
  // Free frequencies. Recorded for completeness; they only contribute local
  // phases in the interaction picture and do not enter any output.
  double omega = 0.0;
  double omega_A = 0.0;
  double omega_a = 0.0;
  std::map<std::string, double> tolerances;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

/// Validated copy with N filled in.
ScenarioConfig resolve(ScenarioConfig cfg);

/// Flat JSON object using the field names above (alpha/beta split into _re/_im).
std::string to_json_string(const ScenarioConfig& cfg);
/// Values present in `text` override `base`. Throws ConfigError.
ScenarioConfig config_from_json(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});

/// Uniform grid of physical times, both endpoints included.
std::vector<double> time_grid(const ScenarioConfig& cfg);

/// Tolerance lookup with a default.
double tolerance(const ScenarioConfig& cfg, const std::string& key, double fallback);

/// Precomputed initial states for one resolved configuration. Immutable after
/// construction; branch evaluation at different times may run concurrently.
class ScenarioEngine {
 public:
  explicit ScenarioEngine(const ScenarioConfig& cfg);

  const ScenarioConfig& config() const noexcept { return cfg_; }
  std::size_t dim() const noexcept { return cfg_.N; }
  Scenario mixture() const noexcept;
  bool is_two_atom() const noexcept;

  /// Closed-form branches of the equivalent mixed-state problem.
  BranchSet mixed_branches(double lambda_t) const;
  /// Two-atom evolution relabelled onto the artificial atom.
  BranchSet two_atom_branches(double lambda_t, const BasisMap& map = default_basis_map()) const;
  /// The route that defines this scenario.
  BranchSet branches(double lambda_t) const;

  PurifiedState initial_purified() const;
  const TwoAtomState& initial_two_atom() const noexcept { return two_atom_initial_; }

  /// Photon statistics of the initial field mixture.
  std::vector<double> initial_photon_probs() const;
  /// Initial excited population of the cavity atom.
  double excited_weight() const noexcept;

 private:
  ScenarioConfig cfg_;
  FockVector alpha_state_;
  FockVector beta_state_;
  TwoAtomState two_atom_initial_;
};

struct SimulationRow {
  double t = 0.0;
  double S_A = 0.0;
  double S_F = 0.0;
  double S_AA = 0.0;
  double inversion = 0.0;
  double purity_F = 0.0;
  double araki_lower_margin = 0.0;
  double araki_upper_margin = 0.0;
  double leaked_mass = 0.0;
};

std::vector<SimulationRow> simulate(const ScenarioConfig& cfg, unsigned threads = 0);

/// '#' lines with the effective config, then a header and one row per time.
void write_simulation_csv(std::ostream& out, const ScenarioConfig& cfg, const std::vector<SimulationRow>& rows);

/// Reduced field state of the scenario at physical time t, on a phase-space grid.
PhaseSpaceGrid run_wigner(const ScenarioConfig& cfg, double t, const WignerGridSpec& spec);
void write_wigner_csv(std::ostream& out, const ScenarioConfig& cfg, double t, const PhaseSpaceGrid& grid);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // worst observed value
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  BasisMap mapping = default_basis_map();
  std::size_t oracle_points = 50;
  unsigned threads = 0;
};

/// Runs every cross-model check on the configuration's time grid.
std::vector<CheckResult> run_verify(const ScenarioConfig& cfg, const VerifyOptions& options = {});

/// Formats "%.17g".
std::string format_double(double value);

}  // namespace jcpure
