#include "jcpure/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "jcpure/parallel.hpp"

namespace jcpure {

using nlohmann::json;

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::FieldMixture: return "field-mixture";
    case ScenarioKind::AtomMixture: return "atom-mixture";
    case ScenarioKind::TwoAtomBell: return "two-atom-bell";
    case ScenarioKind::TwoAtomFieldEntangled: return "two-atom-field-entangled";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  for (auto kind : {ScenarioKind::FieldMixture, ScenarioKind::AtomMixture, ScenarioKind::TwoAtomBell,
                    ScenarioKind::TwoAtomFieldEntangled}) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError("scenario", "unknown scenario '" + std::string(name) +
                                    "' (expected field-mixture, atom-mixture, two-atom-bell or "
                                    "two-atom-field-entangled)");
}

void validate(const ScenarioConfig& cfg) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(cfg.C >= 0.0 && cfg.C <= 1.0)) throw ConfigError("C", "must lie in [0, 1]");
  if (!finite(cfg.alpha.real()) || !finite(cfg.alpha.imag())) throw ConfigError("alpha", "must be finite");
  if (!finite(cfg.beta.real()) || !finite(cfg.beta.imag())) throw ConfigError("beta", "must be finite");
  if (!(finite(cfg.lambda) && cfg.lambda > 0.0)) throw ConfigError("lambda", "must be positive");
  if (!(finite(cfg.t_max) && cfg.t_max > 0.0)) throw ConfigError("t_max", "must be positive");
  if (cfg.steps < 2) throw ConfigError("steps", "must be at least 2");
  if (cfg.N != 0 && cfg.N <= tol::kTailWidth) throw ConfigError("N", "must be 0 (auto) or larger than 8");
  for (const auto& [key, value] : cfg.tolerances) {
    if (!(finite(value) && value > 0.0)) throw ConfigError("tolerances." + key, "must be positive");
  }
}

ScenarioConfig resolve(ScenarioConfig cfg) {
  validate(cfg);
  if (cfg.N == 0) cfg.N = std::max(choose_truncation(cfg.alpha), choose_truncation(cfg.beta));
  // Fails with TruncationTooSmall when an explicit N is too small.
  (void)coherent(cfg.alpha, cfg.N);
  (void)coherent(cfg.beta, cfg.N);
  return cfg;
}

std::string to_json_string(const ScenarioConfig& cfg) {
  json j = {
      {"scenario", std::string(to_string(cfg.scenario))},
      {"C", cfg.C},
      {"alpha_re", cfg.alpha.real()},
      {"alpha_im", cfg.alpha.imag()},
      {"beta_re", cfg.beta.real()},
      {"beta_im", cfg.beta.imag()},
      {"lambda", cfg.lambda},
      {"t_max", cfg.t_max},
      {"steps", cfg.steps},
      {"N", cfg.N},
      {"omega", cfg.omega},
      {"omega_A", cfg.omega_A},
      {"omega_a", cfg.omega_a},
      {"tolerances", cfg.tolerances},
  };
  return j.dump();
}

namespace {

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& key) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(key, "expected a non-negative integer");
  const auto value = j.get<long long>();
  if (value < 0) throw ConfigError(key, "expected a non-negative integer");
  return static_cast<std::size_t>(value);
}

}  // namespace

ScenarioConfig config_from_json(std::string_view text, ScenarioConfig cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (key == "scenario") {
      if (!value.is_string()) throw ConfigError(key, "expected a string");
      cfg.scenario = parse_scenario_kind(value.get<std::string>());
    } else if (key == "C") {
      cfg.C = get_number(value, key);
    } else if (key == "alpha_re") {
      cfg.alpha.real(get_number(value, key));
    } else if (key == "alpha_im") {
      cfg.alpha.imag(get_number(value, key));
    } else if (key == "beta_re") {
      cfg.beta.real(get_number(value, key));
    } else if (key == "beta_im") {
      cfg.beta.imag(get_number(value, key));
    } else if (key == "lambda") {
      cfg.lambda = get_number(value, key);
    } else if (key == "t_max") {
      cfg.t_max = get_number(value, key);
    } else if (key == "steps") {
      cfg.steps = get_count(value, key);
    } else if (key == "N") {
      cfg.N = get_count(value, key);
    } else if (key == "omega") {
      cfg.omega = get_number(value, key);
    } else if (key == "omega_A") {
      cfg.omega_A = get_number(value, key);
    } else if (key == "omega_a") {
      cfg.omega_a = get_number(value, key);
    } else if (key == "tolerances") {
      if (!value.is_object()) throw ConfigError(key, "expected an object");
      for (const auto& [name, tol_value] : value.items()) cfg.tolerances[name] = get_number(tol_value, key + "." + name);
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str(), std::move(base));
}

std::vector<double> time_grid(const ScenarioConfig& cfg) {
  std::vector<double> grid(cfg.steps);
  for (std::size_t k = 0; k < cfg.steps; ++k) grid[k] = cfg.t_max * double(k) / double(cfg.steps - 1);
  return grid;
}

double tolerance(const ScenarioConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.tolerances.find(key);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------

ScenarioEngine::ScenarioEngine(const ScenarioConfig& cfg) : cfg_(resolve(cfg)) {
  alpha_state_ = coherent(cfg_.alpha, cfg_.N);
  beta_state_ = coherent(cfg_.beta, cfg_.N);
  two_atom_initial_ = mixture() == Scenario::AtomMixture
                          ? initial_bell_atom_pair(cfg_.alpha, cfg_.N, cfg_.C)
                          : initial_atom_field_entangled(cfg_.alpha, cfg_.beta, cfg_.N, cfg_.C);
}

Scenario ScenarioEngine::mixture() const noexcept {
  return (cfg_.scenario == ScenarioKind::AtomMixture || cfg_.scenario == ScenarioKind::TwoAtomBell)
             ? Scenario::AtomMixture
             : Scenario::FieldMixture;
}

bool ScenarioEngine::is_two_atom() const noexcept {
  return cfg_.scenario == ScenarioKind::TwoAtomBell || cfg_.scenario == ScenarioKind::TwoAtomFieldEntangled;
}

BranchSet ScenarioEngine::mixed_branches(double lambda_t) const {
  const JcPropagator u(lambda_t, cfg_.N);
  return mixture() == Scenario::AtomMixture ? branches_atom_mixture(cfg_.C, alpha_state_, u)
                                            : branches_field_mixture(cfg_.C, alpha_state_, beta_state_, u);
}

BranchSet ScenarioEngine::two_atom_branches(double lambda_t, const BasisMap& map) const {
  double leaked = 0.0;
  const TwoAtomState evolved = evolve_two_atom(two_atom_initial_, lambda_t, leaked);
  BranchSet b = branches_of(to_artificial(evolved, map), mixture());
  b.leaked_mass = leaked;
  return b;
}

BranchSet ScenarioEngine::branches(double lambda_t) const {
  return is_two_atom() ? two_atom_branches(lambda_t) : mixed_branches(lambda_t);
}

PurifiedState ScenarioEngine::initial_purified() const { return purify(mixed_branches(0.0)); }

std::vector<double> ScenarioEngine::initial_photon_probs() const {
  std::vector<double> probs(cfg_.N);
  const bool field_mix = mixture() == Scenario::FieldMixture;
  for (std::size_t n = 0; n < cfg_.N; ++n) {
    probs[n] = field_mix ? cfg_.C * std::norm(alpha_state_[n]) + (1.0 - cfg_.C) * std::norm(beta_state_[n])
                         : std::norm(alpha_state_[n]);
  }
  return probs;
}

double ScenarioEngine::excited_weight() const noexcept {
  return mixture() == Scenario::AtomMixture ? cfg_.C : 1.0;
}

// ---------------------------------------------------------------------------

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<SimulationRow> simulate(const ScenarioConfig& cfg, unsigned threads) {
  const ScenarioEngine engine(cfg);
  const auto times = time_grid(engine.config());
  const double s_af = composite_entropy(engine.mixed_branches(0.0));

  std::vector<SimulationRow> rows(times.size());
  parallel_for(times.size(), threads, [&](std::size_t k) {
    const double t = times[k];
    const BranchSet b = engine.branches(engine.config().lambda * t);
    const EntropyRecord rec = entropies_at(b);
    SimulationRow& row = rows[k];
    row.t = t;
    row.S_A = rec.S_A;
    row.S_F = rec.S_F;
    row.S_AA = rec.S_AA;
    row.inversion = atomic_inversion(b);
    row.purity_F = field_purity(b);
    row.araki_lower_margin = s_af - rec.araki_lower;
    row.araki_upper_margin = rec.araki_upper - s_af;
    row.leaked_mass = b.leaked_mass;
  });
  return rows;
}

void write_simulation_csv(std::ostream& out, const ScenarioConfig& cfg, const std::vector<SimulationRow>& rows) {
  out << "# jcpure simulate\n";
  out << "# config: " << to_json_string(cfg) << "\n";
  out << "t,S_A,S_F,S_AA,W_inversion,purity_F,araki_lower_margin,araki_upper_margin,leaked_mass\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.S_A) << ',' << format_double(r.S_F) << ','
        << format_double(r.S_AA) << ',' << format_double(r.inversion) << ',' << format_double(r.purity_F) << ','
        << format_double(r.araki_lower_margin) << ',' << format_double(r.araki_upper_margin) << ','
        << format_double(r.leaked_mass) << '\n';
  }
}

PhaseSpaceGrid run_wigner(const ScenarioConfig& cfg, double t, const WignerGridSpec& spec) {
  const ScenarioEngine engine(cfg);
  return wigner(field_density(engine.branches(engine.config().lambda * t)), spec);
}

void write_wigner_csv(std::ostream& out, const ScenarioConfig& cfg, double t, const PhaseSpaceGrid& grid) {
  out << "# jcpure wigner\n";
  out << "# " << kWignerConvention << "\n";
  out << "# t: " << format_double(t) << "\n";
  out << "# padded_N: " << grid.padded_dim << "\n";
  out << "# config: " << to_json_string(cfg) << "\n";
  out << "x,p,W\n";
  for (std::size_t ix = 0; ix < grid.resolution; ++ix)
    for (std::size_t ip = 0; ip < grid.resolution; ++ip)
      out << format_double(grid.x(ix)) << ',' << format_double(grid.p(ip)) << ',' << format_double(grid.at(ix, ip))
          << '\n';
}

// ---------------------------------------------------------------------------

namespace {

struct PointMetrics {
  double norm_error = 0.0;
  double leaked = 0.0;
  double commuting = 0.0;
  double fidelity_gap = 0.0;
  double pure_gap = 0.0;       // |S_AA - S_F|
  double inversion_gap = 0.0;  // branch norms vs photon series
  double araki_lower = 0.0;
  double araki_upper = 0.0;
  double s_a_minus_s_f = 0.0;
  double trace_error = 0.0;
  double hermiticity = 0.0;
  double min_eigenvalue = 0.0;
  double max_s_f = 0.0;
};

struct OracleMetrics {
  double partial_trace = 0.0;
  double gram_vs_dense = 0.0;
  double fifth_eigenvalue = 0.0;
};

std::vector<std::size_t> spread_indices(std::size_t count, std::size_t wanted) {
  wanted = std::min(wanted, count);
  std::vector<std::size_t> idx;
  if (wanted == 0) return idx;
  if (wanted == 1) return {0};
  for (std::size_t k = 0; k < wanted; ++k) idx.push_back(k * (count - 1) / (wanted - 1));
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

template <class Get>
double worst(const std::vector<PointMetrics>& m, Get get) {
  double w = 0.0;
  for (const auto& p : m) w = std::max(w, get(p));
  return w;
}

}  // namespace

std::vector<CheckResult> run_verify(const ScenarioConfig& cfg, const VerifyOptions& options) {
  const ScenarioEngine engine(cfg);
  const ScenarioConfig& rc = engine.config();
  const auto times = time_grid(rc);
  const PurifiedState start = engine.initial_purified();
  const auto photon_probs = engine.initial_photon_probs();
  const BranchSet initial = engine.mixed_branches(0.0);
  const double s_af = composite_entropy(initial);

  std::vector<PointMetrics> metrics(times.size());
  parallel_for(times.size(), options.threads, [&](std::size_t k) {
    const double lt = rc.lambda * times[k];
    const BranchSet mixed = engine.mixed_branches(lt);
    const BranchSet b = engine.branches(lt);
    PointMetrics& m = metrics[k];

    double leaked = mixed.leaked_mass + b.leaked_mass;
    const PurifiedState evolved = evolve_artificial(start, lt, leaked);
    m.leaked = leaked;
    m.norm_error = std::max({std::abs(mixed.total_probability() - 1.0), std::abs(b.total_probability() - 1.0),
                             std::abs(evolved.norm_squared() - 1.0)});

    const PurifiedState direct = purify(mixed);
    complex overlap = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      m.commuting = std::max(m.commuting, (direct.components[i].amplitudes() - evolved.components[i].amplitudes())
                                              .cwiseAbs()
                                              .maxCoeff());
    }
    const BranchSet realized = engine.two_atom_branches(lt, options.mapping);
    for (std::size_t i = 0; i < 4; ++i) overlap += inner(direct.components[i], realized.psi[i]);
    m.fidelity_gap = std::abs(1.0 - std::abs(overlap));

    const EntropyRecord rec = entropies_at(b);
    m.pure_gap = std::abs(rec.S_AA - rec.S_F);
    m.araki_lower = s_af - rec.araki_lower;
    m.araki_upper = rec.araki_upper - s_af;
    m.s_a_minus_s_f = std::abs(rec.S_A - rec.S_F);
    m.max_s_f = std::max(rec.S_F, rec.S_AA);
    m.inversion_gap = std::abs(atomic_inversion(b) - inversion_series(photon_probs, lt, engine.excited_weight()));

    const auto rho_a = reduced_atom(b);
    const auto rho_aa = gram_matrix(b);
    m.trace_error = std::max(std::abs(rho_a.trace() - 1.0), std::abs(rho_aa.trace() - 1.0));
    m.hermiticity = std::max(rho_a.hermiticity_error(), rho_aa.hermiticity_error());
    m.min_eigenvalue = std::min(eigvals_hermitian(rho_a)[1], eigvals_hermitian(rho_aa)[3]);
  });

  const auto oracle_idx = spread_indices(times.size(), options.oracle_points);
  std::vector<OracleMetrics> oracle(oracle_idx.size());
  parallel_for(oracle_idx.size(), options.threads, [&](std::size_t k) {
    const double lt = rc.lambda * times[oracle_idx[k]];
    const BranchSet b = engine.branches(lt);
    const FieldDensityMatrix rho_f = field_density(b);
    const auto spectrum = field_spectrum(rho_f);
    oracle[k].partial_trace = trace_distance(partial_trace_artificial(evolve_artificial(start, lt)), rho_f);
    oracle[k].gram_vs_dense = std::abs(entropies_at(b).S_F - von_neumann(spectrum));
    oracle[k].fifth_eigenvalue = spectrum.size() > 4 ? std::abs(spectrum[4]) : 0.0;
  });

  const auto composite_idx = spread_indices(times.size(), 5);
  double composite_gap = 0.0;
  for (std::size_t k : composite_idx) {
    const BranchSet b = engine.branches(rc.lambda * times[k]);
    composite_gap = std::max(composite_gap, std::abs(oracle_composite_entropy(full_density_2level(b)) - s_af));
  }

  std::vector<CheckResult> checks;
  auto add_max = [&](std::string name, double value, double threshold, std::string detail) {
    checks.push_back({std::move(name), value <= threshold, value, threshold, std::move(detail)});
  };
  auto oracle_worst = [&](auto get) {
    double w = 0.0;
    for (const auto& o : oracle) w = std::max(w, get(o));
    return w;
  };

  add_max("norm-conservation", worst(metrics, [](const auto& m) { return m.norm_error; }),
          tolerance(rc, "norm", 2e-12), "|sum_i <psi_i|psi_i> - 1| over the grid");
  add_max("leaked-mass", worst(metrics, [](const auto& m) { return m.leaked; }), tolerance(rc, "leak", 1e-12),
          "probability pushed past the Fock truncation per evolution");
  add_max("density-matrix-sanity",
          std::max(worst(metrics, [](const auto& m) { return m.trace_error; }),
                   worst(metrics, [](const auto& m) { return m.hermiticity; })),
          tolerance(rc, "density", 1e-12), "trace and Hermiticity of rho_A and rho_AA");
  add_max("positivity", worst(metrics, [](const auto& m) { return -m.min_eigenvalue; }),
          tolerance(rc, "positivity", 1e-12), "most negative eigenvalue of rho_A and rho_AA");
  add_max("commuting-diagram", worst(metrics, [](const auto& m) { return m.commuting; }),
          tolerance(rc, "commuting", 1e-12), "purify(branches(t)) vs evolve_artificial(purify(branches(0)), t)");
  add_max("partial-trace", oracle_worst([](const auto& o) { return o.partial_trace; }),
          tolerance(rc, "partial_trace", 1e-10), "trace distance Tr_A|psi><psi| vs rho_F");
  add_max("gram-vs-oracle", oracle_worst([](const auto& o) { return o.gram_vs_dense; }),
          tolerance(rc, "gram_oracle", 1e-8), "S_F from the 4x4 overlap matrix vs dense N x N diagonalization");
  add_max("rank-bound", oracle_worst([](const auto& o) { return o.fifth_eigenvalue; }),
          tolerance(rc, "rank", 1e-10), "fifth-largest eigenvalue of rho_F");
  add_max("entropy-ceiling",
          std::max(0.0, worst(metrics, [](const auto& m) { return m.max_s_f; }) - std::log(4.0)),
          tolerance(rc, "ceiling", 1e-10), "S_F - ln 4");
  add_max("araki-lieb-pure", worst(metrics, [](const auto& m) { return m.pure_gap; }),
          tolerance(rc, "araki_pure", 1e-8), "|S_AA - S_F| for the purified composite");
  add_max("composite-entropy", composite_gap, tolerance(rc, "composite", 1e-8),
          "dense S_AF at 5 times vs the t = 0 value " + format_double(s_af));
  add_max("araki-lieb-mixed",
          std::max(worst(metrics, [](const auto& m) { return -m.araki_lower; }),
                   worst(metrics, [](const auto& m) { return -m.araki_upper; })),
          tolerance(rc, "araki_mixed", 1e-8), "negated worst margin of |S_A - S_F| <= S_AF <= S_A + S_F");
  if (s_af < 1e-8) {
    add_max("pure-state-limit", worst(metrics, [](const auto& m) { return m.s_a_minus_s_f; }),
            tolerance(rc, "araki_pure", 1e-8), "S_AF = 0, so S_A must equal S_F");
  }
  add_max("inversion-series", worst(metrics, [](const auto& m) { return m.inversion_gap; }),
          tolerance(rc, "inversion", 1e-10), "branch-norm inversion vs photon-number cosine series");
  add_max("two-atom-equivalence", worst(metrics, [](const auto& m) { return m.fidelity_gap; }),
          tolerance(rc, "fidelity", 1e-10), "1 - |<purified|two-atom>|");
  return checks;
}

}  // namespace jcpure
