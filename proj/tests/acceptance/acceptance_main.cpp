// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "jcpure/scenario.hpp"
#include "oracles.hpp"

using namespace jcpure;

namespace {

const double kLn2 = std::numbers::ln2;
const double kLn4 = 2.0 * std::numbers::ln2;

// Frozen after one derivation run at N = 128 (see README).
constexpr int kFrozenExtrema = 25;            // local extrema of S_F on [10, 15], 1000 points
constexpr double kLobeThreshold = 0.1;        // superthreshold level for the two lobes
constexpr double kLobeMinRadius = 3.0;        // lobes lie entirely outside this radius
constexpr double kLobeTolerance = 1.5;        // distance from the predicted lobe centre
constexpr double kCentreThreshold = 0.02;     // interference near the origin
constexpr std::size_t kWignerResolution = 121;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

ScenarioConfig field_mix() {
  ScenarioConfig cfg;
  cfg.scenario = ScenarioKind::FieldMixture;
  cfg.C = 0.5;
  cfg.alpha = 4.0;
  cfg.beta = -4.0;
  cfg.lambda = 1.0;
  return resolve(cfg);
}

ScenarioConfig atom_mix() {
  ScenarioConfig cfg;
  cfg.scenario = ScenarioKind::AtomMixture;
  cfg.C = 0.5;
  cfg.alpha = 4.0;
  return resolve(cfg);
}

std::vector<double> uniform(double lo, double hi, std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = lo + (hi - lo) * double(k) / double(count - 1);
  return t;
}

double max_diff(const PurifiedState& a, const PurifiedState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    worst = std::max(worst, (a.components[i].amplitudes() - b.components[i].amplitudes()).cwiseAbs().maxCoeff());
  return worst;
}

double max_diff(const TwoAtomState& a, const TwoAtomState& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst, (a.field(i, j).amplitudes() - b.field(i, j).amplitudes()).cwiseAbs().maxCoeff());
  return worst;
}

void initial_entropies(Outcome& out) {
  const auto a = simulate([] {
    auto c = field_mix();
    c.steps = 2;
    return c;
  }());
  const auto b = simulate([] {
    auto c = atom_mix();
    c.steps = 2;
    return c;
  }());
  const double e1 = std::abs(a[0].S_F - kLn2), e2 = std::abs(a[0].S_A);
  const double e3 = std::abs(b[0].S_A - kLn2), e4 = std::abs(b[0].S_F);
  out.detail << "field-mix |S_F-ln2| = " << e1 << ", |S_A| = " << e2 << "; atom-mix |S_A-ln2| = " << e3 << ", |S_F| = " << e4;
  out.require(e1 < 1e-6, "field-mix S_F(0)");
  out.require(e2 < 1e-10, "field-mix S_A(0)");
  out.require(e3 < 1e-10, "atom-mix S_A(0)");
  out.require(e4 < 1e-8, "atom-mix S_F(0)");
}

void purification_equivalence(Outcome& out) {
  double commuting = 0.0, trace_dist = 0.0;
  for (const auto& cfg : {field_mix(), atom_mix()}) {
    const ScenarioEngine engine(cfg);
    const auto start = purify(engine.branches(0.0));
    for (double t : uniform(0.0, 20.0, 200)) {
      const auto b = engine.branches(t);
      commuting = std::max(commuting, max_diff(evolve_artificial(start, t), purify(b)));
      trace_dist = std::max(trace_dist, trace_distance(partial_trace_artificial(purify(b)), field_density(b)));
    }
  }
  out.detail << "commuting diagram " << commuting << ", partial-trace distance " << trace_dist;
  out.require(commuting <= 1e-12, "commuting diagram");
  out.require(trace_dist <= 1e-10, "partial trace");
}

void gram_vs_oracle(Outcome& out) {
  double worst = 0.0;
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> time(0.0, 30.0);
  for (const auto& cfg : {field_mix(), atom_mix()}) {
    const ScenarioEngine engine(cfg);
    for (int k = 0; k < 50; ++k) {
      const auto b = engine.branches(time(rng));
      const double s_aa = entropies_at(b).S_AA;
      worst = std::max(worst, std::abs(s_aa - oracle_field_entropy(field_density(b))));
    }
  }
  out.detail << "max |S(rho_AA) - S(dense rho_F)| = " << worst;
  out.require(worst < 1e-8, "gram vs oracle");
}

void araki_lieb(Outcome& out) {
  double pure_gap = 0.0, composite = 0.0, margin = 1e300;
  for (const auto& cfg : {field_mix(), atom_mix()}) {
    const ScenarioEngine engine(cfg);
    for (double t : time_grid(cfg)) {
      const auto rec = entropies_at(engine.branches(t));
      pure_gap = std::max(pure_gap, std::abs(rec.S_AA - rec.S_F));
      margin = std::min({margin, kLn2 - std::abs(rec.S_A - rec.S_F), rec.S_A + rec.S_F - kLn2});
    }
    for (double t : uniform(0.0, cfg.t_max, 5))
      composite = std::max(composite, std::abs(oracle_composite_entropy(full_density_2level(engine.branches(t))) - kLn2));
  }
  out.detail << "|S_AA - S_F| " << pure_gap << ", |S_AF(oracle) - ln2| " << composite << ", worst margin " << margin;
  out.require(pure_gap < 1e-8, "purified composite");
  out.require(composite < 1e-8, "S_AF constant");
  out.require(margin >= -1e-8, "Araki-Lieb margins");
}

void two_atom_equivalence(Outcome& out) {
  const auto grid = uniform(0.0, 30.0, 200);
  double fidelity_gap = 0.0, closed_form = 0.0, spectator = 0.0;
  for (auto start : {TwoAtomStart::BellPair, TwoAtomStart::AtomFieldEntangled}) {
    for (const auto& p : equivalence_report(start, 4.0, grid, 128)) fidelity_gap = std::max(fidelity_gap, std::abs(1.0 - p.fidelity));
    const auto initial = start == TwoAtomStart::BellPair ? initial_bell_atom_pair(4.0, 128) : initial_atom_field_entangled(4.0, 128);
    const auto p0 = spectator_populations(initial);
    for (double t : grid) {
      const auto evolved = evolve_two_atom(initial, t);
      const auto printed = start == TwoAtomStart::BellPair ? closed_form_bell_evolution(4.0, t, 128)
                                                           : closed_form_entangled_evolution(4.0, t, 128);
      closed_form = std::max(closed_form, max_diff(evolved, printed));
      const auto p = spectator_populations(evolved);
      spectator = std::max({spectator, std::abs(p[0] - p0[0]), std::abs(p[1] - p0[1])});
    }
  }
  out.detail << "|1 - fidelity| " << fidelity_gap << ", closed form " << closed_form << ", spectator drift " << spectator;
  out.require(fidelity_gap < 1e-10, "fidelity");
  out.require(closed_form < 1e-12, "closed-form states");
  out.require(spectator < 1e-12, "spectator populations");
}

void collapse_revival(Outcome& out) {
  const ScenarioEngine engine(field_mix());
  std::vector<double> probs(engine.dim());
  for (std::size_t n = 0; n < probs.size(); ++n) probs[n] = oracle::poisson(16.0, n);

  const double w0 = atomic_inversion(engine.branches(0.0));
  double collapse = 0.0, revival = 0.0, series_collapse = 0.0, series_revival = 0.0, routes = 0.0;
  for (double t : uniform(0.0, 30.0, 3001)) {
    const double w = atomic_inversion(engine.branches(t));
    const double s = oracle::inversion_series_excited(probs, t);
    routes = std::max(routes, std::abs(w - s));
    if (t >= 5.0 && t <= 15.0) {
      collapse = std::max(collapse, std::abs(w));
      series_collapse = std::max(series_collapse, std::abs(s));
    }
    if (t >= 20.0 && t <= 30.0) {
      revival = std::max(revival, std::abs(w));
      series_revival = std::max(series_revival, std::abs(s));
    }
  }
  out.detail << "W(0) = " << w0 << ", collapse max " << collapse << " (series " << series_collapse << "), revival max "
             << revival << " (series " << series_revival << "), route gap " << routes;
  out.require(w0 == 1.0, "W(0)");
  out.require(collapse < 0.05 && series_collapse < 0.05, "collapse");
  out.require(revival > 0.3 && series_revival > 0.3, "revival");
  out.require(routes < 1e-10, "route agreement");
}

void entropy_oscillations(Outcome& out) {
  const ScenarioEngine engine(field_mix());
  std::vector<double> s_f;
  for (double t : uniform(10.0, 15.0, 1000)) s_f.push_back(entropies_at(engine.branches(t)).S_F);
  const int extrema = oracle::count_local_extrema(s_f);
  out.detail << "local extrema of S_F on [10, 15]: " << extrema << " (frozen " << kFrozenExtrema << ")";
  out.require(extrema >= 3, "at least 3 extrema");
  out.require(extrema == kFrozenExtrema, "frozen count");
}

void rank_and_ceiling(Outcome& out) {
  double ceiling = -1e300, fifth = 0.0;
  double atom_max = 0.0, atom_start = 0.0;
  for (const auto& cfg : {field_mix(), atom_mix()}) {
    const ScenarioEngine engine(cfg);
    const auto grid = time_grid(cfg);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto b = engine.branches(grid[k]);
      const double s_f = entropies_at(b).S_F;
      ceiling = std::max(ceiling, s_f - kLn4);
      if (cfg.scenario == ScenarioKind::AtomMixture) {
        if (k == 0) atom_start = s_f;
        atom_max = std::max(atom_max, s_f);
      }
      if (k % 30 == 0) fifth = std::max(fifth, field_spectrum(field_density(b))[4]);
    }
  }
  out.detail << "max S_F - ln4 = " << ceiling << ", 5th eigenvalue " << fifth << ", atom-mix S_F: start " << atom_start
             << ", max " << atom_max;
  out.require(ceiling <= 1e-10, "ceiling");
  out.require(fifth < 1e-10, "rank");
  out.require(atom_max > atom_start && atom_max < kLn4, "atom-mix growth");
}

void wigner_consistency(Outcome& out) {
  const auto cfg = field_mix();
  const double t = 12.54 / cfg.lambda;
  WignerGridSpec spec;
  spec.resolution = kWignerResolution;
  const auto grid = run_wigner(cfg, t, spec);
  const double purity_exact = field_purity(ScenarioEngine(cfg).branches(cfg.lambda * t));
  const double norm_err = std::abs(grid.integral() - 1.0);
  const double purity_err = std::abs(grid.purity() - purity_exact);

  // The two coherent components rotate by +-theta = lambda t / (2 |alpha|).
  const double theta = cfg.lambda * t / (2.0 * std::abs(cfg.alpha));
  const double r0 = std::numbers::sqrt2 * std::abs(cfg.alpha);
  std::vector<std::pair<double, double>> predicted;
  for (double sx : {1.0, -1.0})
    for (double sp : {1.0, -1.0}) predicted.emplace_back(sx * r0 * std::cos(theta), sp * r0 * std::sin(theta));

  int lobes = 0;
  bool lobes_placed = true;
  bool upper = false, lower = false;
  for (const auto& r : oracle::superthreshold_regions(grid, kLobeThreshold)) {
    if (r.min_radius <= kLobeMinRadius) continue;
    ++lobes;
    double nearest = 1e300;
    for (const auto& [px, pp] : predicted) nearest = std::min(nearest, std::hypot(r.peak_x - px, r.peak_p - pp));
    lobes_placed = lobes_placed && nearest <= kLobeTolerance;
    (r.peak_p > 0.0 ? upper : lower) = true;
  }

  double centre = 0.0;
  for (std::size_t ix = 0; ix < grid.resolution; ++ix)
    for (std::size_t ip = 0; ip < grid.resolution; ++ip)
      if (std::abs(grid.x(ix)) < 1.5 && std::abs(grid.p(ip)) < 1.5) centre = std::max(centre, std::abs(grid.at(ix, ip)));

  // Vacuum control: the ground-state atom never leaves |g, 0>.
  ScenarioConfig vac_cfg;
  vac_cfg.scenario = ScenarioKind::AtomMixture;
  vac_cfg.C = 0.0;
  vac_cfg.alpha = 0.0;
  WignerGridSpec vac_spec;
  vac_spec.x_min = vac_spec.p_min = -2.0;
  vac_spec.x_max = vac_spec.p_max = 2.0;
  vac_spec.resolution = 5;
  const auto vac = run_wigner(resolve(vac_cfg), t, vac_spec);
  const double vac_err = std::abs(vac.at(2, 2) - 1.0 / std::numbers::pi);

  out.detail << "norm err " << norm_err << ", purity err " << purity_err << ", lobes beyond r=3: " << lobes
             << ", centre max|W| " << centre << ", imag residue " << grid.imaginary_residue << ", vacuum err "
             << vac_err;
  out.require(norm_err < 5e-3, "normalization");
  out.require(purity_err < 5e-3, "purity identity");
  out.require(lobes == 2 && upper && lower && lobes_placed, "two lobes");
  out.require(centre > kCentreThreshold, "interference near the origin");
  out.require(grid.imaginary_residue < 1e-10, "reality");
  out.require(vac_err < 1e-6, "vacuum control");
}

void hygiene(Outcome& out) {
  double norm = 0.0, leaked = 0.0;
  for (auto kind : {ScenarioKind::FieldMixture, ScenarioKind::AtomMixture, ScenarioKind::TwoAtomBell,
                    ScenarioKind::TwoAtomFieldEntangled}) {
    auto cfg = field_mix();
    cfg.scenario = kind;
    const ScenarioEngine engine(cfg);
    const auto grid = time_grid(cfg);
    for (double t : grid) {
      const auto b = engine.branches(t);
      norm = std::max(norm, std::abs(b.total_probability() - 1.0));
      leaked = std::max(leaked, b.leaked_mass);
    }
    for (double t : uniform(0.0, cfg.t_max, 61)) {
      double run_leak = 0.0;
      const auto purified = evolve_artificial(engine.initial_purified(), t, run_leak);
      norm = std::max(norm, std::abs(purified.norm_squared() - 1.0));
      const auto two = evolve_two_atom(engine.initial_two_atom(), t, run_leak);
      norm = std::max(norm, std::abs(two.norm_squared() - 1.0));
      leaked = std::max(leaked, run_leak);
    }
  }

  std::mt19937_64 rng(1000);
  double jacobi = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto m = oracle::random_hermitian4(rng);
    const auto got = eigvals_hermitian(SmallHermitian<4>(m));
    const auto ref = oracle::charpoly_eigenvalues(m);
    for (std::size_t i = 0; i < 4; ++i) jacobi = std::max(jacobi, std::abs(got[i] - ref[i]));
  }
  out.detail << "norm drift " << norm << ", leaked mass " << leaked << ", Jacobi vs charpoly " << jacobi;
  out.require(norm < 2e-12, "norm conservation");
  out.require(leaked < 1e-12, "leaked mass");
  out.require(jacobi < 1e-10, "Jacobi oracle");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "initial entropies", initial_entropies},
      {2, "purification equivalence", purification_equivalence},
      {3, "Gram vs dense oracle entropy", gram_vs_oracle},
      {4, "Araki-Lieb audit", araki_lieb},
      {5, "two-atom equivalence", two_atom_equivalence},
      {6, "collapse and revival", collapse_revival},
      {7, "field-entropy oscillations", entropy_oscillations},
      {8, "rank and ceiling", rank_and_ceiling},
      {9, "Wigner self-consistency", wigner_consistency},
      {10, "numerical hygiene", hygiene},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    out.detail.precision(3);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d  %-30s %s (%.1fs)\n", out.passed ? "PASS" : "FAIL", c.id, c.title,
                out.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += out.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
