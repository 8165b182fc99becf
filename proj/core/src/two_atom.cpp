#include "jcpure/two_atom.hpp"

#include <cmath>
#include <numbers>

#include "jcpure/parallel.hpp"

namespace jcpure {

namespace {

int atom1_index(AtomPair label) { return (label == AtomPair::ee || label == AtomPair::eg) ? 0 : 1; }
int atom2_index(AtomPair label) { return (label == AtomPair::ee || label == AtomPair::ge) ? 0 : 1; }

constexpr std::array<AtomPair, 4> kLabels = {AtomPair::ee, AtomPair::ge, AtomPair::eg, AtomPair::gg};

// Element-wise cos(x sqrt(n + shift)) and sin(x sqrt(n + shift)).
FockVector scale_by_cos(const FockVector& v, double lambda_t, double shift) {
  FockVector out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) out[n] = std::cos(lambda_t * std::sqrt(double(n) + shift)) * v[n];
  return out;
}

FockVector scale_by_sin(const FockVector& v, double lambda_t, double shift) {
  FockVector out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) out[n] = std::sin(lambda_t * std::sqrt(double(n) + shift)) * v[n];
  return out;
}

void require_weight(double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw InvalidArgument("two-atom weight must lie in [0, 1]");
}

}  // namespace

TwoAtomState::TwoAtomState(std::size_t dim) {
  for (auto& f : fields_) f = FockVector(dim);
}

const FockVector& TwoAtomState::component(AtomPair label) const {
  return field(atom1_index(label), atom2_index(label));
}

FockVector& TwoAtomState::component(AtomPair label) { return field(atom1_index(label), atom2_index(label)); }

double TwoAtomState::norm_squared() const {
  double total = 0.0;
  for (const auto& f : fields_) total += f.norm_squared();
  return total;
}

TwoAtomState evolve_two_atom(const TwoAtomState& state, double lambda_t, double& leaked_mass) {
  const JcPropagator u(lambda_t, state.dim());
  TwoAtomState out(state.dim());
  double leaked = 0.0;
  for (int spectator = 0; spectator < 2; ++spectator) {
    u.apply(state.field(0, spectator), state.field(1, spectator), out.field(0, spectator), out.field(1, spectator),
            leaked);
  }
  check_leak(leaked, "evolve_two_atom");
  leaked_mass += leaked;
  out.set_lambda_t(state.lambda_t() + lambda_t);
  return out;
}

TwoAtomState evolve_two_atom(const TwoAtomState& state, double lambda_t) {
  double leaked = 0.0;
  return evolve_two_atom(state, lambda_t, leaked);
}

TwoAtomState initial_bell_atom_pair(complex alpha, std::size_t dim, double weight) {
  require_weight(weight);
  const FockVector field = coherent(alpha, dim);
  TwoAtomState s(dim);
  s.component(AtomPair::ee) = std::sqrt(weight) * field;
  s.component(AtomPair::gg) = std::sqrt(1.0 - weight) * field;
  return s;
}

TwoAtomState initial_atom_field_entangled(complex alpha, complex beta, std::size_t dim, double weight) {
  require_weight(weight);
  TwoAtomState s(dim);
  s.component(AtomPair::ee) = std::sqrt(weight) * coherent(alpha, dim);
  s.component(AtomPair::eg) = std::sqrt(1.0 - weight) * coherent(beta, dim);
  return s;
}

TwoAtomState initial_atom_field_entangled(complex alpha, std::size_t dim, double weight) {
  return initial_atom_field_entangled(alpha, -alpha, dim, weight);
}

PurifiedState to_artificial(const TwoAtomState& state, const BasisMap& map) {
  PurifiedState out = PurifiedState::zero(state.dim());
  for (AtomPair label : kLabels) out.components[map[std::size_t(label)]] = state.component(label);
  out.lambda_t = state.lambda_t();
  return out;
}

TwoAtomState closed_form_bell_evolution(complex alpha, double lambda_t, std::size_t dim) {
  const FockVector field = coherent(alpha, dim);
  const double h = 1.0 / std::numbers::sqrt2;
  TwoAtomState s(dim);
  s.component(AtomPair::ee) = h * scale_by_cos(field, lambda_t, 1.0);
  s.component(AtomPair::ge) = (-kI * h) * apply_V_dagger(scale_by_sin(field, lambda_t, 1.0));
  s.component(AtomPair::eg) = (-kI * h) * scale_by_sin(apply_V(field), lambda_t, 1.0);
  s.component(AtomPair::gg) = h * scale_by_cos(field, lambda_t, 0.0);
  s.set_lambda_t(lambda_t);
  return s;
}

TwoAtomState closed_form_entangled_evolution(complex alpha, double lambda_t, std::size_t dim) {
  const FockVector plus = coherent(alpha, dim);
  const FockVector minus = coherent(-alpha, dim);
  const double h = 1.0 / std::numbers::sqrt2;
  TwoAtomState s(dim);
  s.component(AtomPair::ee) = h * scale_by_cos(plus, lambda_t, 1.0);
  s.component(AtomPair::ge) = (-kI * h) * apply_V_dagger(scale_by_sin(plus, lambda_t, 1.0));
  s.component(AtomPair::eg) = h * scale_by_cos(minus, lambda_t, 1.0);
  s.component(AtomPair::gg) = (-kI * h) * apply_V_dagger(scale_by_sin(minus, lambda_t, 1.0));
  s.set_lambda_t(lambda_t);
  return s;
}

std::array<double, 2> spectator_populations(const TwoAtomState& state) {
  return {state.field(0, 0).norm_squared() + state.field(1, 0).norm_squared(),
          state.field(0, 1).norm_squared() + state.field(1, 1).norm_squared()};
}

std::vector<EquivalencePoint> equivalence_report(TwoAtomStart start, complex alpha,
                                                 std::span<const double> lambda_t_grid, std::size_t dim,
                                                 const BasisMap& map, unsigned threads) {
  const TwoAtomState initial = start == TwoAtomStart::BellPair ? initial_bell_atom_pair(alpha, dim)
                                                               : initial_atom_field_entangled(alpha, dim);
  const FockVector alpha_state = coherent(alpha, dim);
  const FockVector beta_state = coherent(-alpha, dim);

  std::vector<EquivalencePoint> report(lambda_t_grid.size());
  parallel_for(lambda_t_grid.size(), threads, [&](std::size_t k) {
    const double lt = lambda_t_grid[k];
    const JcPropagator u(lt, dim);
    const BranchSet b = start == TwoAtomStart::BellPair ? branches_atom_mixture(0.5, alpha_state, u)
                                                        : branches_field_mixture(0.5, alpha_state, beta_state, u);
    const PurifiedState purified = purify(b);
    const PurifiedState realized = to_artificial(evolve_two_atom(initial, lt), map);

    complex overlap = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      overlap += inner(purified.components[i], realized.components[i]);
      diff = std::max(diff, (purified.components[i].amplitudes() - realized.components[i].amplitudes())
                                .cwiseAbs()
                                .maxCoeff());
    }
    report[k] = {lt, std::abs(overlap), diff};
  });
  return report;
}

}  // namespace jcpure
