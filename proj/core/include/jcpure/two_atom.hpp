#pragma once

// Physical realization of the purification: atom 1 couples to the cavity field,
// atom 2 sits outside the cavity and never interacts. The free terms only add
// local phases and are dropped (interaction picture).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "jcpure/purification.hpp"

namespace jcpure {

/// Field vectors indexed by the two-atom product basis in tensor order
/// (e1 e2, e1 g2, g1 e2, g1 g2). Use component(AtomPair) for labelled access.
class TwoAtomState {
 public:
  TwoAtomState() = default;
  explicit TwoAtomState(std::size_t dim);

  std::size_t dim() const noexcept { return fields_[0].dim(); }
  double lambda_t() const noexcept { return lambda_t_; }
  void set_lambda_t(double lambda_t) noexcept { lambda_t_ = lambda_t; }

  /// atom1, atom2: 0 = excited, 1 = ground.
  const FockVector& field(int atom1, int atom2) const { return fields_[std::size_t(2 * atom1 + atom2)]; }
  FockVector& field(int atom1, int atom2) { return fields_[std::size_t(2 * atom1 + atom2)]; }

  const FockVector& component(AtomPair label) const;
  FockVector& component(AtomPair label);

  double norm_squared() const;

 private:
  std::array<FockVector, 4> fields_;
  double lambda_t_ = 0.0;
};

/// JC block on atom 1 inside each fixed atom-2 sector.
TwoAtomState evolve_two_atom(const TwoAtomState& state, double lambda_t);
TwoAtomState evolve_two_atom(const TwoAtomState& state, double lambda_t, double& leaked_mass);

/// (sqrt(C)|e1 e2> + sqrt(1-C)|g1 g2>) |alpha>; C = 1/2 is the Bell pair of the
/// original construction, other weights realize arbitrary atomic mixtures.
TwoAtomState initial_bell_atom_pair(complex alpha, std::size_t dim, double weight = 0.5);

/// |e1> (sqrt(C)|alpha>|e2> + sqrt(1-C)|beta>|g2>); the default beta = -alpha
/// with C = 1/2 is the original construction.
TwoAtomState initial_atom_field_entangled(complex alpha, std::size_t dim, double weight = 0.5);
TwoAtomState initial_atom_field_entangled(complex alpha, complex beta, std::size_t dim, double weight);

/// Relabels onto the artificial atom: component map[label] <- field(label).
PurifiedState to_artificial(const TwoAtomState& state, const BasisMap& map = default_basis_map());

/// Closed-form evolved states written term by term (each atom-2 sector evolves
/// as an independent JC atom with the field).
TwoAtomState closed_form_bell_evolution(complex alpha, double lambda_t, std::size_t dim);
TwoAtomState closed_form_entangled_evolution(complex alpha, double lambda_t, std::size_t dim);

/// Populations of atom 2: {P(e2), P(g2)}.
std::array<double, 2> spectator_populations(const TwoAtomState& state);

enum class TwoAtomStart {
  BellPair,             // pairs with the atom-mixture purification
  AtomFieldEntangled,   // pairs with the field-mixture purification
};

struct EquivalencePoint {
  double lambda_t = 0.0;
  double fidelity = 0.0;      // |<psi_purified | psi_two_atom>|
  double max_abs_diff = 0.0;  // elementwise
};

/// Evolves the two-atom start and the matching purified mixture (C = 1/2) side
/// by side and reports their overlap at each grid point.
std::vector<EquivalencePoint> equivalence_report(TwoAtomStart start, complex alpha, std::span<const double> lambda_t_grid,
                                                 std::size_t dim, const BasisMap& map = default_basis_map(),
                                                 unsigned threads = 1);

}  // namespace jcpure
