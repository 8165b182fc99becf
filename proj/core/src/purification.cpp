#include "jcpure/purification.hpp"

#include <string>

namespace jcpure {

PurifiedState purify(const BranchSet& b) {
  PurifiedState out;
  out.components = b.psi;
  out.lambda_t = b.lambda_t;
  return out;
}

PurifiedState evolve_artificial(const PurifiedState& state, double lambda_t, double& leaked_mass) {
  const JcPropagator u(lambda_t, state.dim());
  const auto& in = state.components;
  PurifiedState out;
  double leaked = 0.0;
  u.apply(in[0], in[1], out.components[0], out.components[1], leaked);
  u.apply(in[2], in[3], out.components[2], out.components[3], leaked);
  check_leak(leaked, "evolve_artificial");
  leaked_mass += leaked;
  out.lambda_t = state.lambda_t + lambda_t;
  return out;
}

PurifiedState evolve_artificial(const PurifiedState& state, double lambda_t) {
  double leaked = 0.0;
  return evolve_artificial(state, lambda_t, leaked);
}

PurifiedState artificial_hamiltonian_apply(const PurifiedState& state) {
  const auto& in = state.components;
  PurifiedState out;
  out.lambda_t = state.lambda_t;
  out.components[0] = apply_annihilation(in[1]);
  out.components[1] = apply_creation(in[0]);
  out.components[2] = apply_annihilation(in[3]);
  out.components[3] = apply_creation(in[2]);
  return out;
}

SmallHermitian<4> field_overlap_matrix(const BranchSet& b) {
  SmallHermitian<4> p;
  for (int i = 0; i < 4; ++i) {
    p(i, i) = b.psi[std::size_t(i)].norm_squared();
    for (int j = i + 1; j < 4; ++j) {
      p(i, j) = inner(b.psi[std::size_t(i)], b.psi[std::size_t(j)]);
      p(j, i) = std::conj(p(i, j));
    }
  }
  return p;
}

SmallHermitian<4> gram_matrix(const BranchSet& b) {
  return SmallHermitian<4>(field_overlap_matrix(b).matrix().transpose());
}

FieldDensityMatrix partial_trace_artificial(const PurifiedState& state) {
  const auto n = static_cast<Eigen::Index>(state.dim());
  CMatrix columns(n, 4);
  for (Eigen::Index i = 0; i < 4; ++i) columns.col(i) = state.components[std::size_t(i)].amplitudes();
  return FieldDensityMatrix(columns * columns.adjoint());
}

BranchSet branches_of(const PurifiedState& state, Scenario scenario) {
  BranchSet b;
  b.psi = state.components;
  b.scenario = scenario;
  b.lambda_t = state.lambda_t;
  return b;
}

AtomPair parse_atom_pair(std::string_view label) {
  if (label == "ee") return AtomPair::ee;
  if (label == "ge") return AtomPair::ge;
  if (label == "eg") return AtomPair::eg;
  if (label == "gg") return AtomPair::gg;
  throw InvalidLabel("unknown two-atom label '" + std::string(label) + "'");
}

std::string_view to_string(AtomPair label) {
  switch (label) {
    case AtomPair::ee: return "ee";
    case AtomPair::ge: return "ge";
    case AtomPair::eg: return "eg";
    case AtomPair::gg: return "gg";
  }
  throw InvalidLabel("invalid AtomPair value");
}

std::size_t basis_map_two_atom(AtomPair label) {
  // Atom 2 in |e> carries the (A1, A2) JC pair, atom 2 in |g> the (A3, A4) pair;
  // within each pair atom 1 excited comes first.
  switch (label) {
    case AtomPair::ee: return 0;
    case AtomPair::ge: return 1;
    case AtomPair::eg: return 2;
    case AtomPair::gg: return 3;
  }
  throw InvalidLabel("invalid AtomPair value");
}

std::size_t basis_map_two_atom(std::string_view label) { return basis_map_two_atom(parse_atom_pair(label)); }

BasisMap default_basis_map() {
  return {basis_map_two_atom(AtomPair::ee), basis_map_two_atom(AtomPair::ge), basis_map_two_atom(AtomPair::eg),
          basis_map_two_atom(AtomPair::gg)};
}

}  // namespace jcpure
