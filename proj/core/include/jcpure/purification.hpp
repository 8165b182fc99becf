#pragma once

// Purification of the evolved mixture into a pure state of the field and a
// four-level artificial atom |A_1>..|A_4>:
//
//   |psi> = sum_i |psi_i> |A_i>
//
// generated by H = lambda a (|A1><A2| + |A3><A4|) + lambda a^+ (|A2><A1| + |A4><A3|).

#include <array>
#include <cstddef>
#include <string_view>

#include "jcpure/jc_dynamics.hpp"

namespace jcpure {

/// Field vectors on |A_1>..|A_4> (component index i holds |A_{i+1}>).
using PurifiedState = HybridState<4>;

/// Places psi_i on |A_i>.
PurifiedState purify(const BranchSet& b);

/// Two copies of the JC block acting on (A1, A2) and (A3, A4).
PurifiedState evolve_artificial(const PurifiedState& state, double lambda_t);
PurifiedState evolve_artificial(const PurifiedState& state, double lambda_t, double& leaked_mass);

/// H / lambda applied once.
PurifiedState artificial_hamiltonian_apply(const PurifiedState& state);

/// rho_AA with entry (i, j) = <psi_j|psi_i>, i.e. P_ij^* above the diagonal and
/// P_ji below it, where P_ij = <psi_i|psi_j>.
SmallHermitian<4> gram_matrix(const BranchSet& b);

/// Field-side overlap matrix with entry (i, j) = P_ij = <psi_i|psi_j>. Its
/// spectrum is the nonzero spectrum of rho_F.
SmallHermitian<4> field_overlap_matrix(const BranchSet& b);

/// Tr_A |psi><psi| computed from the purified state.
FieldDensityMatrix partial_trace_artificial(const PurifiedState& state);

/// Reads a purified state back as a branch set.
BranchSet branches_of(const PurifiedState& state, Scenario scenario);

// Two-atom product basis, labelled (atom 1, atom 2).
enum class AtomPair { ee, ge, eg, gg };

/// Parses "ee", "ge", "eg" or "gg". Throws InvalidLabel.
AtomPair parse_atom_pair(std::string_view label);
std::string_view to_string(AtomPair label);

/// Artificial-atom index (0-based, 0 = A_1) for a two-atom label:
/// ee -> A1, ge -> A2, eg -> A3, gg -> A4.
std::size_t basis_map_two_atom(AtomPair label);
std::size_t basis_map_two_atom(std::string_view label);

/// Full relabelling table, indexed by AtomPair. Tests may swap entries to
/// build a corrupted mapping.
using BasisMap = std::array<std::size_t, 4>;
BasisMap default_basis_map();

}  // namespace jcpure
