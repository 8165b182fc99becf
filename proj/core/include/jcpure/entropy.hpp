#pragma once

// von Neumann entropies (in nats) and the Araki-Lieb audit
//
//   |S_A - S_F| <= S_AF <= S_A + S_F.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "jcpure/jc_dynamics.hpp"

namespace jcpure {

template <int D>
struct HermitianEigen {
  std::array<double, D> values;               // descending
  Eigen::Matrix<complex, D, D> vectors;       // columns, matching `values`
  int sweeps = 0;
};

/// Cyclic complex Jacobi rotations until the off-diagonal Frobenius norm drops
/// below 1e-14 (relative to max(1, ||m||_F)). Throws NotHermitian or
/// NoConvergence (more than 60 sweeps).
template <int D>
HermitianEigen<D> eigh(const SmallHermitian<D>& m);

/// Eigenvalues in descending order. d = 2 uses the closed trace/determinant
/// formula, d = 4 uses Jacobi.
std::array<double, 2> eigvals_hermitian(const SmallHermitian<2>& m);
std::array<double, 4> eigvals_hermitian(const SmallHermitian<4>& m);

/// -sum lambda ln lambda with 0 ln 0 = 0. Eigenvalues in [-1e-10, 0) are
/// clamped; anything more negative, or a sum off unity by more than 1e-8,
/// throws InvalidSpectrum.
double von_neumann(std::span<const double> eigenvalues);

struct EntropyRecord {
  double lambda_t = 0.0;
  double S_A = 0.0;                 // real atom, from the 2x2 reduced matrix
  double S_F = 0.0;                 // field, from the field-side 4x4 overlap matrix
  double S_AA = 0.0;                // artificial atom, from rho_AA
  std::optional<double> S_AF;       // composite, only when supplied
  double araki_lower = 0.0;         // |S_A - S_F|
  double araki_upper = 0.0;         // S_A + S_F
};

EntropyRecord entropies_at(const BranchSet& b);

struct ArakiLiebMargins {
  double lower = 0.0;  // S_AF - |S_A - S_F|
  double upper = 0.0;  // S_A + S_F - S_AF
};

/// Checks |S_A - S_F| <= S_AF <= S_A + S_F with slack 1e-8. Throws
/// InequalityViolated on failure; otherwise returns both margins.
ArakiLiebMargins araki_lieb_check(const EntropyRecord& rec, double S_AF);

/// Full Hermitian eigendecomposition of an N x N field density matrix.
std::vector<double> field_spectrum(const FieldDensityMatrix& rho_F);

/// Field entropy by dense diagonalization of rho_F.
double oracle_field_entropy(const FieldDensityMatrix& rho_F);

/// Composite entropy by dense diagonalization of the full 2N x 2N state.
double oracle_composite_entropy(const CMatrix& rho);

/// Composite entropy from the 2x2 overlap matrix of the two evolved mixture
/// members (psi_1, psi_2) and (psi_3, psi_4). Constant in time.
double composite_entropy(const BranchSet& b);

/// (1/2) || a - b ||_1 by dense diagonalization.
double trace_distance(const FieldDensityMatrix& a, const FieldDensityMatrix& b);

/// Tr rho^2.
template <int D>
double purity(const SmallHermitian<D>& m) {
  return m.matrix().cwiseAbs2().sum();
}

}  // namespace jcpure
