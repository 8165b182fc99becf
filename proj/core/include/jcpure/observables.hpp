#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "jcpure/jc_dynamics.hpp"

namespace jcpure {

/// P_e - P_g from branch norms. Rows (psi_1, psi_3) are excited, (psi_2, psi_4) ground.
double atomic_inversion(const BranchSet& b);

/// Inversion from the initial photon statistics:
///   sum_n P_n [C cos(2 lambda t sqrt(n+1)) - (1 - C) cos(2 lambda t sqrt(n))]
/// where C is the initial excited-state population of the atom.
double inversion_series(std::span<const double> initial_photon_probs, double lambda_t, double excited_weight = 1.0);

std::vector<double> photon_distribution(const FieldDensityMatrix& rho_F);
std::vector<double> photon_distribution(const BranchSet& b);

/// Tr rho_F^2 = sum_ij |<psi_i|psi_j>|^2.
double field_purity(const BranchSet& b);

/// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);
CMatrix expm(const CMatrix& a);

/// gamma a^+ - gamma^* a on {|0>, ..., |dim-1>}.
CMatrix displacement_generator(complex gamma, std::size_t dim);

/// Truncated displacement operator exp(gamma a^+ - gamma^* a).
CMatrix displacement(complex gamma, std::size_t dim);

inline constexpr std::string_view kWignerConvention = "wigner=displaced-parity, hbar=1, x=sqrt2*Re(gamma)";

struct WignerGridSpec {
  double x_min = -8.0;
  double x_max = 8.0;
  double p_min = -8.0;
  double p_max = 8.0;
  std::size_t resolution = 201;
  // Minimum padded dimension; the required N + 4 ceil(|gamma_max|^2) is always enforced.
  std::size_t padded_dim = 0;
  unsigned threads = 0;
};

/// Wigner function sampled on a uniform (x, p) grid, values stored as values[ix * resolution + ip].
struct PhaseSpaceGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  std::size_t resolution = 0;
  std::vector<double> values;
  double imaginary_residue = 0.0;  // bound on |Im W| from the anti-Hermitian part of the input
  double leaked_mass = 0.0;        // largest displaced-state mass in the top padded levels
  std::size_t padded_dim = 0;

  double x(std::size_t ix) const;
  double p(std::size_t ip) const;
  double dx() const;
  double dp() const;
  double at(std::size_t ix, std::size_t ip) const { return values[ix * resolution + ip]; }

  /// sum W dx dp
  double integral() const;
  /// 2 pi sum W^2 dx dp, which approximates Tr rho^2.
  double purity() const;
};

/// W(x, p) = (1/pi) Tr[rho D(gamma) Pi D^+(gamma)], gamma = (x + i p) / sqrt(2), with
/// the displacement built by matrix exponentiation at the padded dimension.
/// Rows of the grid are evaluated in parallel. Throws TruncationTooSmall if a
/// displaced state reaches the top padded levels, InvalidSpectrum if rho is
/// not a density matrix.
PhaseSpaceGrid wigner(const FieldDensityMatrix& rho_F, const WignerGridSpec& spec = {});

/// Required padded dimension for a grid.
std::size_t wigner_padded_dim(std::size_t dim, const WignerGridSpec& spec);

}  // namespace jcpure
