#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library's solvers or propagators.

#include <array>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "jcpure/fock.hpp"
#include "jcpure/observables.hpp"

namespace oracle {

using jcpure::CMatrix;
using jcpure::complex;
using jcpure::CVector;
using Matrix4c = Eigen::Matrix<complex, 4, 4>;

// Characteristic polynomial det(z - m) = z^4 + c[3] z^3 + ... + c[0] by
// Faddeev-LeVerrier, then Durand-Kerner with Newton polishing. Roots are
// returned as sorted real parts (descending).
std::array<complex, 4> characteristic_coefficients(const Matrix4c& m);
std::array<double, 4> charpoly_eigenvalues(const Matrix4c& m);

// Dense 2N x 2N JC Hamiltonian (over lambda) on (|e,0..N-1>, |g,0..N-1>) and
// its propagator exp(-i lambda_t H) from Eigen's MatrixFunctions module.
CMatrix dense_jc_hamiltonian(std::size_t dim);
CMatrix dense_jc_propagator(double lambda_t, std::size_t dim);

// Same thing for the artificial atom (4N x 4N, A1..A4 blocks).
CMatrix dense_artificial_hamiltonian(std::size_t dim);

// Reference matrix exponential from Eigen's MatrixFunctions module.
CMatrix eigen_expm(const CMatrix& a);

// Poisson weight e^{-mean} mean^n / n! in the log domain.
double poisson(double mean, std::size_t n);

// <alpha|beta> for coherent states in infinite dimension.
complex coherent_overlap(complex alpha, complex beta);

// Coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!) computed through lgamma.
CVector coherent_direct(complex alpha, std::size_t dim);

// (excited |0>, ground |1>) amplitudes of the vacuum Rabi problem.
std::array<complex, 2> vacuum_rabi(double lambda_t);

// sum_n P_n cos(2 lambda_t sqrt(n + 1)) for an excited atom.
double inversion_series_excited(const std::vector<double>& probs, double lambda_t);

// Random inputs.
Matrix4c random_hermitian4(std::mt19937_64& rng, double scale = 1.0);
Matrix4c random_unitary4(std::mt19937_64& rng);
Matrix4c random_density4(std::mt19937_64& rng);
jcpure::FockVector random_fock(std::mt19937_64& rng, std::size_t dim, std::size_t support);

// Number of strict sign changes of the first difference.
int count_local_extrema(const std::vector<double>& values);

struct Region {
  std::size_t cells = 0;
  double min_radius = 0.0;  // smallest sqrt(x^2 + p^2) over the region
  double peak = 0.0;
  double peak_x = 0.0;
  double peak_p = 0.0;
};

// 4-connected components of {W > threshold}.
std::vector<Region> superthreshold_regions(const jcpure::PhaseSpaceGrid& grid, double threshold);

}  // namespace oracle
