#pragma once

// Truncated Fock-space numerics: field states over {|0>, ..., |N-1>}, ladder
// and London phase operators, and diagonal functions of the number operator.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "jcpure/errors.hpp"
#include "jcpure/types.hpp"

namespace jcpure {

/// Complex amplitudes over a truncated number basis.
class FockVector {
 public:
  FockVector() = default;
  explicit FockVector(std::size_t dim);
  explicit FockVector(CVector amplitudes);

  /// The number state |n> in a space of dimension `dim`.
  static FockVector number(std::size_t n, std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  complex operator[](std::size_t n) const { return amps_[static_cast<Eigen::Index>(n)]; }
  complex& operator[](std::size_t n) { return amps_[static_cast<Eigen::Index>(n)]; }

  const CVector& amplitudes() const noexcept { return amps_; }
  CVector& amplitudes() noexcept { return amps_; }

  double norm_squared() const { return amps_.squaredNorm(); }

  /// Probability carried by the top `width` levels.
  double tail_mass(std::size_t width = tol::kTailWidth) const;

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector& operator*=(complex factor);

  friend FockVector operator+(FockVector lhs, const FockVector& rhs) { return lhs += rhs; }
  friend FockVector operator-(FockVector lhs, const FockVector& rhs) { return lhs -= rhs; }
  friend FockVector operator*(complex factor, FockVector v) { return v *= factor; }
  friend FockVector operator*(FockVector v, complex factor) { return v *= factor; }

 private:
  CVector amps_;
};

/// f(n^) stored as its values f(0..N-1).
class DiagonalOperator {
 public:
  DiagonalOperator() = default;
  explicit DiagonalOperator(Eigen::VectorXd values);

  static DiagonalOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t n) const { return values_[static_cast<Eigen::Index>(n)]; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  FockVector apply(const FockVector& v) const;
  FockVector operator()(const FockVector& v) const { return apply(v); }

  /// Product of two diagonal operators (they commute).
  friend DiagonalOperator operator*(const DiagonalOperator& a, const DiagonalOperator& b);
  friend DiagonalOperator operator+(const DiagonalOperator& a, const DiagonalOperator& b);

 private:
  Eigen::VectorXd values_;
};

/// Builds f(n^) from a real map over n. Throws NonFiniteValue if f is not finite on 0..N-1.
template <class F>
DiagonalOperator diag_func(F&& f, std::size_t dim) {
  Eigen::VectorXd values(static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < dim; ++n) {
    const double value = f(n);
    if (!std::isfinite(value)) {
      throw NonFiniteValue("diag_func: f(" + std::to_string(n) + ") is not finite");
    }
    values[static_cast<Eigen::Index>(n)] = value;
  }
  return DiagonalOperator(std::move(values));
}

/// cos(lambda_t sqrt(n+1)), sin(lambda_t sqrt(n+1)), cos(lambda_t sqrt(n)).
DiagonalOperator cos_sqrt_n_plus_1(double lambda_t, std::size_t dim);
DiagonalOperator sin_sqrt_n_plus_1(double lambda_t, std::size_t dim);
DiagonalOperator cos_sqrt_n(double lambda_t, std::size_t dim);

/// Coherent state via c_{n+1} = c_n alpha / sqrt(n+1), c_0 = exp(-|alpha|^2 / 2).
/// Throws TruncationTooSmall when the tail mass is not below tol::kTailMass.
FockVector coherent(complex alpha, std::size_t dim);

/// Smallest truncation >= `minimum` (default 128) whose coherent tail for `alpha` is acceptable.
std::size_t choose_truncation(complex alpha, std::size_t minimum = 128);

// Ladder operators. Raising operators drop the top amplitude; its probability is
// added to `leaked_mass` when supplied.
FockVector apply_annihilation(const FockVector& v);
FockVector apply_creation(const FockVector& v);
FockVector apply_creation(const FockVector& v, double& leaked_mass);

/// London phase operator V = (n+1)^{-1/2} a: V|n> = |n-1>, V|0> = 0.
FockVector apply_V(const FockVector& v);
/// V^dagger |n> = |n+1>.
FockVector apply_V_dagger(const FockVector& v);
FockVector apply_V_dagger(const FockVector& v, double& leaked_mass);

/// <u|v>, antilinear in u. Throws DimensionMismatch.
complex inner(const FockVector& u, const FockVector& v);

/// Mean photon number sum_n n |c_n|^2.
double mean_photon_number(const FockVector& v);

}  // namespace jcpure
