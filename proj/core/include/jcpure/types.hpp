#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace jcpure {

using complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr complex kI{0.0, 1.0};

namespace tol {
// Tail mass allowed in the top `kTailWidth` Fock levels of a physical state.
inline constexpr double kTailMass = 1e-14;
inline constexpr std::size_t kTailWidth = 8;
// Mass discarded at the truncation edge during one evolution call.
inline constexpr double kLeakedMass = 1e-12;
inline constexpr double kNormalization = 1e-12;
// Eigenvalues in [-kEigenClamp, 0) are rounding and are clamped to zero.
inline constexpr double kEigenClamp = 1e-10;
}  // namespace tol

}  // namespace jcpure
