#pragma once

// Resonant Jaynes-Cummings evolution in the interaction picture. Everything is
// evaluated in closed form per photon-number block: the evolution operator is
//
//   U(lambda t) = [ C_{n+1}          -i S_{n+1} V ]
//                 [ -i V^+ S_{n+1}    C_n         ]
//
// acting on (excited, ground) field components.

#include <array>
#include <cstddef>

#include "jcpure/fock.hpp"
#include "jcpure/types.hpp"

namespace jcpure {

/// Field vectors attached to the D atomic basis states.
template <std::size_t D>
struct HybridState {
  std::array<FockVector, D> components;
  double lambda_t = 0.0;

  static HybridState zero(std::size_t dim) {
    HybridState s;
    for (auto& c : s.components) c = FockVector(dim);
    return s;
  }

  std::size_t dim() const noexcept { return components[0].dim(); }

  double norm_squared() const {
    double total = 0.0;
    for (const auto& c : components) total += c.norm_squared();
    return total;
  }
};

/// Real atom: component 0 is |e>, component 1 is |g>.
using AtomFieldState = HybridState<2>;

/// Dense d x d complex Hermitian matrix (reduced atomic states, Gram matrices).
template <int D>
class SmallHermitian {
 public:
  using Matrix = Eigen::Matrix<complex, D, D>;

  SmallHermitian() : m_(Matrix::Zero()) {}
  explicit SmallHermitian(const Matrix& m) : m_(m) {}

  static constexpr int size() { return D; }

  complex operator()(int i, int j) const { return m_(i, j); }
  complex& operator()(int i, int j) { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  double trace() const { return m_.trace().real(); }

  /// max |m_ij - conj(m_ji)|
  double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

 private:
  Matrix m_;
};

/// Which mixed initial state the branch set was evolved from.
enum class Scenario {
  FieldMixture,  // (C|alpha><alpha| + (1-C)|beta><beta|) |e><e|
  AtomMixture,   // (C|e><e| + (1-C)|g><g|) |alpha><alpha|
};

/// The four unnormalized branch wavefunctions psi_1..psi_4 of the evolved mixture.
/// psi_1, psi_2 (psi_3, psi_4) are the excited and ground parts of the first
/// (second) mixture member.
struct BranchSet {
  std::array<FockVector, 4> psi;
  Scenario scenario = Scenario::FieldMixture;
  double lambda_t = 0.0;
  double leaked_mass = 0.0;

  std::size_t dim() const noexcept { return psi[0].dim(); }
  double total_probability() const;
};

/// Precomputed C_{n+1}, S_{n+1}, C_n for one value of lambda t. Immutable and
/// safe to share across threads.
class JcPropagator {
 public:
  JcPropagator(double lambda_t, std::size_t dim);

  double lambda_t() const noexcept { return lambda_t_; }
  std::size_t dim() const noexcept { return cos_np1_.dim(); }

  const DiagonalOperator& cos_n_plus_1() const noexcept { return cos_np1_; }
  const DiagonalOperator& sin_n_plus_1() const noexcept { return sin_np1_; }
  const DiagonalOperator& cos_n() const noexcept { return cos_n_; }

  /// Applies the 2x2 block to (excited, ground). Mass pushed past the
  /// truncation edge by V^+ is added to `leaked_mass`.
  void apply(const FockVector& excited, const FockVector& ground, FockVector& out_excited,
             FockVector& out_ground, double& leaked_mass) const;

 private:
  double lambda_t_;
  DiagonalOperator cos_np1_;
  DiagonalOperator sin_np1_;
  DiagonalOperator cos_n_;
};

/// Exact JC evolution of a pure atom-field state by lambda_t (absolute, not incremental).
/// Throws TruncationTooSmall when more than tol::kLeakedMass is lost at the edge.
AtomFieldState evolve_jc(const AtomFieldState& state, double lambda_t);
AtomFieldState evolve_jc(const AtomFieldState& state, double lambda_t, double& leaked_mass);

/// Branches for the field mixture C|alpha><alpha| + (1-C)|beta><beta| with the atom excited.
BranchSet branches_field_mixture(double weight, complex alpha, complex beta, double lambda_t, std::size_t dim);
BranchSet branches_field_mixture(double weight, const FockVector& alpha_state, const FockVector& beta_state,
                                 const JcPropagator& propagator);

/// Branches for the atomic mixture C|e><e| + (1-C)|g><g| with the field coherent.
BranchSet branches_atom_mixture(double weight, complex alpha, double lambda_t, std::size_t dim);
BranchSet branches_atom_mixture(double weight, const FockVector& alpha_state, const JcPropagator& propagator);

/// 2x2 reduced atomic density matrix, rows/columns ordered (e, g).
SmallHermitian<2> reduced_atom(const BranchSet& b);

/// N x N reduced field density matrix, sum_i |psi_i><psi_i|.
class FieldDensityMatrix {
 public:
  FieldDensityMatrix() = default;
  explicit FieldDensityMatrix(CMatrix rho);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const CMatrix& matrix() const noexcept { return rho_; }
  double trace() const { return rho_.trace().real(); }

 private:
  CMatrix rho_;
};

FieldDensityMatrix field_density(const BranchSet& b);

/// Full atom-field density matrix, 2N x 2N with blocks [[ee, eg], [ge, gg]].
/// Only meant for oracle checks.
CMatrix full_density_2level(const BranchSet& b);

/// Throws TruncationTooSmall if `leaked_mass` exceeds tol::kLeakedMass.
void check_leak(double leaked_mass, const char* where);

}  // namespace jcpure
