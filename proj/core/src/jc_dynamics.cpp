#include "jcpure/jc_dynamics.hpp"

#include <cmath>
#include <sstream>

namespace jcpure {

namespace {

void require_weight(double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw InvalidArgument("mixture weight C must lie in [0, 1]");
}

}  // namespace

void check_leak(double leaked_mass, const char* where) {
  if (leaked_mass > tol::kLeakedMass) {
    std::ostringstream msg;
    msg << where << ": " << leaked_mass << " probability leaked past the Fock truncation";
    throw TruncationTooSmall(msg.str());
  }
}

double BranchSet::total_probability() const {
  double total = 0.0;
  for (const auto& p : psi) total += p.norm_squared();
  return total;
}

JcPropagator::JcPropagator(double lambda_t, std::size_t dim)
    : lambda_t_(lambda_t),
      cos_np1_(cos_sqrt_n_plus_1(lambda_t, dim)),
      sin_np1_(sin_sqrt_n_plus_1(lambda_t, dim)),
      cos_n_(cos_sqrt_n(lambda_t, dim)) {}

void JcPropagator::apply(const FockVector& excited, const FockVector& ground, FockVector& out_excited,
                         FockVector& out_ground, double& leaked_mass) const {
  out_excited = cos_np1_(excited) - kI * sin_np1_(apply_V(ground));
  out_ground = -kI * apply_V_dagger(sin_np1_(excited), leaked_mass) + cos_n_(ground);
}

AtomFieldState evolve_jc(const AtomFieldState& state, double lambda_t, double& leaked_mass) {
  const JcPropagator u(lambda_t, state.dim());
  AtomFieldState out;
  double leaked = 0.0;
  u.apply(state.components[0], state.components[1], out.components[0], out.components[1], leaked);
  check_leak(leaked, "evolve_jc");
  leaked_mass += leaked;
  out.lambda_t = state.lambda_t + lambda_t;
  return out;
}

AtomFieldState evolve_jc(const AtomFieldState& state, double lambda_t) {
  double leaked = 0.0;
  return evolve_jc(state, lambda_t, leaked);
}

BranchSet branches_field_mixture(double weight, const FockVector& alpha_state, const FockVector& beta_state,
                                 const JcPropagator& u) {
  require_weight(weight);
  const double a = std::sqrt(weight);
  const double b = std::sqrt(1.0 - weight);

  BranchSet out;
  out.scenario = Scenario::FieldMixture;
  out.lambda_t = u.lambda_t();
  double leaked_alpha = 0.0;
  double leaked_beta = 0.0;
  out.psi[0] = a * u.cos_n_plus_1()(alpha_state);
  out.psi[1] = (-kI * a) * apply_V_dagger(u.sin_n_plus_1()(alpha_state), leaked_alpha);
  out.psi[2] = b * u.cos_n_plus_1()(beta_state);
  out.psi[3] = (-kI * b) * apply_V_dagger(u.sin_n_plus_1()(beta_state), leaked_beta);
  out.leaked_mass = weight * leaked_alpha + (1.0 - weight) * leaked_beta;
  check_leak(out.leaked_mass, "branches_field_mixture");
  return out;
}

BranchSet branches_field_mixture(double weight, complex alpha, complex beta, double lambda_t, std::size_t dim) {
  return branches_field_mixture(weight, coherent(alpha, dim), coherent(beta, dim), JcPropagator(lambda_t, dim));
}

BranchSet branches_atom_mixture(double weight, const FockVector& alpha_state, const JcPropagator& u) {
  require_weight(weight);
  const double a = std::sqrt(weight);
  const double b = std::sqrt(1.0 - weight);

  BranchSet out;
  out.scenario = Scenario::AtomMixture;
  out.lambda_t = u.lambda_t();
  double leaked = 0.0;
  out.psi[0] = a * u.cos_n_plus_1()(alpha_state);
  out.psi[1] = (-kI * a) * apply_V_dagger(u.sin_n_plus_1()(alpha_state), leaked);
  // sin(lambda t sqrt(a a^+)) acts after V; the ground branch carries sqrt(a^+ a) = sqrt(n).
  out.psi[2] = (-kI * b) * u.sin_n_plus_1()(apply_V(alpha_state));
  out.psi[3] = b * u.cos_n()(alpha_state);
  out.leaked_mass = weight * leaked;
  check_leak(out.leaked_mass, "branches_atom_mixture");
  return out;
}

BranchSet branches_atom_mixture(double weight, complex alpha, double lambda_t, std::size_t dim) {
  return branches_atom_mixture(weight, coherent(alpha, dim), JcPropagator(lambda_t, dim));
}

SmallHermitian<2> reduced_atom(const BranchSet& b) {
  const auto& p = b.psi;
  SmallHermitian<2> rho;
  rho(0, 0) = p[0].norm_squared() + p[2].norm_squared();
  rho(1, 1) = p[1].norm_squared() + p[3].norm_squared();
  rho(1, 0) = inner(p[0], p[1]) + inner(p[2], p[3]);
  rho(0, 1) = std::conj(rho(1, 0));
  return rho;
}

FieldDensityMatrix::FieldDensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw DimensionMismatch("FieldDensityMatrix: matrix is not square");
}

FieldDensityMatrix field_density(const BranchSet& b) {
  const auto n = static_cast<Eigen::Index>(b.dim());
  CMatrix rho = CMatrix::Zero(n, n);
  for (const auto& p : b.psi) rho.noalias() += p.amplitudes() * p.amplitudes().adjoint();
  return FieldDensityMatrix(std::move(rho));
}

CMatrix full_density_2level(const BranchSet& b) {
  const auto n = static_cast<Eigen::Index>(b.dim());
  const auto& p = b.psi;
  auto outer = [](const FockVector& u, const FockVector& v) -> CMatrix {
    return u.amplitudes() * v.amplitudes().adjoint();
  };
  CMatrix rho(2 * n, 2 * n);
  rho.topLeftCorner(n, n) = outer(p[0], p[0]) + outer(p[2], p[2]);
  rho.topRightCorner(n, n) = outer(p[0], p[1]) + outer(p[2], p[3]);
  rho.bottomLeftCorner(n, n) = outer(p[1], p[0]) + outer(p[3], p[2]);
  rho.bottomRightCorner(n, n) = outer(p[1], p[1]) + outer(p[3], p[3]);
  return rho;
}

}  // namespace jcpure
