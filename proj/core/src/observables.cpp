#include "jcpure/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#if defined(__SSE__)
#include <xmmintrin.h>
#endif

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "jcpure/parallel.hpp"
#include "jcpure/purification.hpp"

namespace jcpure {

namespace {

// The far tails of displaced Fock columns underflow into subnormals, which
// are very slow on x86. Flush them to zero for the duration of a scope.
class FlushDenormals {
 public:
  FlushDenormals() {
#if defined(__SSE__)
    saved_ = _mm_getcsr();
    _mm_setcsr(saved_ | 0x8040);
#endif
  }
  ~FlushDenormals() {
#if defined(__SSE__)
    _mm_setcsr(saved_);
#endif
  }
  FlushDenormals(const FlushDenormals&) = delete;
  FlushDenormals& operator=(const FlushDenormals&) = delete;

 private:
  unsigned saved_ = 0;
};

}  // namespace

double atomic_inversion(const BranchSet& b) {
  const auto& p = b.psi;
  const double up = p[0].norm_squared() + p[2].norm_squared();
  const double down = p[1].norm_squared() + p[3].norm_squared();
  // Normalized by the trace so a pure |e> branch gives exactly 1.
  const double total = up + down;
  return total > 0.0 ? (up - down) / total : 0.0;
}

double inversion_series(std::span<const double> initial_photon_probs, double lambda_t, double excited_weight) {
  double w = 0.0;
  for (std::size_t n = 0; n < initial_photon_probs.size(); ++n) {
    const double up = std::cos(2.0 * lambda_t * std::sqrt(double(n) + 1.0));
    const double down = std::cos(2.0 * lambda_t * std::sqrt(double(n)));
    w += initial_photon_probs[n] * (excited_weight * up - (1.0 - excited_weight) * down);
  }
  return w;
}

std::vector<double> photon_distribution(const FieldDensityMatrix& rho_F) {
  const Eigen::VectorXd diag = rho_F.matrix().diagonal().real();
  return {diag.data(), diag.data() + diag.size()};
}

std::vector<double> photon_distribution(const BranchSet& b) {
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.dim()));
  for (const auto& p : b.psi) probs += p.amplitudes().cwiseAbs2();
  return {probs.data(), probs.data() + probs.size()};
}

double field_purity(const BranchSet& b) { return field_overlap_matrix(b).matrix().cwiseAbs2().sum(); }

namespace {

// Higham (2005) degree-13 coefficients.
constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
                              129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
                              1323241920.0,        40840800.0,          960960.0,           16380.0,
                              182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

template <class Matrix>
Matrix expm_pade13(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("expm: matrix is not square");
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw NonFiniteValue("expm: matrix has non-finite entries");
  if (norm1 == 0.0) return Matrix::Identity(a.rows(), a.cols());
  const int squarings = norm1 > kTheta13 ? int(std::ceil(std::log2(norm1 / kTheta13))) : 0;

  const Matrix x = a / std::ldexp(1.0, squarings);
  const Matrix ident = Matrix::Identity(a.rows(), a.cols());
  const Matrix x2 = x * x;
  const Matrix x4 = x2 * x2;
  const Matrix x6 = x4 * x2;
  const auto& b = kPade13;

  const Matrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2);
  const Matrix u = x * (u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * ident);
  const Matrix v_inner = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2);
  const Matrix v = v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * ident;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = (r * r).eval();
  return r;
}

// Dense a^+ - a; the real generator of displacements along x.
Eigen::MatrixXd creation_minus_annihilation(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double s = std::sqrt(double(k) + 1.0);
    g(k + 1, k) = s;
    g(k, k + 1) = -s;
  }
  return g;
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) { return expm_pade13(a); }
CMatrix expm(const CMatrix& a) { return expm_pade13(a); }

CMatrix displacement_generator(complex gamma, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix g = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double s = std::sqrt(double(k) + 1.0);
    g(k + 1, k) = gamma * s;
    g(k, k + 1) = -std::conj(gamma) * s;
  }
  return g;
}

CMatrix displacement(complex gamma, std::size_t dim) { return expm(displacement_generator(gamma, dim)); }

double PhaseSpaceGrid::dx() const { return resolution > 1 ? (x_max - x_min) / double(resolution - 1) : 0.0; }
double PhaseSpaceGrid::dp() const { return resolution > 1 ? (p_max - p_min) / double(resolution - 1) : 0.0; }
double PhaseSpaceGrid::x(std::size_t ix) const { return x_min + double(ix) * dx(); }
double PhaseSpaceGrid::p(std::size_t ip) const { return p_min + double(ip) * dp(); }

double PhaseSpaceGrid::integral() const {
  double sum = 0.0;
  for (double w : values) sum += w;
  return sum * dx() * dp();
}

double PhaseSpaceGrid::purity() const {
  double sum = 0.0;
  for (double w : values) sum += w * w;
  return 2.0 * std::numbers::pi * sum * dx() * dp();
}

std::size_t wigner_padded_dim(std::size_t dim, const WignerGridSpec& spec) {
  double gamma_max_sq = 0.0;
  for (double x : {spec.x_min, spec.x_max})
    for (double p : {spec.p_min, spec.p_max}) gamma_max_sq = std::max(gamma_max_sq, 0.5 * (x * x + p * p));
  const std::size_t required = dim + 4 * static_cast<std::size_t>(std::ceil(gamma_max_sq));
  return std::max(required, spec.padded_dim);
}

PhaseSpaceGrid wigner(const FieldDensityMatrix& rho_F, const WignerGridSpec& spec) {
  if (spec.resolution == 0) throw InvalidArgument("wigner: resolution must be at least 1");
  if (!(spec.x_max >= spec.x_min && spec.p_max >= spec.p_min)) throw InvalidArgument("wigner: empty grid bounds");

  const CMatrix& rho = rho_F.matrix();
  const auto dim = static_cast<Eigen::Index>(rho_F.dim());

  PhaseSpaceGrid grid;
  grid.x_min = spec.x_min;
  grid.x_max = spec.x_max;
  grid.p_min = spec.p_min;
  grid.p_max = spec.p_max;
  grid.resolution = spec.resolution;
  grid.values.assign(spec.resolution * spec.resolution, 0.0);

  // Only the Hermitian part enters the factorization; the anti-Hermitian part
  // bounds the imaginary component that gets discarded.
  const CMatrix anti = 0.5 * (rho - rho.adjoint());
  if (anti.cwiseAbs().maxCoeff() > 0.0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> anti_solver(complex(0.0, -1.0) * anti, Eigen::EigenvaluesOnly);
    grid.imaginary_residue = anti_solver.eigenvalues().cwiseAbs().sum() / std::numbers::pi;
  }
  if (grid.imaginary_residue > 1e-10) throw NotHermitian("wigner: density matrix is not Hermitian");

  // rho = L L^+ over the numerically nonzero spectrum.
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (rho + rho.adjoint()));
  if (solver.info() != Eigen::Success) throw NoConvergence("wigner: eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  if (ev.minCoeff() < -tol::kEigenClamp) throw InvalidSpectrum("wigner: density matrix is not positive semidefinite");
  if (std::abs(ev.sum() - 1.0) > 1e-8) throw InvalidSpectrum("wigner: density matrix trace is not one");

  const double keep = 1e-15 * ev.maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev[k] > keep) kept.push_back(k);
  const auto rank = static_cast<Eigen::Index>(kept.size());

  grid.padded_dim = wigner_padded_dim(rho_F.dim(), spec);
  const auto pad = static_cast<Eigen::Index>(grid.padded_dim);
  CMatrix factors = CMatrix::Zero(pad, rank);
  for (Eigen::Index c = 0; c < rank; ++c)
    factors.col(c).head(dim) = std::sqrt(ev[kept[std::size_t(c)]]) * solver.eigenvectors().col(kept[std::size_t(c)]);

  // D(-gamma) = D(-x/sqrt2) D(-i p/sqrt2) up to a phase, which drops out of the
  // parity expectation. Steps along x are real orthogonal matrices.
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Eigen::MatrixXd x_generator = creation_minus_annihilation(grid.padded_dim);
  const Eigen::MatrixXd shift_x0 = expm(Eigen::MatrixXd(-spec.x_min * inv_sqrt2 * x_generator));
  const Eigen::MatrixXd step_x = expm(Eigen::MatrixXd(-grid.dx() * inv_sqrt2 * x_generator));
  const CMatrix shift_p0 = displacement(complex(0.0, -spec.p_min * inv_sqrt2), grid.padded_dim);
  const CMatrix step_p = displacement(complex(0.0, -grid.dp() * inv_sqrt2), grid.padded_dim);

  Eigen::VectorXd parity(pad);
  for (Eigen::Index n = 0; n < pad; ++n) parity[n] = (n % 2 == 0) ? 1.0 : -1.0;
  const auto top = static_cast<Eigen::Index>(std::min<std::size_t>(tol::kTailWidth, grid.padded_dim));
  const std::size_t res = spec.resolution;

  // Columns j*rank .. j*rank+rank-1 hold D(-i p_j / sqrt2) L.
  CMatrix columns(pad, Eigen::Index(res) * rank);
  {
    const FlushDenormals ftz;
    CMatrix cur = shift_p0 * factors;
    for (std::size_t j = 0; j < res; ++j) {
      columns.middleCols(Eigen::Index(j) * rank, rank) = cur;
      if (j + 1 < res) cur = (step_p * cur).eval();
    }
  }

  // The x sweep runs over fixed groups of p columns so the arithmetic, and
  // therefore the output, does not depend on the thread count.
  constexpr std::size_t kGroup = 32;
  const std::size_t groups = (res + kGroup - 1) / kGroup;
  std::vector<double> group_leak(groups, 0.0);
  parallel_for(groups, spec.threads, [&](std::size_t g) {
    const FlushDenormals ftz;
    const std::size_t p_begin = g * kGroup;
    const auto count = static_cast<Eigen::Index>(std::min(kGroup, res - p_begin));
    const auto block = columns.middleCols(Eigen::Index(p_begin) * rank, count * rank);

    Eigen::MatrixXd re = shift_x0 * block.real();
    Eigen::MatrixXd im = shift_x0 * block.imag();
    double leak = 0.0;
    for (std::size_t ix = 0; ix < res; ++ix) {
      const Eigen::RowVectorXd weights = parity.transpose() * (re.cwiseAbs2() + im.cwiseAbs2());
      const Eigen::RowVectorXd tails =
          re.bottomRows(top).cwiseAbs2().colwise().sum() + im.bottomRows(top).cwiseAbs2().colwise().sum();
      for (Eigen::Index j = 0; j < count; ++j) {
        grid.values[ix * res + p_begin + std::size_t(j)] = weights.segment(j * rank, rank).sum() / std::numbers::pi;
        leak = std::max(leak, tails.segment(j * rank, rank).sum());
      }
      if (ix + 1 < res) {
        re = (step_x * re).eval();
        im = (step_x * im).eval();
      }
    }
    group_leak[g] = leak;
  });

  for (double leak : group_leak) grid.leaked_mass = std::max(grid.leaked_mass, leak);
  if (grid.leaked_mass > tol::kLeakedMass) {
    std::ostringstream msg;
    msg << "wigner: displaced state reaches the padded edge (mass " << grid.leaked_mass << ", padded N "
        << grid.padded_dim << ")";
    throw TruncationTooSmall(msg.str());
  }
  return grid;
}

}  // namespace jcpure
