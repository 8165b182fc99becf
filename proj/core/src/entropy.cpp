#include "jcpure/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "jcpure/purification.hpp"

namespace jcpure {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagonalTarget = 1e-14;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kSpectrumSumTolerance = 1e-8;
constexpr double kArakiLiebSlack = 1e-8;

template <int D>
void require_hermitian(const SmallHermitian<D>& m) {
  const double scale = std::max(1.0, m.matrix().norm());
  const double err = m.hermiticity_error();
  if (!(err <= kHermitianTolerance * scale)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |m - m^+| = " << err << ")";
    throw NotHermitian(msg.str());
  }
}

template <int D>
double off_diagonal_norm(const Eigen::Matrix<complex, D, D>& a) {
  double sum = 0.0;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

template <int D>
HermitianEigen<D> eigh(const SmallHermitian<D>& m) {
  using Matrix = Eigen::Matrix<complex, D, D>;
  require_hermitian(m);

  Matrix a = 0.5 * (m.matrix() + m.matrix().adjoint());
  Matrix v = Matrix::Identity();
  const double target = kOffDiagonalTarget * std::max(1.0, a.norm());

  int sweep = 0;
  while (off_diagonal_norm<D>(a) >= target) {
    if (sweep == kMaxSweeps) throw NoConvergence("eigh: Jacobi exceeded sweep budget");
    ++sweep;
    for (int p = 0; p < D - 1; ++p) {
      for (int q = p + 1; q < D; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Phase out a_pq, then a real rotation annihilates it.
        const complex phase = a(p, q) / r;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        Matrix u = Matrix::Identity();
        u(p, p) = c;
        u(p, q) = s;
        u(q, p) = -s * std::conj(phase);
        u(q, q) = c * std::conj(phase);

        a = (u.adjoint() * a * u).eval();
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = (v * u).eval();
      }
    }
  }

  std::array<int, D> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEigen<D> out;
  out.sweeps = sweep;
  for (int k = 0; k < D; ++k) {
    out.values[std::size_t(k)] = a(order[std::size_t(k)], order[std::size_t(k)]).real();
    out.vectors.col(k) = v.col(order[std::size_t(k)]);
  }
  return out;
}

template HermitianEigen<2> eigh<2>(const SmallHermitian<2>&);
template HermitianEigen<4> eigh<4>(const SmallHermitian<4>&);

std::array<double, 2> eigvals_hermitian(const SmallHermitian<2>& m) {
  require_hermitian(m);
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b = 0.5 * std::abs(m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean + radius, mean - radius};
}

std::array<double, 4> eigvals_hermitian(const SmallHermitian<4>& m) { return eigh(m).values; }

double von_neumann(std::span<const double> eigenvalues) {
  double sum = 0.0;
  double entropy = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -tol::kEigenClamp) {
      std::ostringstream msg;
      msg << "von_neumann: eigenvalue " << lambda << " is below the clamp threshold";
      throw InvalidSpectrum(msg.str());
    }
    sum += lambda;
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  }
  if (!(std::abs(sum - 1.0) <= kSpectrumSumTolerance)) {
    std::ostringstream msg;
    msg << "von_neumann: eigenvalues sum to " << sum;
    throw InvalidSpectrum(msg.str());
  }
  return entropy;
}

EntropyRecord entropies_at(const BranchSet& b) {
  EntropyRecord rec;
  rec.lambda_t = b.lambda_t;
  rec.S_A = von_neumann(eigvals_hermitian(reduced_atom(b)));
  rec.S_F = von_neumann(eigvals_hermitian(field_overlap_matrix(b)));
  rec.S_AA = von_neumann(eigvals_hermitian(gram_matrix(b)));
  rec.araki_lower = std::abs(rec.S_A - rec.S_F);
  rec.araki_upper = rec.S_A + rec.S_F;
  return rec;
}

ArakiLiebMargins araki_lieb_check(const EntropyRecord& rec, double S_AF) {
  ArakiLiebMargins margins;
  margins.lower = S_AF - std::abs(rec.S_A - rec.S_F);
  margins.upper = rec.S_A + rec.S_F - S_AF;
  if (margins.lower < -kArakiLiebSlack || margins.upper < -kArakiLiebSlack) {
    std::ostringstream msg;
    msg << "Araki-Lieb violated at lambda t = " << rec.lambda_t << ": |S_A - S_F| = " << std::abs(rec.S_A - rec.S_F)
        << ", S_AF = " << S_AF << ", S_A + S_F = " << rec.S_A + rec.S_F;
    throw InequalityViolated(msg.str());
  }
  return margins;
}

std::vector<double> field_spectrum(const FieldDensityMatrix& rho_F) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_F.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NoConvergence("field_spectrum: eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double oracle_field_entropy(const FieldDensityMatrix& rho_F) { return von_neumann(field_spectrum(rho_F)); }

double oracle_composite_entropy(const CMatrix& rho) { return oracle_field_entropy(FieldDensityMatrix(rho)); }

double trace_distance(const FieldDensityMatrix& a, const FieldDensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_distance: dimension mismatch");
  const CMatrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double composite_entropy(const BranchSet& b) {
  const auto& p = b.psi;
  SmallHermitian<2> g;
  g(0, 0) = p[0].norm_squared() + p[1].norm_squared();
  g(1, 1) = p[2].norm_squared() + p[3].norm_squared();
  g(0, 1) = inner(p[0], p[2]) + inner(p[1], p[3]);
  g(1, 0) = std::conj(g(0, 1));
  return von_neumann(eigvals_hermitian(g));
}

}  // namespace jcpure
