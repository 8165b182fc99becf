#include "jcpure/fock.hpp"

#include <sstream>

namespace jcpure {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    std::ostringstream msg;
    msg << where << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace

FockVector::FockVector(std::size_t dim) : amps_(CVector::Zero(static_cast<Eigen::Index>(dim))) {
  if (dim == 0) throw InvalidArgument("FockVector: dimension must be at least 1");
}

FockVector::FockVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw InvalidArgument("FockVector: dimension must be at least 1");
}

FockVector FockVector::number(std::size_t n, std::size_t dim) {
  if (n >= dim) throw InvalidArgument("FockVector::number: level outside truncation");
  FockVector v(dim);
  v[n] = 1.0;
  return v;
}

double FockVector::tail_mass(std::size_t width) const {
  const auto count = static_cast<Eigen::Index>(std::min(width, dim()));
  return amps_.tail(count).squaredNorm();
}

FockVector& FockVector::operator+=(const FockVector& other) {
  require_same_dim(dim(), other.dim(), "FockVector::operator+=");
  amps_ += other.amps_;
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  require_same_dim(dim(), other.dim(), "FockVector::operator-=");
  amps_ -= other.amps_;
  return *this;
}

FockVector& FockVector::operator*=(complex factor) {
  amps_ *= factor;
  return *this;
}

DiagonalOperator::DiagonalOperator(Eigen::VectorXd values) : values_(std::move(values)) {}

DiagonalOperator DiagonalOperator::identity(std::size_t dim) {
  return DiagonalOperator(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim)));
}

FockVector DiagonalOperator::apply(const FockVector& v) const {
  require_same_dim(dim(), v.dim(), "DiagonalOperator::apply");
  return FockVector(CVector(v.amplitudes().cwiseProduct(values_.cast<complex>())));
}

DiagonalOperator operator*(const DiagonalOperator& a, const DiagonalOperator& b) {
  require_same_dim(a.dim(), b.dim(), "DiagonalOperator::operator*");
  return DiagonalOperator(a.values_.cwiseProduct(b.values_));
}

DiagonalOperator operator+(const DiagonalOperator& a, const DiagonalOperator& b) {
  require_same_dim(a.dim(), b.dim(), "DiagonalOperator::operator+");
  return DiagonalOperator(a.values_ + b.values_);
}

DiagonalOperator cos_sqrt_n_plus_1(double lambda_t, std::size_t dim) {
  return diag_func([lambda_t](std::size_t n) { return std::cos(lambda_t * std::sqrt(double(n) + 1.0)); }, dim);
}

DiagonalOperator sin_sqrt_n_plus_1(double lambda_t, std::size_t dim) {
  return diag_func([lambda_t](std::size_t n) { return std::sin(lambda_t * std::sqrt(double(n) + 1.0)); }, dim);
}

DiagonalOperator cos_sqrt_n(double lambda_t, std::size_t dim) {
  return diag_func([lambda_t](std::size_t n) { return std::cos(lambda_t * std::sqrt(double(n))); }, dim);
}

namespace {

CVector coherent_amplitudes(complex alpha, std::size_t dim) {
  CVector c(static_cast<Eigen::Index>(dim));
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    c[static_cast<Eigen::Index>(n + 1)] = c[static_cast<Eigen::Index>(n)] * alpha / std::sqrt(double(n) + 1.0);
  }
  return c;
}

double coherent_tail(complex alpha, std::size_t dim) {
  // The recurrence underflows long before the tail matters, so the tail is the
  // complement of the retained mass; both views must be small.
  const CVector c = coherent_amplitudes(alpha, dim);
  const double top = c.tail(static_cast<Eigen::Index>(std::min(tol::kTailWidth, dim))).squaredNorm();
  return std::max(top, 1.0 - c.squaredNorm());
}

}  // namespace

FockVector coherent(complex alpha, std::size_t dim) {
  if (dim == 0) throw InvalidArgument("coherent: dimension must be at least 1");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw NonFiniteValue("coherent: amplitude is not finite");
  }
  const double tail = coherent_tail(alpha, dim);
  if (!(tail < tol::kTailMass)) {
    std::ostringstream msg;
    msg << "coherent: truncation N=" << dim << " leaves tail mass " << tail << " for |alpha|^2=" << std::norm(alpha);
    throw TruncationTooSmall(msg.str());
  }
  return FockVector(coherent_amplitudes(alpha, dim));
}

std::size_t choose_truncation(complex alpha, std::size_t minimum) {
  std::size_t dim = std::max<std::size_t>(minimum, tol::kTailWidth + 1);
  while (!(coherent_tail(alpha, dim) < tol::kTailMass)) {
    dim += 16;
    if (dim > (1u << 16)) throw TruncationTooSmall("choose_truncation: amplitude too large");
  }
  return dim;
}

FockVector apply_annihilation(const FockVector& v) {
  const std::size_t dim = v.dim();
  FockVector out(dim);
  for (std::size_t n = 0; n + 1 < dim; ++n) out[n] = std::sqrt(double(n) + 1.0) * v[n + 1];
  return out;
}

FockVector apply_creation(const FockVector& v, double& leaked_mass) {
  const std::size_t dim = v.dim();
  FockVector out(dim);
  for (std::size_t n = 1; n < dim; ++n) out[n] = std::sqrt(double(n)) * v[n - 1];
  leaked_mass += double(dim) * std::norm(v[dim - 1]);
  return out;
}

FockVector apply_creation(const FockVector& v) {
  double leaked = 0.0;
  return apply_creation(v, leaked);
}

FockVector apply_V(const FockVector& v) {
  const std::size_t dim = v.dim();
  FockVector out(dim);
  for (std::size_t n = 0; n + 1 < dim; ++n) out[n] = v[n + 1];
  return out;
}

FockVector apply_V_dagger(const FockVector& v, double& leaked_mass) {
  const std::size_t dim = v.dim();
  FockVector out(dim);
  for (std::size_t n = 1; n < dim; ++n) out[n] = v[n - 1];
  leaked_mass += std::norm(v[dim - 1]);
  return out;
}

FockVector apply_V_dagger(const FockVector& v) {
  double leaked = 0.0;
  return apply_V_dagger(v, leaked);
}

complex inner(const FockVector& u, const FockVector& v) {
  require_same_dim(u.dim(), v.dim(), "inner");
  if (&u == &v) return {u.norm_squared(), 0.0};
  return u.amplitudes().dot(v.amplitudes());
}

double mean_photon_number(const FockVector& v) {
  double mean = 0.0;
  for (std::size_t n = 0; n < v.dim(); ++n) mean += double(n) * std::norm(v[n]);
  return mean;
}

}  // namespace jcpure
