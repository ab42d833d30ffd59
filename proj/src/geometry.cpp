#include "polar/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace polar {

namespace {

int determinantSign(const Matrix& q) {
  return Eigen::PartialPivLU<Matrix>(q).determinant() >= 0.0 ? 1 : -1;
}

}  // namespace

std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

OrthogonalMatrix::OrthogonalMatrix(Matrix q) : q_(std::move(q)) {
  linalg::requireSquare(q_, "orthogonal matrix");
  linalg::requireFinite(q_, "orthogonal matrix");
  const double residual = linalg::orthogonalityResidual(q_);
  if (residual > tol::kOrth) {
    throw Error(Errc::NotOrthogonal, "||Q^T Q - I||_F = " + std::to_string(residual));
  }
  detSign_ = determinantSign(q_);
}

TangentVector::TangentVector(OrthogonalMatrix base, Matrix omega)
    : base_(std::move(base)), omega_(std::move(omega)) {
  if (omega_.rows() != base_.dimension() || omega_.cols() != base_.dimension()) {
    throw Error(Errc::InvalidArgument, "tangent generator dimension does not match base point");
  }
  linalg::requireFinite(omega_, "tangent generator");
  const double asym = (omega_ + omega_.transpose()).norm();
  if (asym > tol::kSkew * std::max(1.0, omega_.norm())) {
    throw Error(Errc::InvalidArgument, "tangent generator is not skew-symmetric, ||W + W^T||_F = " +
                                           std::to_string(asym));
  }
  if (asym != 0.0) omega_ = linalg::skew(omega_);
}

TangentVector TangentVector::zero(const OrthogonalMatrix& base) {
  const int n = base.dimension();
  return TangentVector(base, Matrix::Zero(n, n));
}

}  // namespace polar

namespace polar::geometry {

double inner(const TangentVector& u, const TangentVector& v) {
  if (u.base().matrix() == v.base().matrix()) return linalg::frobeniusInner(u.omega(), v.omega());
  return linalg::frobeniusInner(u.ambient(), v.ambient());
}

TangentVector projectToTangent(const OrthogonalMatrix& x, const Matrix& z) {
  if (z.rows() != x.dimension() || z.cols() != x.dimension()) {
    throw Error(Errc::InvalidArgument, "projectToTangent: dimension mismatch");
  }
  return TangentVector(x, linalg::skew(x.matrix().transpose() * z));
}

OrthogonalMatrix expMap(const OrthogonalMatrix& x, const linalg::CanonicalForm& generatorForm) {
  Matrix y = x.matrix() * linalg::expSkew(generatorForm);
  if (linalg::orthogonalityResidual(y) > tol::kOrth / 10.0) y = linalg::qrOrthonormalize(y);
  return OrthogonalMatrix(std::move(y));
}

OrthogonalMatrix expMap(const TangentVector& v) {
  return expMap(v.base(), linalg::skewCanonical(v.omega()));
}

linalg::CanonicalForm relativeCanonical(const OrthogonalMatrix& x, const OrthogonalMatrix& y) {
  if (x.dimension() != y.dimension()) throw Error(Errc::InvalidArgument, "dimension mismatch");
  if (x.detSign() != y.detSign()) {
    throw Error(Errc::DifferentComponents, "det(X) and det(Y) have opposite signs");
  }
  return linalg::orthogonalSchur(x.matrix().transpose() * y.matrix());
}

TangentVector logMap(const OrthogonalMatrix& x, const OrthogonalMatrix& y) {
  const linalg::CanonicalForm form = relativeCanonical(x, y);
  const double rmax = form.maxAbsAngle();
  if (rmax > std::numbers::pi - tol::kInj) {
    throw Error(Errc::NonUniqueGeodesic,
                "X^T Y has an eigenphase of magnitude " + std::to_string(rmax) + " at or near pi");
  }
  return TangentVector(x, form.logarithm());
}

double distance(const OrthogonalMatrix& x, const OrthogonalMatrix& y) {
  return relativeCanonical(x, y).phi.norm();
}

TangentVector parallelTransport(const TangentVector& v, const OrthogonalMatrix& y) {
  const OrthogonalMatrix& x = v.base();
  if (x.detSign() != y.detSign()) {
    throw Error(Errc::DifferentComponents, "parallel transport across components");
  }
  // Along Y = X e^A the generator is carried as e^{-A/2} omega e^{A/2}.
  linalg::CanonicalForm half = relativeCanonical(x, y);
  const double rmax = half.maxAbsAngle();
  if (rmax > std::numbers::pi - tol::kInj) {
    throw Error(Errc::NonUniqueGeodesic,
                "transport needs a unique geodesic; X^T Y has a phase of magnitude " + std::to_string(rmax));
  }
  for (linalg::CanonicalBlock& b : half.blocks) b.angle *= 0.5;
  const Matrix e = half.reconstruct();
  return TangentVector(y, e.transpose() * v.omega() * e);
}

bool injectivityCheck(const TangentVector& v) {
  return linalg::spectralNorm(v.omega()) < std::numbers::pi - tol::kInj;
}

CosineSlack lawOfCosinesSlack(const OrthogonalMatrix& x, const OrthogonalMatrix& y,
                              const OrthogonalMatrix& z) {
  const TangentVector lx = logMap(z, x);
  const TangentVector ly = logMap(z, y);
  logMap(x, y);  // the X-Y side must also be a unique geodesic
  const double dxy = distance(x, y);
  const double dzx = distance(z, x);
  const double dzy = distance(z, y);
  CosineSlack s;
  s.slack1 = dzx * dzx + dzy * dzy - 2.0 * inner(lx, ly) - dxy * dxy;
  s.slack2 = (lx.omega() - ly.omega()).norm() - dxy;
  return s;
}

OrthogonalMatrix haarSample(int n, Rng& rng) {
  if (n < 1) throw Error(Errc::InvalidArgument, "haarSample: n must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  return OrthogonalMatrix(linalg::qrOrthonormalize(g));
}

Matrix randomSkew(int n, double spectralRadius, Rng& rng) {
  if (n < 1) throw Error(Errc::InvalidArgument, "randomSkew: n must be positive");
  if (spectralRadius < 0.0) throw Error(Errc::InvalidArgument, "randomSkew: negative radius");
  if (n == 1 || spectralRadius == 0.0) return Matrix::Zero(n, n);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  Matrix w = linalg::skew(g);
  return w * (spectralRadius / linalg::skewCanonical(w).maxAbsAngle());
}

OrthogonalMatrix geodesicPoint(const OrthogonalMatrix& x, const TangentVector& v, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::InvalidArgument, "geodesicPoint: t outside [0, 1]");
  if ((v.base().matrix() - x.matrix()).norm() > tol::kOrth) {
    throw Error(Errc::InvalidArgument, "geodesicPoint: tangent vector is not based at X");
  }
  return expMap(TangentVector(x, t * v.omega()));
}

}  // namespace polar::geometry
