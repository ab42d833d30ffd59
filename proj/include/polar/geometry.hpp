#pragma once

#include <cstdint>
#include <random>

#include "polar/linalg.hpp"

namespace polar {

/// Explicit random state; every sampling routine takes one by reference.
using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a run seeded with `seed`.
std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index);

/// A point of O(n): Q^T Q = I within tol::kOrth, tagged with the sign of its
/// determinant (the connected component it lives in).
class OrthogonalMatrix {
 public:
  /// Throws NotSquare, NonFiniteInput or NotOrthogonal.
  explicit OrthogonalMatrix(Matrix q);

  static OrthogonalMatrix identity(int n) { return OrthogonalMatrix(Matrix::Identity(n, n)); }

  const Matrix& matrix() const noexcept { return q_; }
  int dimension() const noexcept { return static_cast<int>(q_.rows()); }
  int detSign() const noexcept { return detSign_; }

 private:
  Matrix q_;
  int detSign_ = 1;
};

/// The tangent vector X * omega at base point X, omega skew-symmetric.
/// Generators within tol::kSkew (relative to max(1, ||omega||_F)) of skew are
/// re-skewed on construction; anything further off throws InvalidArgument.
class TangentVector {
 public:
  TangentVector(OrthogonalMatrix base, Matrix omega);

  static TangentVector zero(const OrthogonalMatrix& base);

  const OrthogonalMatrix& base() const noexcept { return base_; }
  const Matrix& omega() const noexcept { return omega_; }
  /// X * omega as an ambient n x n matrix.
  Matrix ambient() const { return base_.matrix() * omega_; }
  /// Frobenius norm; equal to ||omega||_F since X is orthogonal.
  double norm() const { return omega_.norm(); }
  TangentVector scaled(double s) const { return TangentVector(base_, s * omega_); }

 private:
  OrthogonalMatrix base_;
  Matrix omega_;
};

}  // namespace polar

namespace polar::geometry {

/// Trace inner product of two tangent vectors. Uses the generators directly
/// when both vectors share a base point.
double inner(const TangentVector& u, const TangentVector& v);

/// X skew(X^T Z).
TangentVector projectToTangent(const OrthogonalMatrix& x, const Matrix& z);

/// X exp(omega). The result is re-orthonormalized by sign-corrected QR when
/// its orthogonality residual exceeds tol::kOrth / 10.
OrthogonalMatrix expMap(const TangentVector& v);

/// Same as expMap(v) for a generator whose canonical form is already known.
OrthogonalMatrix expMap(const OrthogonalMatrix& x, const linalg::CanonicalForm& generatorForm);

/// Canonical form of X^T Y. Throws DifferentComponents if det signs differ.
linalg::CanonicalForm relativeCanonical(const OrthogonalMatrix& x, const OrthogonalMatrix& y);

/// X log(X^T Y). Requires every phase of X^T Y to satisfy |r| <= pi - tol::kInj.
/// Throws DifferentComponents or NonUniqueGeodesic.
TangentVector logMap(const OrthogonalMatrix& x, const OrthogonalMatrix& y);

/// ||phi||_2 over all phases of X^T Y, pi phases included.
double distance(const OrthogonalMatrix& x, const OrthogonalMatrix& y);

/// Levi-Civita transport along the unique geodesic Y = X e^A:
/// X omega -> Y e^{-A/2} omega e^{A/2}. Throws NonUniqueGeodesic near pi.
TangentVector parallelTransport(const TangentVector& v, const OrthogonalMatrix& y);

/// True iff ||omega||_2 < pi - tol::kInj.
bool injectivityCheck(const TangentVector& v);

struct CosineSlack {
  double slack1 = 0.0;  // squared-distance comparison
  double slack2 = 0.0;  // tangent-space distance comparison
};

/// Comparison-triangle slacks at vertex Z for the triangle (X, Y, Z).
/// Nonnegative on a manifold of nonnegative curvature. Propagates logMap
/// errors for any pair without a unique geodesic.
CosineSlack lawOfCosinesSlack(const OrthogonalMatrix& x, const OrthogonalMatrix& y,
                              const OrthogonalMatrix& z);

/// Haar-distributed orthogonal matrix (Gaussian matrix, sign-corrected QR).
OrthogonalMatrix haarSample(int n, Rng& rng);

/// Random skew-symmetric matrix with spectral norm exactly `spectralRadius`.
Matrix randomSkew(int n, double spectralRadius, Rng& rng);

/// exp_X(t v) for t in [0, 1].
OrthogonalMatrix geodesicPoint(const OrthogonalMatrix& x, const TangentVector& v, double t);

}  // namespace polar::geometry
