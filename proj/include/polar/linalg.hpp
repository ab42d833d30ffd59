#pragma once

#include <Eigen/Dense>

#include <vector>

#include "polar/errors.hpp"

namespace polar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double kFact = 1e-12;   // relative factorization residual
inline constexpr double kOrth = 1e-8;    // ||Q^T Q - I||_F
inline constexpr double kPhase = 1e-9;   // eigenphase clustering / pi classification
inline constexpr double kSkew = 1e-10;   // ||W + W^T||_F for tangent generators
inline constexpr double kInj = 1e-9;     // margin below pi for the injectivity domain
inline constexpr double kRound = 1e-9;   // exp/log roundtrip
inline constexpr double kSlack = 1e-10;  // comparison-geometry slack
inline constexpr double kSing = 1e-12;   // relative smallest singular value => singular
inline constexpr double kCert = 1e-9;    // certificate slack, scaled by max(1, ||C||_F)
}  // namespace tol

}  // namespace polar

namespace polar::linalg {

void requireFinite(const Matrix& a, const char* what);
void requireSquare(const Matrix& a, const char* what);

inline Matrix skew(const Matrix& a) { return 0.5 * (a - a.transpose()); }
inline Matrix sym(const Matrix& a) { return 0.5 * (a + a.transpose()); }

/// ||Q^T Q - I||_F.
double orthogonalityResidual(const Matrix& q);

/// Trace inner product <A, B> = Tr(A^T B).
inline double frobeniusInner(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

struct SvdFactors {
  Matrix U;
  Vector sigma;  // nonincreasing, nonnegative
  Matrix V;

  double sigmaMax() const { return sigma(0); }
  double sigmaMin() const { return sigma(sigma.size() - 1); }
  Matrix reconstruct() const { return U * sigma.asDiagonal() * V.transpose(); }
};

/// Full SVD C = U diag(sigma) V^T. Column signs are fixed so that the
/// largest-magnitude entry of every column of U is positive (first one wins
/// on ties), which makes the factors a deterministic function of C.
SvdFactors svd(const Matrix& c);

/// Largest singular value.
double spectralNorm(const Matrix& a);

/// One diagonal block of a canonical form. Size-1 blocks carry angle 0
/// (eigenvalue +1) or pi (eigenvalue -1). Size-2 blocks are the rotation
/// [[cos r, -sin r], [sin r, cos r]] with r in [0, pi]; they stand for the
/// eigenvalue pair e^{+ir}, e^{-ir}.
struct CanonicalBlock {
  int index = 0;
  int size = 1;
  double angle = 0.0;
};

/// Q = P D P^T with P orthogonal and D block diagonal as described by
/// `blocks`. `phi` holds one phase per eigenvalue: rotation blocks contribute
/// (r, -r), size-1 blocks contribute their angle once.
struct CanonicalForm {
  Matrix P;
  std::vector<CanonicalBlock> blocks;
  Vector phi;

  int dimension() const { return static_cast<int>(P.rows()); }
  /// |r|_max over phi.
  double maxAbsAngle() const;
  /// Number of eigenvalues equal to -1 (entries of phi with |r| = pi).
  int piCount() const;

  /// D itself.
  Matrix blockDiagonal() const;
  /// P D P^T.
  Matrix reconstruct() const;
  /// P log(D) P^T where every rotation block maps to [[0, -r], [r, 0]].
  /// Size-1 blocks must have angle 0; callers check for pi first.
  Matrix logarithm() const;
};

/// Canonical form of an orthogonal matrix. Rotation blocks with angle within
/// tol::kPhase of pi are classified as exactly pi; -1 eigenvalues are paired
/// into pi-rotation blocks, leaving at most one size-1 block at pi.
/// Throws NotOrthogonal when ||Q^T Q - I||_F > tol::kOrth.
CanonicalForm orthogonalSchur(const Matrix& q);

/// Canonical form of a skew-symmetric matrix W = P diag(blocks) P^T where a
/// block of angle t is [[0, -t], [t, 0]]. `phi` holds (t, -t) pairs and zeros,
/// so the spectral norm is maxAbsAngle().
CanonicalForm skewCanonical(const Matrix& w);

/// exp(W) for skew W through its canonical form; exact rotation blocks.
Matrix expSkew(const CanonicalForm& skewForm);

/// Q factor of A with the signs of diag(R) made positive.
Matrix qrOrthonormalize(const Matrix& a);

}  // namespace polar::linalg
