#pragma once

#include "polar/geometry.hpp"

namespace polar::objective {

/// min over O(n) of f(X) = -Tr(C X), with everything derived from one SVD of C
/// cached at construction. When C is singular the optimum is not unique and
/// xStar() is only a representative minimizer.
class ProcrustesProblem {
 public:
  /// Throws ZeroMatrix when ||C||_F = 0, NotSquare / NonFiniteInput otherwise.
  explicit ProcrustesProblem(Matrix c);

  const Matrix& C() const noexcept { return c_; }
  const linalg::SvdFactors& svd() const noexcept { return svd_; }
  /// Smoothness constant sigma_max(C).
  double L() const noexcept { return svd_.sigmaMax(); }
  double sigmaMin() const noexcept { return svd_.sigmaMin(); }
  /// V U^T.
  const OrthogonalMatrix& xStar() const noexcept { return xStar_; }
  /// -sum(sigma).
  double fStar() const noexcept { return fStar_; }
  /// 4 sigma_min / pi^2.
  double mu() const noexcept { return mu_; }
  bool singular() const noexcept { return singular_; }
  int dimension() const noexcept { return static_cast<int>(c_.rows()); }
  double frobeniusNorm() const noexcept { return cNorm_; }

 private:
  Matrix c_;
  linalg::SvdFactors svd_;
  OrthogonalMatrix xStar_;
  double fStar_ = 0.0;
  double mu_ = 0.0;
  double cNorm_ = 0.0;
  bool singular_ = false;
};

ProcrustesProblem makeProblem(const Matrix& c);

struct LandscapeCoefficients {
  double rMax = 0.0;  // largest |phase| of X^T X*
  double aOfX = 0.5;  // (1 + cos rMax) / 4
};

/// -Tr(C X).
double value(const ProcrustesProblem& p, const OrthogonalMatrix& x);

/// -X skew(X^T C^T).
TangentVector riemannianGradient(const ProcrustesProblem& p, const OrthogonalMatrix& x);

/// Hess f(X)[X W] = P_X(-X W skew(X^T C^T) - X skew(W^T X^T C^T)).
TangentVector hessianApply(const ProcrustesProblem& p, const OrthogonalMatrix& x, const TangentVector& v);

/// Throws DifferentComponents, or PhaseAtPi when some |r| >= pi - tol::kInj.
LandscapeCoefficients landscapeCoefficients(const ProcrustesProblem& p, const OrthogonalMatrix& x);

/// (1 + cos rMax) / 4.
double aFromMaxAngle(double rMax);

}  // namespace polar::objective
