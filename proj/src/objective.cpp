#include "polar/objective.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace polar::objective {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix requireNonZero(Matrix c) {
  linalg::requireSquare(c, "C");
  linalg::requireFinite(c, "C");
  if (c.norm() == 0.0) throw Error(Errc::ZeroMatrix, "C = 0: every orthogonal matrix is optimal");
  return c;
}

}  // namespace

ProcrustesProblem::ProcrustesProblem(Matrix c)
    : c_(requireNonZero(std::move(c))),
      svd_(linalg::svd(c_)),
      xStar_(svd_.V * svd_.U.transpose()) {
  fStar_ = -svd_.sigma.sum();
  mu_ = 4.0 * sigmaMin() / (kPi * kPi);
  cNorm_ = c_.norm();
  singular_ = sigmaMin() <= tol::kSing * L();
}

ProcrustesProblem makeProblem(const Matrix& c) { return ProcrustesProblem(c); }

double value(const ProcrustesProblem& p, const OrthogonalMatrix& x) {
  // Tr(C X) = sum_ij C_ij X_ji
  return -p.C().cwiseProduct(x.matrix().transpose()).sum();
}

TangentVector riemannianGradient(const ProcrustesProblem& p, const OrthogonalMatrix& x) {
  return TangentVector(x, -linalg::skew(x.matrix().transpose() * p.C().transpose()));
}

TangentVector hessianApply(const ProcrustesProblem& p, const OrthogonalMatrix& x, const TangentVector& v) {
  if (v.base().matrix() != x.matrix()) {
    throw Error(Errc::InvalidArgument, "hessianApply: tangent vector is not based at X");
  }
  const Matrix& w = v.omega();
  const Matrix ct = p.C().transpose();
  const Matrix s = linalg::skew(x.matrix().transpose() * ct);
  const Matrix xdot = x.matrix() * w;
  // X^T H = -W s - skew(xdot^T C^T); re-project to keep it tangent.
  const Matrix xth = -w * s - linalg::skew(xdot.transpose() * ct);
  return TangentVector(x, linalg::skew(xth));
}

double aFromMaxAngle(double rMax) { return (1.0 + std::cos(rMax)) / 4.0; }

LandscapeCoefficients landscapeCoefficients(const ProcrustesProblem& p, const OrthogonalMatrix& x) {
  const linalg::CanonicalForm form = geometry::relativeCanonical(x, p.xStar());
  const double rmax = form.maxAbsAngle();
  if (rmax >= kPi - tol::kInj) {
    throw Error(Errc::PhaseAtPi, "X^T X* has a phase of magnitude " + std::to_string(rmax));
  }
  return {rmax, aFromMaxAngle(rmax)};
}

}  // namespace polar::objective
