#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polar/objective.hpp"

namespace polar::certificates {

enum class CertificateKind {
  WQC,
  QuadraticGrowth,
  WQSC,
  SmoothnessTransport,
  SmoothnessTaylor,
  GradientSpectralBound,
  Toponogov,
};

std::string_view kindName(CertificateKind kind);

/// One evaluated inequality. `slack` is oriented so that slack >= 0 means the
/// inequality holds; `passed` is slack >= -tolerance.
struct CertificateReport {
  CertificateKind kind = CertificateKind::WQC;
  std::string samplePoint;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool passed = true;
  bool vacuous = false;  // the bound is trivially true (e.g. sigma_min = 0)
};

/// tol::kCert * max(1, ||C||_F).
double certificateTolerance(const objective::ProcrustesProblem& p);

/// <grad f(X), -log_X(X*)> >= (1 + cos|r|_max)/2 * (f(X) - f*).
CertificateReport checkWQC(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                           std::string label = "X");

/// f(X) - f* >= (2 sigma_min / pi^2) dist^2(X, X*).
CertificateReport checkQuadraticGrowth(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                       std::string label = "X");

/// f(X) - f* <= <grad f(X), -log_X(X*)> / a(X) - (mu/2) dist^2(X, X*).
CertificateReport checkWQSC(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                            std::string label = "X");

/// ||grad f(X) - Gamma_Y^X grad f(Y)|| <= sigma_max(C) dist(X, Y).
CertificateReport checkSmoothnessTransport(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                           const OrthogonalMatrix& y, std::string label = "X,Y");

/// f(Y) - f(X) <= <grad f(X), log_X(Y)> + (L/2) dist^2(X, Y).
CertificateReport checkSmoothnessTaylor(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                        const OrthogonalMatrix& y, std::string label = "X,Y");

/// Corollary of the Taylor bound at Y = exp_X(-grad f(X) / L):
/// f(X) - f* >= ||grad f(X)||^2 / (2L). Reported as a SmoothnessTaylor record.
CertificateReport checkDescentCorollary(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                        std::string label = "X");

/// ||skew(X^T C^T)||_2 <= sigma_max(C).
CertificateReport checkGradientSpectralBound(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                             std::string label = "X");

/// Both comparison-triangle inequalities at vertex Z, as two Toponogov records
/// (squared form first). Passed uses tol::kSlack.
std::vector<CertificateReport> checkToponogov(const OrthogonalMatrix& x, const OrthogonalMatrix& y,
                                              const OrthogonalMatrix& z, std::string label = "X,Y,Z");

/// Diagonal coefficient of one rotation block in the weak-quasi-convexity
/// argument, r/sin r - (r/tan r) cos r + r sin r + (1 + cos rMax)(cos r - 1).
/// Nonnegative whenever |r| <= rMax < pi.
double wqcBlockMargin(double r, double rMax);

/// Samples X = exp_{X*}(X* W) with ||W||_2 uniform in [0, radiusCap] and runs
/// every check at X, at a second point Y drawn around X the same way, and on a
/// comparison triangle around X. Deterministic per seed; reports come out in
/// sample order. Throws InvalidArgument unless 0 <= radiusCap < pi.
std::vector<CertificateReport> certificateSweep(const objective::ProcrustesProblem& p, int nSamples,
                                                double radiusCap, std::uint64_t seed);

std::size_t countFailures(const std::vector<CertificateReport>& reports);

}  // namespace polar::certificates
