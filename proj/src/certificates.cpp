#include "polar/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace polar::certificates {

namespace {

constexpr double kPi = std::numbers::pi;

CertificateReport report(CertificateKind kind, std::string label, double lhs, double rhs, double slack,
                         double tolerance) {
  CertificateReport r;
  r.kind = kind;
  r.samplePoint = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = slack;
  r.passed = slack >= -tolerance;
  return r;
}

// Pieces shared by the checks that compare X against X*.
struct OptimumGap {
  double gap = 0.0;         // f(X) - f*
  double inner = 0.0;       // <grad f(X), -log_X(X*)>
  double dist = 0.0;        // dist(X, X*)
  double rMax = 0.0;
};

OptimumGap optimumGap(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x) {
  const linalg::CanonicalForm form = geometry::relativeCanonical(x, p.xStar());
  OptimumGap g;
  g.rMax = form.maxAbsAngle();
  if (g.rMax >= kPi - tol::kInj) {
    throw Error(Errc::PhaseAtPi, "X^T X* has a phase at pi; -log_X(X*) is undefined");
  }
  const TangentVector grad = objective::riemannianGradient(p, x);
  g.inner = -linalg::frobeniusInner(grad.omega(), form.logarithm());
  g.gap = objective::value(p, x) - p.fStar();
  g.dist = form.phi.norm();
  return g;
}

}  // namespace

std::string_view kindName(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::WQC: return "WQC";
    case CertificateKind::QuadraticGrowth: return "QuadraticGrowth";
    case CertificateKind::WQSC: return "WQSC";
    case CertificateKind::SmoothnessTransport: return "SmoothnessTransport";
    case CertificateKind::SmoothnessTaylor: return "SmoothnessTaylor";
    case CertificateKind::GradientSpectralBound: return "GradientSpectralBound";
    case CertificateKind::Toponogov: return "Toponogov";
  }
  return "Unknown";
}

double certificateTolerance(const objective::ProcrustesProblem& p) {
  return tol::kCert * std::max(1.0, p.frobeniusNorm());
}

CertificateReport checkWQC(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x, std::string label) {
  const OptimumGap g = optimumGap(p, x);
  const double rhs = 0.5 * (1.0 + std::cos(g.rMax)) * g.gap;
  return report(CertificateKind::WQC, std::move(label), g.inner, rhs, g.inner - rhs, certificateTolerance(p));
}

CertificateReport checkQuadraticGrowth(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                       std::string label) {
  const double gap = objective::value(p, x) - p.fStar();
  const double dist = geometry::distance(x, p.xStar());
  // The bound says nothing when C is singular; keep rhs exactly zero there.
  const double rhs = p.singular() ? 0.0 : 2.0 * p.sigmaMin() / (kPi * kPi) * dist * dist;
  CertificateReport r =
      report(CertificateKind::QuadraticGrowth, std::move(label), gap, rhs, gap - rhs, certificateTolerance(p));
  r.vacuous = p.singular();
  return r;
}

CertificateReport checkWQSC(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x, std::string label) {
  const OptimumGap g = optimumGap(p, x);
  const double a = objective::aFromMaxAngle(g.rMax);
  const double rhs = g.inner / a - 0.5 * p.mu() * g.dist * g.dist;
  return report(CertificateKind::WQSC, std::move(label), g.gap, rhs, rhs - g.gap, certificateTolerance(p));
}

CertificateReport checkSmoothnessTransport(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                           const OrthogonalMatrix& y, std::string label) {
  const TangentVector log = geometry::logMap(x, y);
  const double dist = log.norm();
  const TangentVector gx = objective::riemannianGradient(p, x);
  const TangentVector moved = geometry::parallelTransport(objective::riemannianGradient(p, y), x);
  const double lhs = (gx.omega() - moved.omega()).norm();
  const double rhs = p.L() * dist;
  return report(CertificateKind::SmoothnessTransport, std::move(label), lhs, rhs, rhs - lhs,
                certificateTolerance(p));
}

CertificateReport checkSmoothnessTaylor(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                        const OrthogonalMatrix& y, std::string label) {
  const TangentVector log = geometry::logMap(x, y);
  const double dist = log.norm();
  const double lhs = objective::value(p, y) - objective::value(p, x);
  const double rhs = geometry::inner(objective::riemannianGradient(p, x), log) + 0.5 * p.L() * dist * dist;
  return report(CertificateKind::SmoothnessTaylor, std::move(label), lhs, rhs, rhs - lhs,
                certificateTolerance(p));
}

CertificateReport checkDescentCorollary(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                        std::string label) {
  const double g = objective::riemannianGradient(p, x).norm();
  const double lhs = g * g / (2.0 * p.L());
  const double rhs = objective::value(p, x) - p.fStar();
  return report(CertificateKind::SmoothnessTaylor, "descent-corollary:" + label, lhs, rhs, rhs - lhs,
                certificateTolerance(p));
}

CertificateReport checkGradientSpectralBound(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x,
                                             std::string label) {
  const double lhs = linalg::spectralNorm(linalg::skew(x.matrix().transpose() * p.C().transpose()));
  const double rhs = p.L();
  return report(CertificateKind::GradientSpectralBound, std::move(label), lhs, rhs, rhs - lhs,
                certificateTolerance(p));
}

std::vector<CertificateReport> checkToponogov(const OrthogonalMatrix& x, const OrthogonalMatrix& y,
                                              const OrthogonalMatrix& z, std::string label) {
  const geometry::CosineSlack s = geometry::lawOfCosinesSlack(x, y, z);
  const double dxy = geometry::distance(x, y);
  std::vector<CertificateReport> out;
  out.push_back(report(CertificateKind::Toponogov, label + ":squared", dxy * dxy, dxy * dxy + s.slack1, s.slack1,
                       tol::kSlack));
  out.push_back(report(CertificateKind::Toponogov, label + ":tangent", dxy, dxy + s.slack2, s.slack2,
                       tol::kSlack));
  return out;
}

double wqcBlockMargin(double r, double rMax) {
  const double c = 1.0 + std::cos(rMax);
  if (r == 0.0) return 0.0;
  return r / std::sin(r) - r / std::tan(r) * std::cos(r) + r * std::sin(r) + c * (std::cos(r) - 1.0);
}

std::vector<CertificateReport> certificateSweep(const objective::ProcrustesProblem& p, int nSamples,
                                                double radiusCap, std::uint64_t seed) {
  if (!(radiusCap >= 0.0 && radiusCap < kPi)) {
    throw Error(Errc::InvalidArgument, "certificateSweep: radiusCap must lie in [0, pi)");
  }
  if (nSamples < 0) throw Error(Errc::InvalidArgument, "certificateSweep: negative sample count");
  const int n = p.dimension();
  std::vector<CertificateReport> out;
  out.reserve(static_cast<std::size_t>(nSamples) * 10);
  for (int i = 0; i < nSamples; ++i) {
    Rng rng(deriveSeed(seed, static_cast<std::uint64_t>(i)));
    std::uniform_real_distribution<double> radius(0.0, radiusCap);
    const std::string tag = "sample " + std::to_string(i);

    const OrthogonalMatrix& xs = p.xStar();
    const OrthogonalMatrix x =
        geometry::expMap(TangentVector(xs, geometry::randomSkew(n, radius(rng), rng)));
    out.push_back(checkWQC(p, x, tag));
    out.push_back(checkQuadraticGrowth(p, x, tag));
    out.push_back(checkWQSC(p, x, tag));
    out.push_back(checkGradientSpectralBound(p, x, tag));
    out.push_back(checkDescentCorollary(p, x, tag));

    const OrthogonalMatrix y = geometry::expMap(TangentVector(x, geometry::randomSkew(n, radius(rng), rng)));
    out.push_back(checkSmoothnessTransport(p, x, y, tag));
    out.push_back(checkSmoothnessTaylor(p, x, y, tag));

    std::uniform_real_distribution<double> half(0.0, 0.5 * radiusCap);
    const OrthogonalMatrix a = geometry::expMap(TangentVector(x, geometry::randomSkew(n, half(rng), rng)));
    const OrthogonalMatrix b = geometry::expMap(TangentVector(x, geometry::randomSkew(n, half(rng), rng)));
    for (CertificateReport& r : checkToponogov(a, b, x, tag)) out.push_back(std::move(r));
  }
  return out;
}

std::size_t countFailures(const std::vector<CertificateReport>& reports) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const CertificateReport& r) { return !r.passed; }));
}

}  // namespace polar::certificates
