#include "polar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace polar::solver {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearAntipodal = 1e-3;

}  // namespace

std::string_view stepModeName(StepMode mode) {
  switch (mode) {
    case StepMode::TheoremFixed: return "theorem";
    case StepMode::AdaptiveA: return "adaptive";
    case StepMode::PracticalFixed: return "practical";
    case StepMode::UserFixed: return "user";
  }
  return "unknown";
}

std::string_view terminationName(Termination t) {
  switch (t) {
    case Termination::GradTol: return "GradTol";
    case Termination::MaxIters: return "MaxIters";
    case Termination::StepRejected: return "StepRejected";
  }
  return "Unknown";
}

bool isOracleMode(StepMode mode) { return mode == StepMode::TheoremFixed || mode == StepMode::AdaptiveA; }

double EnvelopeParams::linear(long t) const {
  const double rate = 1.0 - (1.0 + std::cos(d0)) * sigmaMin * eta / (kPi * kPi);
  return std::pow(rate, static_cast<double>(t)) * d0 * d0;
}

double EnvelopeParams::sublinear(long t) const {
  return (2.0 * L + 1.0 / eta) / ((1.0 + std::cos(d0)) * static_cast<double>(t) + 4.0) * d0 * d0;
}

double defaultGradTol(const objective::ProcrustesProblem& p) { return 1e-10 * std::max(1.0, p.frobeniusNorm()); }

OrthogonalMatrix rgdStep(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw Error(Errc::InvalidArgument, "step size must be positive");
  const TangentVector g = objective::riemannianGradient(p, x);
  const linalg::CanonicalForm step = linalg::skewCanonical(-eta * g.omega());
  if (step.maxAbsAngle() >= kPi - tol::kInj) {
    throw Error(Errc::StepOutsideInjectivity,
                "eta ||grad generator||_2 = " + std::to_string(step.maxAbsAngle()) + " is not below pi");
  }
  return geometry::expMap(x, step);
}

SolveResult solve(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x0, const StepSizePolicy& policy,
                  const SolveOptions& options) {
  if (x0.dimension() != p.dimension()) throw Error(Errc::InvalidArgument, "X0 dimension does not match C");
  if (options.maxIters < 0) throw Error(Errc::InvalidArgument, "maxIters must be nonnegative");
  const double gradTol = options.gradTol.value_or(defaultGradTol(p));
  const bool oracleMode = isOracleMode(policy.mode);
  const bool sameComponent = x0.detSign() == p.xStar().detSign();
  if (oracleMode && !sameComponent) {
    throw Error(Errc::DifferentComponents, "X0 and X* lie in different components of O(n)");
  }

  SolveTrace trace;
  trace.oracle = (oracleMode || options.trackOracle) && sameComponent;
  trace.representativeDistance = p.singular();

  double fixedEta = 0.0;
  std::optional<double> d0;
  if (trace.oracle) d0 = geometry::distance(x0, p.xStar());
  switch (policy.mode) {
    case StepMode::TheoremFixed:
      if (!(*d0 < kPi)) throw Error(Errc::InvalidArgument, "TheoremFixed needs dist(X0, X*) < pi");
      fixedEta = (1.0 + std::cos(*d0)) / (4.0 * p.L());
      break;
    case StepMode::AdaptiveA:
      break;
    case StepMode::PracticalFixed:
      fixedEta = 1.0 / (4.0 * p.L());
      break;
    case StepMode::UserFixed:
      if (!(policy.eta > 0.0) || !std::isfinite(policy.eta)) {
        throw Error(Errc::InvalidArgument, "UserFixed step size must be positive");
      }
      fixedEta = policy.eta;
      break;
  }
  if (trace.oracle && *d0 < kPi) {
    const double envEta = policy.mode == StepMode::AdaptiveA ? (1.0 + std::cos(*d0)) / (4.0 * p.L()) : fixedEta;
    trace.envelope = EnvelopeParams{*d0, envEta, p.L(), p.sigmaMin()};
  }

  OrthogonalMatrix x = x0;
  Termination termination = Termination::MaxIters;
  long t = 0;
  for (;; ++t) {
    const TangentVector g = objective::riemannianGradient(p, x);
    TraceRow row;
    row.t = t;
    row.fGap = objective::value(p, x) - p.fStar();
    row.gradNorm = g.norm();
    row.eta = fixedEta;
    if (trace.oracle) {
      const linalg::CanonicalForm rel = geometry::relativeCanonical(x, p.xStar());
      const double rmax = rel.maxAbsAngle();
      row.distToStar = rel.phi.norm();
      if (rmax < kPi - tol::kInj) row.aOfX = objective::aFromMaxAngle(rmax);
      row.nearAntipodal = rmax > kPi - kNearAntipodal;
      if (trace.envelope) {
        row.linearEnvelope = trace.envelope->linear(t);
        if (policy.mode != StepMode::AdaptiveA) row.sublinearEnvelope = trace.envelope->sublinear(t);
      }
    }
    if (policy.mode == StepMode::AdaptiveA) {
      if (!row.aOfX) throw Error(Errc::PhaseAtPi, "a(X_t) is undefined: X_t^T X* has a phase at pi");
      row.eta = *row.aOfX / p.L();
    }
    trace.rows.push_back(row);

    if (row.gradNorm <= gradTol) {
      termination = Termination::GradTol;
      break;
    }
    if (t >= options.maxIters) {
      termination = Termination::MaxIters;
      break;
    }
    const linalg::CanonicalForm step = linalg::skewCanonical(-row.eta * g.omega());
    if (step.maxAbsAngle() >= kPi - tol::kInj) {
      termination = Termination::StepRejected;
      break;
    }
    x = geometry::expMap(x, step);
  }
  return SolveResult{std::move(x), t, std::move(trace), termination};
}

std::optional<EnvelopeViolation> findEnvelopeViolation(const SolveTrace& trace, bool singular, double relTol) {
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& r = trace.rows[i];
    if (!singular && r.linearEnvelope && r.distToStar) {
      const double observed = *r.distToStar * *r.distToStar;
      if (!(observed <= *r.linearEnvelope * (1.0 + relTol))) {
        return EnvelopeViolation{i, r.t, "linear", observed, *r.linearEnvelope};
      }
    }
    if (r.sublinearEnvelope) {
      if (!(r.fGap <= *r.sublinearEnvelope * (1.0 + relTol))) {
        return EnvelopeViolation{i, r.t, "sublinear", r.fGap, *r.sublinearEnvelope};
      }
    }
  }
  return std::nullopt;
}

OrthogonalMatrix coldStart(const objective::ProcrustesProblem& p, const StartStrategy& strategy, std::uint64_t seed) {
  const int n = p.dimension();
  const int targetSign = p.xStar().detSign();
  switch (strategy.kind) {
    case StartKind::SignCorrectedIdentity: {
      Matrix id = Matrix::Identity(n, n);
      if (targetSign < 0) id(n - 1, n - 1) = -1.0;
      return OrthogonalMatrix(std::move(id));
    }
    case StartKind::HaarSameComponent: {
      Rng rng(seed);
      Matrix q = geometry::haarSample(n, rng).matrix();
      const OrthogonalMatrix sample(q);
      if (sample.detSign() != targetSign) q.col(n - 1) *= -1.0;
      return OrthogonalMatrix(std::move(q));
    }
    case StartKind::TangentPerturbation: {
      if (!(strategy.radius >= 0.0 && strategy.radius < kPi)) {
        throw Error(Errc::InvalidArgument, "TangentPerturbation radius must lie in [0, pi)");
      }
      Rng rng(seed);
      return geometry::expMap(TangentVector(p.xStar(), geometry::randomSkew(n, strategy.radius, rng)));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown start strategy");
}

}  // namespace polar::solver
