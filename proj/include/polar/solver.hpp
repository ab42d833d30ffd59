#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "polar/objective.hpp"

namespace polar::solver {

enum class StepMode {
  TheoremFixed,    // eta = (1 + cos d0) / (4L), d0 = dist(X0, X*)
  AdaptiveA,       // eta_t = a(X_t) / L
  PracticalFixed,  // eta = 1 / (4L)
  UserFixed,       // eta given
};

std::string_view stepModeName(StepMode mode);

struct StepSizePolicy {
  StepMode mode = StepMode::PracticalFixed;
  double eta = 0.0;  // UserFixed only

  static StepSizePolicy theoremFixed() { return {StepMode::TheoremFixed, 0.0}; }
  static StepSizePolicy adaptive() { return {StepMode::AdaptiveA, 0.0}; }
  static StepSizePolicy practical() { return {StepMode::PracticalFixed, 0.0}; }
  static StepSizePolicy user(double eta) { return {StepMode::UserFixed, eta}; }
};

/// Modes whose step size needs X*.
bool isOracleMode(StepMode mode);

/// Envelope constants fixed at the start of a run.
struct EnvelopeParams {
  double d0 = 0.0;   // dist(X0, X*)
  double eta = 0.0;  // fixed step the envelopes are evaluated with
  double L = 0.0;
  double sigmaMin = 0.0;

  /// (1 - (1/pi^2)(1 + cos d0) sigma_min eta)^t d0^2
  double linear(long t) const;
  /// (2L + 1/eta) / ((1 + cos d0) t + 4) d0^2
  double sublinear(long t) const;
};

/// Per-iteration record. Optional fields are absent when the metric is
/// undefined for the run (no oracle tracking, or a different component).
struct TraceRow {
  long t = 0;
  double eta = 0.0;  // step taken from this iterate
  double fGap = 0.0;
  double gradNorm = 0.0;
  std::optional<double> distToStar;
  std::optional<double> linearEnvelope;
  std::optional<double> sublinearEnvelope;
  std::optional<double> aOfX;
  bool nearAntipodal = false;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  bool oracle = false;
  /// Set when C is singular: distances are measured to the SVD representative
  /// of a non-unique optimum set.
  bool representativeDistance = false;
  std::optional<EnvelopeParams> envelope;
};

enum class Termination { GradTol, MaxIters, StepRejected };

std::string_view terminationName(Termination t);

struct SolveResult {
  OrthogonalMatrix xFinal;
  long iterations = 0;
  SolveTrace trace;
  Termination termination = Termination::MaxIters;
};

struct SolveOptions {
  std::optional<double> gradTol;  // default: defaultGradTol(p)
  long maxIters = 100000;
  /// Record distances, a(X) and envelopes in non-oracle modes too.
  bool trackOracle = true;
};

/// 1e-10 * max(1, ||C||_F).
double defaultGradTol(const objective::ProcrustesProblem& p);

/// exp_X(-eta grad f(X)). Throws InvalidArgument for eta <= 0 and
/// StepOutsideInjectivity when eta ||skew(X^T C^T)||_2 >= pi - tol::kInj.
OrthogonalMatrix rgdStep(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x, double eta);

/// Riemannian gradient descent from X0 until ||grad||_F <= gradTol or maxIters
/// steps. Oracle modes throw DifferentComponents when X0 is in the other
/// component of O(n); TheoremFixed also requires dist(X0, X*) < pi. A step
/// leaving the injectivity domain ends the run with StepRejected.
SolveResult solve(const objective::ProcrustesProblem& p, const OrthogonalMatrix& x0, const StepSizePolicy& policy,
                  const SolveOptions& options = {});

struct EnvelopeViolation {
  std::size_t row = 0;  // index into trace.rows
  long t = 0;
  std::string_view envelope;  // "linear" or "sublinear"
  double observed = 0.0;
  double bound = 0.0;
};

/// First row where dist^2 exceeds the linear envelope (invertible C only) or
/// the f-gap exceeds the sublinear envelope, by more than a relative 1e-6.
std::optional<EnvelopeViolation> findEnvelopeViolation(const SolveTrace& trace, bool singular,
                                                       double relTol = 1e-6);

enum class StartKind { SignCorrectedIdentity, HaarSameComponent, TangentPerturbation };

struct StartStrategy {
  StartKind kind = StartKind::SignCorrectedIdentity;
  double radius = 0.0;  // TangentPerturbation: spectral norm of the generator
};

OrthogonalMatrix coldStart(const objective::ProcrustesProblem& p, const StartStrategy& strategy,
                           std::uint64_t seed);

}  // namespace polar::solver
