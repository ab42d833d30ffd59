#pragma once

#include <string>
#include <vector>

#include "polar/solver.hpp"

namespace polar::baselines {

/// C = X P with X orthogonal and P symmetric positive semidefinite.
struct PolarFactors {
  OrthogonalMatrix X;
  Matrix P;
};

/// X = U V^T, P = V Sigma V^T. The Procrustes optimum of -Tr(C X) is the
/// polar factor of C^T.
PolarFactors polarViaSvd(const Matrix& c);

struct NewtonResult {
  PolarFactors factors;
  int iterations = 0;
  std::vector<double> relativeChanges;  // ||X_{k+1} - X_k||_F / ||X_k||_F per iteration
};

/// Unscaled Newton iteration X <- (X + X^{-T}) / 2 from X_0 = C, stopped when
/// the relative change drops to `tol`. Throws SingularInput when
/// sigma_min(C) <= tol::kSing sigma_max(C), NoConvergence after maxIters.
NewtonResult polarViaNewton(const Matrix& c, double tol = 1e-12, int maxIters = 100);

struct RgdConfig {
  solver::StepSizePolicy policy = solver::StepSizePolicy::practical();
  solver::SolveOptions options{};
  solver::StartStrategy start{};
  std::uint64_t seed = 0;
};

struct NewtonConfig {
  double tol = 1e-12;
  int maxIters = 100;
};

struct MethodOutcome {
  std::string method;  // "svd", "newton", "rgd"
  bool included = true;
  long iterations = 0;
  double residualToStar = 0.0;  // ||X - X*||_F
  double fGap = 0.0;
  double wallSeconds = 0.0;
  std::string note;
};

struct ComparisonRecord {
  int n = 0;
  bool singular = false;
  std::vector<MethodOutcome> outcomes;
};

/// Runs the SVD oracle, Newton (skipped for singular C) and RGD on the same
/// problem and measures each against X* = polar factor of C^T.
ComparisonRecord compareSolvers(const Matrix& c, const RgdConfig& rgd = {}, const NewtonConfig& newton = {});

}  // namespace polar::baselines
