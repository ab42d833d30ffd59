#include "polar/baselines.hpp"

#include <chrono>
#include <string>

namespace polar::baselines {

namespace {

double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

PolarFactors polarViaSvd(const Matrix& c) {
  const linalg::SvdFactors f = linalg::svd(c);
  return PolarFactors{OrthogonalMatrix(f.U * f.V.transpose()), f.V * f.sigma.asDiagonal() * f.V.transpose()};
}

NewtonResult polarViaNewton(const Matrix& c, double tol, int maxIters) {
  const linalg::SvdFactors f = linalg::svd(c);
  if (f.sigmaMin() <= tol::kSing * f.sigmaMax()) {
    throw Error(Errc::SingularInput, "Newton polar iteration needs an invertible matrix");
  }
  NewtonResult result{PolarFactors{OrthogonalMatrix::identity(static_cast<int>(c.rows())), Matrix()}, 0, {}};
  Matrix x = c;
  for (int k = 1; k <= maxIters; ++k) {
    const Matrix next = 0.5 * (x + Eigen::PartialPivLU<Matrix>(x).inverse().transpose());
    const double change = (next - x).norm() / x.norm();
    result.relativeChanges.push_back(change);
    x = next;
    if (change <= tol) {
      result.iterations = k;
      result.factors.X = OrthogonalMatrix(x);
      result.factors.P = linalg::sym(x.transpose() * c);
      return result;
    }
  }
  throw Error(Errc::NoConvergence, "Newton polar iteration did not converge in " + std::to_string(maxIters) +
                                       " iterations");
}

ComparisonRecord compareSolvers(const Matrix& c, const RgdConfig& rgd, const NewtonConfig& newton) {
  const objective::ProcrustesProblem problem(c);
  const Matrix& xStar = problem.xStar().matrix();
  ComparisonRecord record;
  record.n = problem.dimension();
  record.singular = problem.singular();

  auto outcomeFor = [&](std::string name, const OrthogonalMatrix& x, long iterations, double seconds) {
    MethodOutcome o;
    o.method = std::move(name);
    o.iterations = iterations;
    o.residualToStar = (x.matrix() - xStar).norm();
    o.fGap = objective::value(problem, x) - problem.fStar();
    o.wallSeconds = seconds;
    return o;
  };

  auto start = std::chrono::steady_clock::now();
  const PolarFactors viaSvd = polarViaSvd(c.transpose());
  record.outcomes.push_back(outcomeFor("svd", viaSvd.X, 0, secondsSince(start)));

  if (problem.singular()) {
    MethodOutcome skipped;
    skipped.method = "newton";
    skipped.included = false;
    skipped.note = "C is singular";
    record.outcomes.push_back(skipped);
  } else {
    start = std::chrono::steady_clock::now();
    const NewtonResult viaNewton = polarViaNewton(c.transpose(), newton.tol, newton.maxIters);
    record.outcomes.push_back(outcomeFor("newton", viaNewton.factors.X, viaNewton.iterations, secondsSince(start)));
  }

  start = std::chrono::steady_clock::now();
  const OrthogonalMatrix x0 = solver::coldStart(problem, rgd.start, rgd.seed);
  const solver::SolveResult viaRgd = solver::solve(problem, x0, rgd.policy, rgd.options);
  MethodOutcome o = outcomeFor("rgd", viaRgd.xFinal, viaRgd.iterations, secondsSince(start));
  o.note = std::string(solver::terminationName(viaRgd.termination));
  if (problem.singular()) o.note += "; X* is a representative optimum, compare f_gap";
  record.outcomes.push_back(std::move(o));
  return record;
}

}  // namespace polar::baselines
