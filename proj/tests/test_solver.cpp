#include <gtest/gtest.h>

#include <cmath>

#include "polar/errors.hpp"
#include "polar/solver.hpp"
#include "test_support.hpp"

using namespace polar;
using namespace polar::testing;

namespace {

// X0 = exp_{X*}(X* W) with ||W||_F = d0 exactly, so dist(X0, X*) = d0.
OrthogonalMatrix startAtDistance(const objective::ProcrustesProblem& p, double d0, Rng& rng) {
  const int n = p.dimension();
  for (;;) {
    Matrix w = skewWithNorm(n, 1.0, rng);
    w *= d0 / w.norm();
    if (oracleSpectralNorm(w) < kPi - 1e-6) return geometry::expMap(TangentVector(p.xStar(), w));
  }
}

std::vector<double> logUniformSpectrum(int n, double cond) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = std::pow(cond, -static_cast<double>(i) / (n - 1));
  return s;
}

}  // namespace

TEST(RgdStep, FixedPointAtOptimum) {
  Rng rng(1);
  const objective::ProcrustesProblem p(gaussian(4, rng));
  const OrthogonalMatrix next = solver::rgdStep(p, p.xStar(), 0.1);
  EXPECT_LE((next.matrix() - p.xStar().matrix()).norm(), 1e-12);
}

TEST(RgdStep, RotationDynamics) {
  const objective::ProcrustesProblem p(Matrix::Identity(2, 2));
  const double theta = 1.2;
  const double eta = 0.1;
  const OrthogonalMatrix next = solver::rgdStep(p, OrthogonalMatrix(rotation(theta)), eta);
  EXPECT_LE((next.matrix() - rotation(theta - eta * std::sin(theta))).norm(), 1e-15);
  EXPECT_LT(objective::value(p, next), objective::value(p, OrthogonalMatrix(rotation(theta))));
}

TEST(RgdStep, Errors) {
  const objective::ProcrustesProblem p(Matrix::Identity(2, 2));
  const OrthogonalMatrix x(rotation(1.5));
  EXPECT_THROW(solver::rgdStep(p, x, 0.0), Error);
  try {
    solver::rgdStep(p, x, 10.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StepOutsideInjectivity);
  }
}

TEST(RgdStep, OneStepContraction) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 9;
    const objective::ProcrustesProblem p(gaussian(n, rng));
    const OrthogonalMatrix x = geometry::expMap(TangentVector(p.xStar(), skewWithNorm(n, 0.03 * trial, rng)));
    const double a = objective::landscapeCoefficients(p, x).aOfX;
    const double eta = a / p.L();
    const double before = std::pow(geometry::distance(x, p.xStar()), 2);
    const double after = std::pow(geometry::distance(solver::rgdStep(p, x, eta), p.xStar()), 2);
    const double factor = 1.0 - 4.0 / (kPi * kPi) * p.sigmaMin() * a * eta;
    EXPECT_LE(after, factor * before + 1e-12) << trial;
  }
}

TEST(Envelope, Formulas) {
  const solver::EnvelopeParams e{1.0, 0.1, 2.0, 0.5};
  EXPECT_NEAR(e.linear(0), 1.0, 1e-15);
  EXPECT_NEAR(e.linear(3), std::pow(1.0 - (1.0 + std::cos(1.0)) * 0.5 * 0.1 / (kPi * kPi), 3), 1e-15);
  EXPECT_NEAR(e.sublinear(0), (4.0 + 10.0) / 4.0, 1e-15);
  EXPECT_NEAR(e.sublinear(5), 14.0 / ((1.0 + std::cos(1.0)) * 5.0 + 4.0), 1e-15);
}

TEST(Solve, StartAtOptimumStopsImmediately) {
  Rng rng(3);
  const objective::ProcrustesProblem p(gaussian(5, rng));
  const solver::SolveResult r = solver::solve(p, p.xStar(), solver::StepSizePolicy::theoremFixed());
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.termination, solver::Termination::GradTol);
  ASSERT_EQ(r.trace.rows.size(), 1u);
}

TEST(Solve, TheoremStepMeetsLinearEnvelopeAndIterationBound) {
  Rng rng(4);
  const objective::ProcrustesProblem p(withSpectrum(logUniformSpectrum(5, 10.0), rng));
  const double d0 = kPi / 2;
  const OrthogonalMatrix x0 = startAtDistance(p, d0, rng);
  const double eta = (1.0 + std::cos(d0)) / (4.0 * p.L());
  const long bound = static_cast<long>(std::ceil(std::log(1e-16 / (d0 * d0)) /
                                                 std::log(1.0 - p.sigmaMin() * eta / (kPi * kPi) * (1.0 + std::cos(d0)))));
  solver::SolveOptions opts;
  opts.gradTol = 1e-14;
  opts.maxIters = bound;
  const solver::SolveResult r = solver::solve(p, x0, solver::StepSizePolicy::theoremFixed(), opts);
  EXPECT_NEAR(r.trace.envelope->d0, d0, 1e-12);
  EXPECT_NEAR(r.trace.rows.front().eta, eta, 1e-15);
  EXPECT_FALSE(solver::findEnvelopeViolation(r.trace, false).has_value());
  bool reached = false;
  for (const solver::TraceRow& row : r.trace.rows) reached |= std::pow(*row.distToStar, 2) <= 1e-16;
  EXPECT_TRUE(reached);
  EXPECT_LE(r.iterations, bound);
}

TEST(Solve, MonotoneDistanceAndValue) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial;
    const objective::ProcrustesProblem p(gaussian(n, rng));
    const OrthogonalMatrix x0 = startAtDistance(p, 0.9 * kPi, rng);
    solver::SolveOptions opts;
    opts.maxIters = 500;
    const solver::SolveResult r = solver::solve(p, x0, solver::StepSizePolicy::theoremFixed(), opts);
    for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
      EXPECT_LE(*r.trace.rows[i].distToStar, *r.trace.rows[i - 1].distToStar + 1e-9);
      EXPECT_LE(r.trace.rows[i].fGap, r.trace.rows[i - 1].fGap + 1e-9);
      EXPECT_GE(r.trace.rows[i].fGap, -1e-9 * std::max(1.0, p.frobeniusNorm()));
    }
  }
}

TEST(Solve, AdaptiveStepUsesA) {
  Rng rng(6);
  const objective::ProcrustesProblem p(gaussian(4, rng));
  const OrthogonalMatrix x0 = startAtDistance(p, 2.0, rng);
  solver::SolveOptions opts;
  opts.maxIters = 200;
  const solver::SolveResult r = solver::solve(p, x0, solver::StepSizePolicy::adaptive(), opts);
  for (const solver::TraceRow& row : r.trace.rows) {
    ASSERT_TRUE(row.aOfX.has_value());
    EXPECT_DOUBLE_EQ(row.eta, *row.aOfX / p.L());
    EXPECT_FALSE(row.sublinearEnvelope.has_value());
  }
  EXPECT_FALSE(solver::findEnvelopeViolation(r.trace, false).has_value());
}

TEST(Solve, TheoremStepStaysBelowA) {
  Rng rng(7);
  const objective::ProcrustesProblem p(gaussian(6, rng));
  const solver::SolveResult r =
      solver::solve(p, startAtDistance(p, 2.5, rng), solver::StepSizePolicy::theoremFixed(), {1e-10, 300, true});
  for (const solver::TraceRow& row : r.trace.rows) EXPECT_LE(row.eta, *row.aOfX / p.L() * (1.0 + 1e-12));
}

TEST(Solve, SingularSublinearEnvelope) {
  Rng rng(8);
  const objective::ProcrustesProblem p(withSpectrum({3.0, 1.5, 1.0, 0.0}, rng));
  ASSERT_TRUE(p.singular());
  const OrthogonalMatrix x0 = startAtDistance(p, 2.0, rng);
  solver::SolveOptions opts;
  opts.maxIters = 10000;
  opts.gradTol = 1e-300;
  const solver::SolveResult r = solver::solve(p, x0, solver::StepSizePolicy::practical(), opts);
  EXPECT_TRUE(r.trace.representativeDistance);
  EXPECT_EQ(r.trace.rows.size(), 10001u);
  for (const solver::TraceRow& row : r.trace.rows) {
    ASSERT_TRUE(row.sublinearEnvelope.has_value());
    EXPECT_LE(row.fGap, *row.sublinearEnvelope * (1.0 + 1e-6)) << row.t;
  }
}

TEST(Solve, LimitAgreement) {
  Rng rng(9);
  for (int n : {2, 5, 10}) {
    const objective::ProcrustesProblem p(withSpectrum(logUniformSpectrum(n, 10.0), rng));
    solver::SolveOptions opts;
    opts.gradTol = 1e-12;
    const solver::SolveResult r = solver::solve(p, startAtDistance(p, 1.0, rng), solver::StepSizePolicy::practical(), opts);
    EXPECT_EQ(r.termination, solver::Termination::GradTol);
    EXPECT_LE((r.xFinal.matrix() - p.xStar().matrix()).norm(), 1e-8);
    EXPECT_LE(linalg::orthogonalityResidual(r.xFinal.matrix()), 1e-8);
  }
}

TEST(Solve, ComponentMismatch) {
  Rng rng(10);
  const objective::ProcrustesProblem p(gaussian(3, rng));
  Matrix q = p.xStar().matrix();
  q.col(0) *= -1.0;
  const OrthogonalMatrix wrong(q);
  try {
    solver::solve(p, wrong, solver::StepSizePolicy::theoremFixed());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DifferentComponents);
  }
  EXPECT_THROW(solver::solve(p, wrong, solver::StepSizePolicy::adaptive()), Error);
  // Non-oracle modes run, without distances.
  solver::SolveOptions opts;
  opts.maxIters = 5;
  const solver::SolveResult r = solver::solve(p, wrong, solver::StepSizePolicy::practical(), opts);
  EXPECT_FALSE(r.trace.oracle);
  EXPECT_FALSE(r.trace.rows.front().distToStar.has_value());
}

TEST(Solve, NoOracleTracking) {
  Rng rng(11);
  const objective::ProcrustesProblem p(gaussian(3, rng));
  solver::SolveOptions opts;
  opts.trackOracle = false;
  opts.maxIters = 3;
  const solver::SolveResult r =
      solver::solve(p, startAtDistance(p, 1.0, rng), solver::StepSizePolicy::practical(), opts);
  EXPECT_FALSE(r.trace.oracle);
  EXPECT_FALSE(r.trace.envelope.has_value());
  EXPECT_EQ(r.termination, solver::Termination::MaxIters);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Solve, OversizedStepIsRejectedOrViolates) {
  const objective::ProcrustesProblem p(Matrix::Identity(2, 2));
  solver::SolveOptions opts;
  opts.maxIters = 50;
  const solver::SolveResult huge = solver::solve(p, OrthogonalMatrix(rotation(1.5)), solver::StepSizePolicy::user(10.0), opts);
  EXPECT_EQ(huge.termination, solver::Termination::StepRejected);

  const solver::SolveResult big = solver::solve(p, OrthogonalMatrix(rotation(1.0)), solver::StepSizePolicy::user(2.5), opts);
  const auto v = solver::findEnvelopeViolation(big.trace, false);
  ASSERT_TRUE(v.has_value());
  EXPECT_GT(v->observed, v->bound);
  EXPECT_EQ(big.trace.rows[v->row].t, v->t);
}

TEST(FindEnvelopeViolation, ReportsFirstRow) {
  solver::SolveTrace trace;
  for (long t = 0; t < 4; ++t) {
    solver::TraceRow row;
    row.t = t;
    row.distToStar = 1.0;
    row.linearEnvelope = t < 2 ? 2.0 : 0.5;
    row.sublinearEnvelope = 10.0;
    trace.rows.push_back(row);
  }
  const auto v = solver::findEnvelopeViolation(trace, false);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->row, 2u);
  EXPECT_EQ(v->envelope, "linear");
  // Singular problems are only held to the sublinear envelope.
  EXPECT_FALSE(solver::findEnvelopeViolation(trace, true).has_value());
}

TEST(ColdStart, Strategies) {
  Rng rng(12);
  const objective::ProcrustesProblem p(gaussian(5, rng));
  const solver::StartStrategy zero{solver::StartKind::TangentPerturbation, 0.0};
  EXPECT_LE((solver::coldStart(p, zero, 1).matrix() - p.xStar().matrix()).norm(), 1e-15);

  const OrthogonalMatrix id = solver::coldStart(p, {solver::StartKind::SignCorrectedIdentity, 0.0}, 0);
  EXPECT_EQ(id.detSign(), p.xStar().detSign());
  if (p.xStar().detSign() > 0) {
    EXPECT_EQ(id.matrix(), Matrix::Identity(5, 5));
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(solver::coldStart(p, {solver::StartKind::HaarSameComponent, 0.0}, seed).detSign(), p.xStar().detSign());
    const double r = 0.1 + 0.15 * static_cast<double>(seed);
    const OrthogonalMatrix x = solver::coldStart(p, {solver::StartKind::TangentPerturbation, r}, seed);
    const linalg::CanonicalForm rel = geometry::relativeCanonical(x, p.xStar());
    EXPECT_NEAR(rel.maxAbsAngle(), r, 1e-10);
    // Each of the floor(n/2) rotation planes contributes a pair of phases of size at most r.
    EXPECT_LE(rel.phi.norm(), std::sqrt(2.0 * (5 / 2)) * r + 1e-10);
  }
  EXPECT_THROW(solver::coldStart(p, {solver::StartKind::TangentPerturbation, kPi}, 0), Error);
}
