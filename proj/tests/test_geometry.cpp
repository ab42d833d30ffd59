#include <gtest/gtest.h>

#include "polar/errors.hpp"
#include "polar/geometry.hpp"
#include "test_support.hpp"

using namespace polar;
using namespace polar::testing;

namespace {

OrthogonalMatrix orth(const Matrix& q) { return OrthogonalMatrix(q); }

template <class F>
Errc errorOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Io;
}

}  // namespace

TEST(OrthogonalMatrix, TracksComponent) {
  EXPECT_EQ(OrthogonalMatrix::identity(3).detSign(), 1);
  Matrix q = Matrix::Identity(3, 3);
  q(2, 2) = -1.0;
  EXPECT_EQ(orth(q).detSign(), -1);
  EXPECT_EQ(errorOf([] { orth(2.0 * Matrix::Identity(2, 2)); }), Errc::NotOrthogonal);
  EXPECT_EQ(errorOf([] { orth(Matrix::Zero(2, 3)); }), Errc::NotSquare);
}

TEST(TangentVector, ReskewsWithinTolerance) {
  Matrix w = skew2(0.3);
  w(0, 1) += 1e-12;
  const TangentVector v(OrthogonalMatrix::identity(2), w);
  EXPECT_EQ((v.omega() + v.omega().transpose()).norm(), 0.0);
  Matrix bad = skew2(0.3);
  bad(0, 0) = 1e-3;
  EXPECT_EQ(errorOf([&] { TangentVector(OrthogonalMatrix::identity(2), bad); }), Errc::InvalidArgument);
}

TEST(ProjectToTangent, Examples) {
  Rng rng(1);
  const OrthogonalMatrix x(haar(4, rng));
  EXPECT_LE(geometry::projectToTangent(x, x.matrix()).norm(), 1e-14);

  Matrix z(2, 2);
  z << 0.0, 1.0, 0.0, 0.0;
  Matrix expected(2, 2);
  expected << 0.0, 0.5, -0.5, 0.0;
  EXPECT_LE((geometry::projectToTangent(OrthogonalMatrix::identity(2), z).omega() - expected).norm(), 1e-15);

  const Matrix a = gaussian(4, rng);
  const TangentVector p = geometry::projectToTangent(x, a);
  // Residual is normal to the tangent space: X^T (A - X W) is symmetric.
  const Matrix residual = x.matrix().transpose() * (a - p.ambient());
  EXPECT_LE((residual - residual.transpose()).norm(), 1e-12);
}

TEST(ExpMap, Examples) {
  const OrthogonalMatrix id = OrthogonalMatrix::identity(2);
  EXPECT_EQ(geometry::expMap(TangentVector::zero(id)).matrix(), id.matrix());
  EXPECT_LE((geometry::expMap(TangentVector(id, skew2(1.1))).matrix() - rotation(1.1)).norm(), 1e-15);

  Rng rng(2);
  const Matrix w = skewWithNorm(4, 2.5, rng);
  const OrthogonalMatrix y = geometry::expMap(TangentVector(OrthogonalMatrix::identity(4), w));
  EXPECT_LE(linalg::orthogonalityResidual(y.matrix()), 1e-13);
  EXPECT_LE((geometry::logMap(OrthogonalMatrix::identity(4), y).omega() - w).norm(), 1e-9);
}

TEST(ExpMap, MatchesOracleAndKeepsComponent) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 9;
    Matrix q = haar(n, rng);
    if (trial % 2) q.col(0) *= -1.0;
    const OrthogonalMatrix x(q);
    const Matrix w = skewWithNorm(n, 0.2 + 0.15 * trial, rng);
    const OrthogonalMatrix y = geometry::expMap(TangentVector(x, w));
    EXPECT_LE((y.matrix() - q * oracleExp(w)).norm(), 1e-11);
    EXPECT_EQ(y.detSign(), x.detSign());
  }
}

TEST(LogMap, Examples) {
  const OrthogonalMatrix id = OrthogonalMatrix::identity(2);
  EXPECT_LE(geometry::logMap(id, id).norm(), 1e-15);
  EXPECT_LE((geometry::logMap(id, orth(rotation(0.9))).omega() - skew2(0.9)).norm(), 1e-15);

  Rng rng(4);
  const OrthogonalMatrix x(haar(6, rng));
  const Matrix w = skewWithNorm(6, 3.0, rng);
  const OrthogonalMatrix y = geometry::expMap(TangentVector(x, w));
  EXPECT_LE((geometry::logMap(x, y).omega() - w).norm(), 1e-9);
}

TEST(LogMap, MatchesPrincipalLogarithm) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 8;
    const OrthogonalMatrix x(haar(n, rng));
    const OrthogonalMatrix y(x.matrix() * oracleExp(skewWithNorm(n, 2.8, rng)));
    const Matrix ours = geometry::logMap(x, y).omega();
    EXPECT_LE((ours - oracleLog(x.matrix().transpose() * y.matrix())).norm(), 1e-8);
  }
}

TEST(LogMap, Errors) {
  const OrthogonalMatrix id = OrthogonalMatrix::identity(2);
  Matrix reflect = Matrix::Identity(2, 2);
  reflect(1, 1) = -1.0;
  EXPECT_EQ(errorOf([&] { geometry::logMap(id, orth(reflect)); }), Errc::DifferentComponents);
  EXPECT_EQ(errorOf([&] { geometry::logMap(id, orth(rotation(kPi))); }), Errc::NonUniqueGeodesic);
  EXPECT_EQ(errorOf([&] { geometry::logMap(id, orth(rotation(kPi - 1e-12))); }), Errc::NonUniqueGeodesic);
  EXPECT_NO_THROW(geometry::logMap(id, orth(rotation(kPi - 1e-6))));
}

TEST(Distance, Examples) {
  const OrthogonalMatrix id2 = OrthogonalMatrix::identity(2);
  EXPECT_EQ(geometry::distance(id2, id2), 0.0);
  EXPECT_NEAR(geometry::distance(id2, orth(rotation(0.9))), std::sqrt(2.0) * 0.9, 1e-15);
  Matrix d = Matrix::Identity(4, 4);
  d(2, 2) = d(3, 3) = -1.0;
  EXPECT_NEAR(geometry::distance(OrthogonalMatrix::identity(4), orth(d)), kPi * std::sqrt(2.0), 1e-15);
  Matrix flip = Matrix::Identity(2, 2);
  flip(0, 0) = -1.0;
  EXPECT_EQ(errorOf([&] { geometry::distance(id2, orth(flip)); }), Errc::DifferentComponents);
}

TEST(Distance, MatchesEigenphaseOracleAndIsSymmetric) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 12;
    Matrix a = haar(n, rng);
    Matrix b = haar(n, rng);
    if (a.determinant() * b.determinant() < 0) b.col(0) *= -1.0;
    const OrthogonalMatrix x(a), y(b);
    const double d = geometry::distance(x, y);
    EXPECT_NEAR(d, oracleDistance(a, b), 1e-9);
    EXPECT_NEAR(d, geometry::distance(y, x), 1e-10);
  }
}

TEST(Distance, EqualsLogNorm) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 10;
    const OrthogonalMatrix x(haar(n, rng));
    const OrthogonalMatrix y = geometry::expMap(TangentVector(x, skewWithNorm(n, 3.0, rng)));
    EXPECT_NEAR(geometry::distance(x, y), geometry::logMap(x, y).norm(), 1e-9);
  }
}

TEST(ParallelTransport, Examples) {
  Rng rng(8);
  const OrthogonalMatrix x(haar(5, rng));
  const TangentVector v(x, skewWithNorm(5, 1.0, rng));
  EXPECT_LE((geometry::parallelTransport(v, x).omega() - v.omega()).norm(), 1e-14);

  const OrthogonalMatrix y(x.matrix() * oracleExp(skewWithNorm(5, 2.0, rng)));
  const TangentVector moved = geometry::parallelTransport(v, y);
  EXPECT_NEAR(moved.norm(), v.norm(), 1e-12);
  const TangentVector back = geometry::parallelTransport(moved, x);
  EXPECT_LE((back.omega() - v.omega()).norm(), 1e-10);

  const TangentVector j(OrthogonalMatrix::identity(2), skew2(1.0));
  EXPECT_LE((geometry::parallelTransport(j, orth(rotation(kPi / 2))).omega() - skew2(1.0)).norm(), 1e-15);
}

// Embedded-submanifold transport: push V along the geodesic and re-project
// onto each tangent space. First order in the step count.
TEST(ParallelTransport, MatchesProjectionLadder) {
  Rng rng(9);
  const OrthogonalMatrix x(haar(4, rng));
  const Matrix a = skewWithNorm(4, 2.5, rng);
  const OrthogonalMatrix y(x.matrix() * oracleExp(a));
  const Matrix w = skewWithNorm(4, 1.0, rng);

  const int steps = 20000;
  Matrix v = x.matrix() * w;
  for (int k = 1; k <= steps; ++k) {
    const Matrix g = x.matrix() * oracleExp(a * (static_cast<double>(k) / steps));
    const Matrix m = g.transpose() * v;
    v = g * (0.5 * (m - m.transpose()));
  }
  const Matrix got = geometry::parallelTransport(TangentVector(x, w), y).ambient();
  EXPECT_LE((got - v).norm(), 5e-4);

  // Conjugating by X^T Y is an isometry too, but it is not this transport.
  const Matrix q = x.matrix().transpose() * y.matrix();
  EXPECT_GT((y.matrix() * (q * w * q.transpose()) - v).norm(), 0.1);
}

TEST(ParallelTransport, RejectsAmbiguousGeodesic) {
  const TangentVector j(OrthogonalMatrix::identity(2), skew2(1.0));
  EXPECT_THROW(geometry::parallelTransport(j, orth(rotation(kPi))), Error);
}

TEST(Injectivity, Examples) {
  const OrthogonalMatrix id = OrthogonalMatrix::identity(2);
  EXPECT_TRUE(geometry::injectivityCheck(TangentVector::zero(id)));
  EXPECT_FALSE(geometry::injectivityCheck(TangentVector(id, skew2(3.2))));
  EXPECT_TRUE(geometry::injectivityCheck(TangentVector(id, skew2(3.1))));
  EXPECT_FALSE(geometry::injectivityCheck(TangentVector(id, skew2(kPi))));
}

TEST(LawOfCosines, DegenerateTriangles) {
  Rng rng(10);
  const OrthogonalMatrix z(haar(4, rng));
  const OrthogonalMatrix x(z.matrix() * oracleExp(skewWithNorm(4, 0.8, rng)));
  const OrthogonalMatrix y(z.matrix() * oracleExp(skewWithNorm(4, 0.6, rng)));
  geometry::CosineSlack same = geometry::lawOfCosinesSlack(x, x, z);
  EXPECT_NEAR(same.slack1, 0.0, 1e-12);
  EXPECT_NEAR(same.slack2, 0.0, 1e-12);
  geometry::CosineSlack atVertex = geometry::lawOfCosinesSlack(x, y, x);
  EXPECT_NEAR(atVertex.slack1, 0.0, 1e-12);
  EXPECT_NEAR(atVertex.slack2, 0.0, 1e-12);
}

TEST(LawOfCosines, CommutingTriangleIsFlat) {
  // Points exp(t J) on one maximal torus: the triangle is Euclidean.
  const OrthogonalMatrix z = OrthogonalMatrix::identity(2);
  const geometry::CosineSlack s = geometry::lawOfCosinesSlack(orth(rotation(0.4)), orth(rotation(-0.7)), z);
  EXPECT_NEAR(s.slack1, 0.0, 1e-12);
  EXPECT_NEAR(s.slack2, 0.0, 1e-12);
}

TEST(LawOfCosines, NonnegativeNearIdentity) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 8;
    const OrthogonalMatrix z(haar(n, rng));
    const OrthogonalMatrix x(z.matrix() * oracleExp(skewWithNorm(n, 0.25, rng)));
    const OrthogonalMatrix y(z.matrix() * oracleExp(skewWithNorm(n, 0.25, rng)));
    const geometry::CosineSlack s = geometry::lawOfCosinesSlack(x, y, z);
    EXPECT_GE(s.slack1, -1e-10);
    EXPECT_GE(s.slack2, -1e-10);
  }
}

TEST(LawOfCosines, MatchesIndependentFormula) {
  Rng rng(12);
  const OrthogonalMatrix z(haar(5, rng));
  const OrthogonalMatrix x(z.matrix() * oracleExp(skewWithNorm(5, 1.0, rng)));
  const OrthogonalMatrix y(z.matrix() * oracleExp(skewWithNorm(5, 1.3, rng)));
  const Matrix lx = oracleLog(z.matrix().transpose() * x.matrix());
  const Matrix ly = oracleLog(z.matrix().transpose() * y.matrix());
  const double dxy = oracleDistance(x.matrix(), y.matrix());
  const geometry::CosineSlack s = geometry::lawOfCosinesSlack(x, y, z);
  EXPECT_NEAR(s.slack1, lx.squaredNorm() + ly.squaredNorm() - 2.0 * lx.cwiseProduct(ly).sum() - dxy * dxy, 1e-9);
  EXPECT_NEAR(s.slack2, (lx - ly).norm() - dxy, 1e-9);
}

TEST(HaarSample, DeterministicAndCentered) {
  Rng a(42), b(42);
  EXPECT_EQ(geometry::haarSample(5, a).matrix(), geometry::haarSample(5, b).matrix());

  Rng one(1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(std::abs(geometry::haarSample(1, one).matrix()(0, 0)), 1.0);

  Rng rng(2);
  double mean = 0.0;
  int negative = 0;
  for (int i = 0; i < 1000; ++i) {
    const OrthogonalMatrix q = geometry::haarSample(10, rng);
    mean += q.matrix()(0, 0);
    negative += q.detSign() < 0;
  }
  EXPECT_LT(std::abs(mean / 1000.0), 0.05);
  EXPECT_GT(negative, 400);
  EXPECT_LT(negative, 600);
}

TEST(RandomSkew, HasRequestedSpectralNorm) {
  Rng rng(3);
  for (double r : {0.0, 0.5, 2.0, 3.1}) {
    const Matrix w = geometry::randomSkew(7, r, rng);
    EXPECT_LE((w + w.transpose()).norm(), 1e-15);
    EXPECT_NEAR(oracleSpectralNorm(w), r, 1e-12);
  }
}

TEST(GeodesicPoint, Examples) {
  const OrthogonalMatrix id = OrthogonalMatrix::identity(2);
  const TangentVector v(id, skew2(1.4));
  EXPECT_EQ(geometry::geodesicPoint(id, v, 0.0).matrix(), id.matrix());
  EXPECT_LE((geometry::geodesicPoint(id, v, 1.0).matrix() - geometry::expMap(v).matrix()).norm(), 1e-15);
  EXPECT_LE((geometry::geodesicPoint(id, v, 0.5).matrix() - rotation(0.7)).norm(), 1e-15);
  EXPECT_EQ(errorOf([&] { geometry::geodesicPoint(id, v, 1.5); }), Errc::InvalidArgument);
}

TEST(DeriveSeed, DistinctStreams) {
  EXPECT_EQ(deriveSeed(5, 3), deriveSeed(5, 3));
  EXPECT_NE(deriveSeed(5, 3), deriveSeed(5, 4));
  EXPECT_NE(deriveSeed(5, 3), deriveSeed(6, 3));
}
