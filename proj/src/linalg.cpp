#include "polar/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace polar::linalg {

namespace {

constexpr double kPi = std::numbers::pi;

// Two adjacent 1x1 Schur blocks of equal sign that are still coupled above the
// diagonal come from a rotation whose angle was too small to resolve as a
// complex pair; they are merged back into one rotation block.
constexpr double kMergeTol = 16.0 * std::numeric_limits<double>::epsilon();

enum class UnitKind { Rotation, PlusOne, MinusOne };

struct Unit {
  int first = 0;
  int second = -1;
  UnitKind kind = UnitKind::PlusOne;
  double angle = 0.0;
};

// Walks a real Schur factor T and splits it into 1x1 and 2x2 diagonal units.
// `rotationAngle` maps a 2x2 block to a signed angle.
template <typename AngleFn>
std::vector<Unit> splitSchur(const Matrix& t, AngleFn rotationAngle, bool requireSameSign) {
  const int n = static_cast<int>(t.rows());
  std::vector<Unit> units;
  int i = 0;
  while (i < n) {
    const bool complexPair = i + 1 < n && t(i + 1, i) != 0.0;
    bool merge = false;
    if (!complexPair && i + 1 < n) {
      const bool nextIsSingle = i + 2 >= n || t(i + 2, i + 1) == 0.0;
      const bool sameSign =
          !requireSameSign || (t(i, i) >= 0.0) == (t(i + 1, i + 1) >= 0.0);
      merge = nextIsSingle && sameSign && std::abs(t(i, i + 1)) > kMergeTol;
    }
    if (complexPair || merge) {
      units.push_back({i, i + 1, UnitKind::Rotation, rotationAngle(t.block(i, i, 2, 2))});
      i += 2;
    } else {
      units.push_back({i, -1, t(i, i) >= 0.0 ? UnitKind::PlusOne : UnitKind::MinusOne, 0.0});
      i += 1;
    }
  }
  return units;
}

// Builds the canonical form from Schur vectors and units. Rotation angles are
// made nonnegative by swapping the two basis vectors of the block.
CanonicalForm assemble(const Matrix& schurVectors, std::vector<Unit> units, bool snapToPi) {
  const int n = static_cast<int>(schurVectors.rows());

  // Pair up -1 eigenvalues into pi-rotation blocks.
  std::vector<Unit> merged;
  int pendingMinus = -1;
  for (const Unit& u : units) {
    if (u.kind != UnitKind::MinusOne) {
      merged.push_back(u);
      continue;
    }
    if (pendingMinus < 0) {
      pendingMinus = static_cast<int>(merged.size());
      merged.push_back(u);
    } else {
      Unit& first = merged[static_cast<std::size_t>(pendingMinus)];
      first.second = u.first;
      first.kind = UnitKind::Rotation;
      first.angle = kPi;
      pendingMinus = -1;
    }
  }

  CanonicalForm form;
  form.P.resize(n, n);
  form.phi.resize(n);
  int col = 0;
  for (const Unit& u : merged) {
    if (u.kind == UnitKind::Rotation) {
      int a = u.first;
      int b = u.second;
      double r = u.angle;
      if (r < 0.0) {
        std::swap(a, b);
        r = -r;
      }
      if (snapToPi && std::abs(kPi - r) <= tol::kPhase) r = kPi;
      form.P.col(col) = schurVectors.col(a);
      form.P.col(col + 1) = schurVectors.col(b);
      form.blocks.push_back({col, 2, r});
      form.phi(col) = r;
      form.phi(col + 1) = -r;
      col += 2;
    } else {
      const double r = u.kind == UnitKind::PlusOne ? 0.0 : kPi;
      form.P.col(col) = schurVectors.col(u.first);
      form.blocks.push_back({col, 1, r});
      form.phi(col) = r;
      col += 1;
    }
  }
  return form;
}

// Scales column pairs of `m` by the 2x2 block matrices of `form` (i.e. M D or
// M log D) without forming the dense block diagonal.
template <typename BlockFn>
Matrix rightMultiplyBlocks(const Matrix& m, const CanonicalForm& form, BlockFn block) {
  Matrix out(m.rows(), m.cols());
  for (const CanonicalBlock& b : form.blocks) {
    if (b.size == 1) {
      out.col(b.index) = block(b.angle)(0, 0) * m.col(b.index);
    } else {
      const Eigen::Matrix2d d = block(b.angle);
      out.middleCols(b.index, 2) = m.middleCols(b.index, 2) * d;
    }
  }
  return out;
}

Eigen::Matrix2d rotation(double r) {
  Eigen::Matrix2d d;
  d << std::cos(r), -std::sin(r), std::sin(r), std::cos(r);
  return d;
}

}  // namespace

void requireFinite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw Error(Errc::NonFiniteInput, std::string(what) + " has NaN or Inf entries");
}

void requireSquare(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(Errc::NotSquare, std::string(what) + " is " + std::to_string(a.rows()) + "x" +
                                     std::to_string(a.cols()));
  }
}

double orthogonalityResidual(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.rows(), q.cols())).norm();
}

SvdFactors svd(const Matrix& c) {
  requireSquare(c, "svd input");
  requireFinite(c, "svd input");
  Eigen::JacobiSVD<Matrix> solver(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactors f{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  for (Eigen::Index j = 0; j < f.U.cols(); ++j) {
    Eigen::Index imax = 0;
    f.U.col(j).cwiseAbs().maxCoeff(&imax);
    if (f.U(imax, j) < 0.0) {
      f.U.col(j) *= -1.0;
      f.V.col(j) *= -1.0;
    }
  }
  return f;
}

double spectralNorm(const Matrix& a) {
  requireFinite(a, "spectralNorm input");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> solver(a);
  return solver.singularValues()(0);
}

double CanonicalForm::maxAbsAngle() const { return phi.size() == 0 ? 0.0 : phi.cwiseAbs().maxCoeff(); }

int CanonicalForm::piCount() const {
  return static_cast<int>((phi.array().abs() == kPi).count());
}

Matrix CanonicalForm::blockDiagonal() const {
  const int n = dimension();
  Matrix d = Matrix::Zero(n, n);
  for (const CanonicalBlock& b : blocks) {
    if (b.size == 1) {
      d(b.index, b.index) = std::cos(b.angle);
    } else {
      d.block(b.index, b.index, 2, 2) = rotation(b.angle);
    }
  }
  return d;
}

Matrix CanonicalForm::reconstruct() const {
  const Matrix pd = rightMultiplyBlocks(P, *this, [](double r) { return rotation(r); });
  return pd * P.transpose();
}

Matrix CanonicalForm::logarithm() const {
  const Matrix pl = rightMultiplyBlocks(P, *this, [](double r) {
    Eigen::Matrix2d l;
    l << 0.0, -r, r, 0.0;
    return l;
  });
  return pl * P.transpose();
}

CanonicalForm orthogonalSchur(const Matrix& q) {
  requireSquare(q, "orthogonalSchur input");
  requireFinite(q, "orthogonalSchur input");
  const double residual = orthogonalityResidual(q);
  if (residual > tol::kOrth) {
    throw Error(Errc::NotOrthogonal, "||Q^T Q - I||_F = " + std::to_string(residual));
  }
  if (q.rows() == 1) {
    CanonicalForm form;
    form.P = Matrix::Ones(1, 1);
    const double r = q(0, 0) >= 0.0 ? 0.0 : kPi;
    form.blocks.push_back({0, 1, r});
    form.phi = Vector::Constant(1, r);
    return form;
  }
  Eigen::RealSchur<Matrix> schur(q);
  const Matrix& t = schur.matrixT();
  auto angle = [](const Eigen::Matrix2d& b) {
    return std::atan2(0.5 * (b(1, 0) - b(0, 1)), 0.5 * (b(0, 0) + b(1, 1)));
  };
  return assemble(schur.matrixU(), splitSchur(t, angle, true), true);
}

CanonicalForm skewCanonical(const Matrix& w) {
  requireSquare(w, "skewCanonical input");
  requireFinite(w, "skewCanonical input");
  const int n = static_cast<int>(w.rows());
  if (n == 1) {
    CanonicalForm form;
    form.P = Matrix::Ones(1, 1);
    form.blocks.push_back({0, 1, 0.0});
    form.phi = Vector::Zero(1);
    return form;
  }
  Eigen::RealSchur<Matrix> schur(w);
  const Matrix& t = schur.matrixT();
  auto angle = [](const Eigen::Matrix2d& b) { return 0.5 * (b(1, 0) - b(0, 1)); };
  // Skew eigenvalues have zero real part, so every 1x1 unit is a zero
  // eigenvalue whatever the sign of its rounding residue.
  std::vector<Unit> units = splitSchur(t, angle, false);
  for (Unit& u : units) {
    if (u.kind == UnitKind::MinusOne) u.kind = UnitKind::PlusOne;
  }
  return assemble(schur.matrixU(), std::move(units), false);
}

Matrix expSkew(const CanonicalForm& skewForm) {
  const Matrix pd = rightMultiplyBlocks(skewForm.P, skewForm, [](double r) { return rotation(r); });
  return pd * skewForm.P.transpose();
}

Matrix qrOrthonormalize(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace polar::linalg
