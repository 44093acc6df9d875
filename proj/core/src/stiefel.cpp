#include "smm/stiefel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace smm {

namespace {

void condition_guard(const SpdMatrix& a, const char* where) {
  double c = a.cond();
  if (c > tol::cond_fail)
    throw IllConditioned(std::string(where) + ": condition number " +
                         std::to_string(c) + " exceeds hard limit");
  if (c > tol::cond_warn)
    std::cerr << "smm: warning: " << where << ": SPD condition number " << c
              << " degrades square-root accuracy\n";
}

}  // namespace

CholeskyStiefelPoint st_construct(const Matrix& q, const SpdMatrix& a) {
  const int n = static_cast<int>(q.rows());
  const int k = a.dim();
  if (k > n) throw InvalidDimensions("need k <= n");
  Matrix r = cholesky_upper(a);
  Matrix frame;
  if (q.cols() == n) {
    frame = q.leftCols(k);
  } else if (q.cols() == k) {
    frame = q;
  } else {
    throw InvalidDimensions("Q must be n x n or n x k");
  }
  if ((frame.transpose() * frame - Matrix::Identity(k, k)).norm() >
      tol::ortho_tol)
    throw NotRotation("frame columns are not orthonormal");
  return {frame * r, a};
}

StMembershipReport st_membership(const Matrix& y, const SpdMatrix& a,
                                 double tol) {
  if (y.cols() != a.dim())
    throw DimensionMismatch("Y column count differs from dim(A)");
  StMembershipReport rep;
  rep.tol = tol;
  rep.scale = 1.0 + a.mat().norm();
  rep.residual = (y.transpose() * y - a.mat()).norm();
  rep.pass = rep.residual <= tol * rep.scale;
  return rep;
}

SpdMatrix geometric_mean_t(const SpdMatrix& a, const SpdMatrix& b, double t) {
  if (a.dim() != b.dim()) throw DimensionMismatch("dim(A) != dim(B)");
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  condition_guard(a, "geometric_mean_t(A)");
  condition_guard(b, "geometric_mean_t(B)");
  SpdMatrix half = spd_power(a, 0.5);
  SpdMatrix ihalf = spd_power(a, -0.5);
  SpdMatrix inner(symmetrize(ihalf.mat() * b.mat() * ihalf.mat()));
  SpdMatrix powered = spd_power(inner, t);
  return SpdMatrix(symmetrize(half.mat() * powered.mat() * half.mat()));
}

double cartan_metric(const SpdMatrix& a, const Matrix& x, const Matrix& y) {
  const int k = a.dim();
  if (x.rows() != k || x.cols() != k || y.rows() != k || y.cols() != k)
    throw DimensionMismatch("tangents must be k x k");
  if ((x - x.transpose()).norm() > tol::sym_tol * (1.0 + x.norm()) ||
      (y - y.transpose()).norm() > tol::sym_tol * (1.0 + y.norm()))
    throw NonSymmetricTangent("Cartan tangents must be symmetric");
  Eigen::LLT<Matrix> llt(a.mat());
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("base point is not positive definite");
  Matrix ax = llt.solve(x);
  Matrix ay = llt.solve(y);
  return (ax * ay).trace();
}

SpdMatrix cartan_geodesic(const SpdMatrix& a, const SpdMatrix& b, double t) {
  if (t < 0.0 || t > 1.0)
    throw InvalidDimensions("geodesic parameter t must lie in [0, 1]");
  return geometric_mean_t(a, b, t);
}

Matrix st_conversion_factor(const SpdMatrix& a, const SpdMatrix& b, double t) {
  if (a.dim() != b.dim()) throw DimensionMismatch("dim(A) != dim(B)");
  condition_guard(a, "st_conversion_factor(A)");
  condition_guard(b, "st_conversion_factor(B)");
  SpdMatrix half = spd_power(a, 0.5);
  SpdMatrix ihalf = spd_power(a, -0.5);
  SpdMatrix inner(symmetrize(ihalf.mat() * b.mat() * ihalf.mat()));
  SpdMatrix powered = spd_power(inner, 0.5 * t);
  return ihalf.mat() * powered.mat() * half.mat();
}

CholeskyStiefelPoint st_convert_homotopy(const CholeskyStiefelPoint& point,
                                         const SpdMatrix& b, double t) {
  if (t < 0.0 || t > 1.0)
    throw InvalidDimensions("homotopy parameter t must lie in [0, 1]");
  StMembershipReport rep =
      st_membership(point.y, point.a, tol::default_membership());
  if (!rep.pass) throw MembershipFailed("input fails Cholesky membership");
  if (t == 0.0) return point;
  Matrix factor = st_conversion_factor(point.a, b, t);
  return {point.y * factor, geometric_mean_t(point.a, b, t)};
}

}  // namespace smm
