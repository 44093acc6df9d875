#include "smm/grassmann.hpp"

#include <algorithm>
#include <cmath>

namespace smm {

QuadraticParams::QuadraticParams(double a_, double b_) : a(a_), b(b_) {
  if (std::abs(a - b) <= tol::param_tol)
    throw DegenerateParams("parameters a and b must be distinct");
}

static double quad_scale(QuadraticParams p, int n) {
  double m = std::max(std::abs(p.a), std::abs(p.b));
  return std::max(1.0, m * m * n);
}

GrassmannPoint gr_construct(const Rotation& q, int k, QuadraticParams params) {
  const int n = q.dim();
  if (k <= 0 || k >= n)
    throw InvalidDimensions("need 0 < k < n");
  Vector diag(n);
  diag.head(k).setConstant(params.a);
  diag.tail(n - k).setConstant(params.b);
  Matrix x = symmetrize(q.mat() * diag.asDiagonal() * q.mat().transpose());
  return {std::move(x), params, k, n};
}

GrassmannPoint gr_from_basis(const Matrix& basis, QuadraticParams params) {
  const int n = static_cast<int>(basis.rows());
  const int k = static_cast<int>(basis.cols());
  if (k <= 0 || k >= n) throw InvalidDimensions("need 0 < k < n");
  QrResult qr = qr_positive(basis);  // throws RankDeficient
  Matrix proj = qr.q * qr.q.transpose();
  Matrix x = symmetrize(params.a * proj +
                        params.b * (Matrix::Identity(n, n) - proj));
  return {std::move(x), params, k, n};
}

GrMembershipReport gr_membership(const Matrix& x, int k, QuadraticParams params,
                                 double tol) {
  GrMembershipReport rep;
  rep.tol = tol;
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n) throw InvalidDimensions("matrix must be square");
  rep.scale = quad_scale(params, n);
  rep.symmetry_residual = (x - x.transpose()).norm();
  Matrix id = Matrix::Identity(n, n);
  rep.polynomial_residual = ((x - params.a * id) * (x - params.b * id)).norm();
  rep.trace_residual =
      std::abs(x.trace() - (params.a * k + params.b * (n - k)));
  double bound = tol * rep.scale;
  rep.pass = rep.symmetry_residual <= bound &&
             rep.polynomial_residual <= bound && rep.trace_residual <= bound;
  return rep;
}

Matrix gr_extract(const GrassmannPoint& point) {
  GrMembershipReport rep = gr_membership(point.x, point.k, point.params,
                                         tol::default_membership());
  if (!rep.pass) throw MembershipFailed("point fails quadratic membership");
  EighResult eig = sym_eigh(point.x);
  Vector targets(2);
  targets << point.params.a, point.params.b;
  std::vector<int> expected = {point.k, point.n - point.k};
  double gap = std::abs(point.params.a - point.params.b);
  double ctol = std::min(0.45 * gap, 1e-6 * rep.scale);
  Clustering cl = cluster_eigenvalues(eig.eigenvalues, targets, ctol, &expected);
  Matrix basis(point.n, point.k);
  int col = 0;
  for (int i = 0; i < point.n; ++i)
    if (cl.assignment[i] == 0) basis.col(col++) = eig.vectors.col(i);
  return basis;
}

GrassmannPoint gr_convert_affine(const GrassmannPoint& point,
                                 QuadraticParams target) {
  const double a = point.params.a, b = point.params.b;
  const double c = target.a, d = target.b;
  Matrix id = Matrix::Identity(point.n, point.n);
  Matrix x = d * id + ((c - d) / (a - b)) * (point.x - b * id);
  return {symmetrize(x), target, point.k, point.n};
}

Matrix rp1_embed(double x, double y, double r, double c, double s) {
  double h = std::hypot(x, y);
  if (h == 0.0) throw ZeroVector("(x, y) must be nonzero");
  if (std::abs(c * c + s * s - 1.0) > tol::param_tol)
    throw NotRotation("(c, s) must satisfy c^2 + s^2 = 1");
  if (r <= 0) throw InvalidDimensions("r must be positive");
  double u = x / h, v = y / h;
  // canonical representative of the line: antipodal inputs coincide
  if (u < 0 || (u == 0 && v < 0)) {
    u = -u;
    v = -v;
  }
  Matrix out(2, 2);
  out(0, 0) = r * (c * u - s * v);
  out(0, 1) = r * (s * u + c * v);
  out(1, 0) = out(0, 1);
  out(1, 1) = -out(0, 0);
  return out;
}

}  // namespace smm
