#pragma once

#include "smm/linalg.hpp"

namespace smm {

/// Point of the Cholesky model V_A(k,n): n x k matrix Y with Y^T Y = A.
struct CholeskyStiefelPoint {
  Matrix y;
  SpdMatrix a;
};

struct StMembershipReport {
  bool pass = false;
  double residual = 0;  // ||Y^T Y - A||_F
  double scale = 1;     // 1 + ||A||_F
  double tol = 0;
};

/// Y = Q [R; 0] with R the Cholesky factor of A. Accepts an n x n
/// orthogonal Q (det +-1) or an n x k matrix with orthonormal columns.
CholeskyStiefelPoint st_construct(const Matrix& q, const SpdMatrix& a);

StMembershipReport st_membership(const Matrix& y, const SpdMatrix& a,
                                 double tol);

/// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}. Intermediate
/// products are re-symmetrized; t outside [0,1] is accepted as
/// extrapolation.
SpdMatrix geometric_mean_t(const SpdMatrix& a, const SpdMatrix& b, double t);

/// Cartan metric tr(A^{-1} X A^{-1} Y) at base point A.
double cartan_metric(const SpdMatrix& a, const Matrix& x, const Matrix& y);

/// Geodesic from A to B in the Cartan manifold; gamma(t) = A #_t B.
SpdMatrix cartan_geodesic(const SpdMatrix& a, const SpdMatrix& b, double t);

/// The factor A^{-1/2} (A^{-1/2} B A^{-1/2})^{t/2} A^{1/2} applied on the
/// right of Y carries V_A(k,n) onto V_{A #_t B}(k,n).
Matrix st_conversion_factor(const SpdMatrix& a, const SpdMatrix& b, double t);

CholeskyStiefelPoint st_convert_homotopy(const CholeskyStiefelPoint& point,
                                         const SpdMatrix& b, double t);

}  // namespace smm
