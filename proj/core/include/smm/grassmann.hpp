#pragma once

#include "smm/linalg.hpp"

namespace smm {

/// Pair of distinct eigenvalue parameters (a, b) of a quadratic model.
struct QuadraticParams {
  double a;
  double b;
  QuadraticParams(double a_, double b_);
};

/// Point of Gr_{a,b}(k,n): symmetric X with (X - aI)(X - bI) = 0 and
/// tr X = ak + b(n-k).
struct GrassmannPoint {
  Matrix x;
  QuadraticParams params;
  int k;
  int n;
};

struct GrMembershipReport {
  bool pass = false;
  double symmetry_residual = 0;
  double polynomial_residual = 0;
  double trace_residual = 0;
  double scale = 1;  // max(1, max(|a|,|b|)^2 * n)
  double tol = 0;
};

GrassmannPoint gr_construct(const Rotation& q, int k, QuadraticParams params);

/// a P + b (I - P) with P the orthogonal projector onto span(B).
GrassmannPoint gr_from_basis(const Matrix& basis, QuadraticParams params);

GrMembershipReport gr_membership(const Matrix& x, int k, QuadraticParams params,
                                 double tol);

/// Orthonormal basis of the a-eigenspace.
Matrix gr_extract(const GrassmannPoint& point);

/// Affine change of coordinates X' = dI + ((c-d)/(a-b))(X - bI); maps
/// eigenvalue a to c and b to d without any eigendecomposition.
GrassmannPoint gr_convert_affine(const GrassmannPoint& point,
                                 QuadraticParams target);

/// Equivariant embedding of the line span{(x,y)} into traceless symmetric
/// 2x2 matrices, determined by r > 0 and a rotation (c, s). The input is
/// normalized first so that (x,y) and (-x,-y) map to the same output.
Matrix rp1_embed(double x, double y, double r, double c, double s);

}  // namespace smm
