#pragma once

#include "smm/flag.hpp"
#include "smm/linalg.hpp"

namespace smm {

/// Block-skew tangent datum for the flag complement: blocks B_ij for
/// i < j; lower blocks are -B_ij^T and diagonal blocks are zero.
class FlagMTangent {
public:
  FlagMTangent(FlagSignature sig, std::vector<Matrix> upper_blocks);

  /// Split a skew matrix with zero diagonal blocks into its upper blocks.
  static FlagMTangent from_matrix(const FlagSignature& sig, const Matrix& m);

  const FlagSignature& sig() const { return sig_; }
  /// Block B_ij for 0-based i < j.
  const Matrix& block(int i, int j) const;
  /// Assembled skew-symmetric n x n matrix.
  Matrix assemble() const;

private:
  int flat_index(int i, int j) const;
  FlagSignature sig_;
  std::vector<Matrix> blocks_;  // (0,1), (0,2), ..., lexicographic
};

/// Tangent datum for the Stiefel complement: skew B1 (k x k) and dense
/// B2 ((n-k) x k); assembled form is [[B1, -B2^T], [B2, 0]].
struct StiefelMTangent {
  Matrix b1;
  Matrix b2;
  StiefelMTangent(Matrix b1_, Matrix b2_);
  Matrix assemble() const;
};

/// 2 sum_{i<j} (a_i - a_j)^2 tr(B_ij^T C_ij).
double flag_m_metric(const FlagMTangent& b, const FlagMTangent& c,
                     const IsospectralParams& params);

/// tr(R^T (B1^T C1 + B2^T C2) R) with R the Cholesky factor of the
/// parameter matrix; R = I gives the unweighted trace form.
double stiefel_m_metric(const StiefelMTangent& b, const StiefelMTangent& c,
                        const Matrix& r);

/// Differential of the isospectral embedding at the base point:
/// f(B) = B Lambda + Lambda B^T, block (i,j) equal to (a_j - a_i) B_ij.
Matrix tangent_push_flag(const FlagMTangent& b, const IsospectralParams& params);

/// Differential of the Cholesky embedding: f(B) = B [R; 0].
Matrix tangent_push_stiefel(const StiefelMTangent& b, const Matrix& r);

enum class MetricKind { Symmetric, Rectangular };

/// Euclidean metric of the ambient space: tr(UV) on symmetric matrices,
/// tr(U^T V) on rectangular ones.
double embedded_metric(const Matrix& u, const Matrix& v, MetricKind kind);

/// Orthogonal projection of a symmetric Z onto the embedded tangent
/// space at Xp: zero the diagonal blocks in the eigenbasis of Xp.
Matrix tangent_project_flag(const Matrix& z, const IsospectralPoint& point);

}  // namespace smm
