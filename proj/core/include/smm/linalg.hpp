#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "smm/errors.hpp"
#include "smm/tolerances.hpp"

namespace smm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symmetric positive definite matrix. Symmetrized on construction,
/// smallest eigenvalue checked to be positive.
class SpdMatrix {
public:
  explicit SpdMatrix(Matrix a);
  static SpdMatrix identity(int dim);

  const Matrix& mat() const { return a_; }
  int dim() const { return static_cast<int>(a_.rows()); }

  /// Ratio of largest to smallest eigenvalue.
  double cond() const;

private:
  Matrix a_;
};

/// Orthogonal matrix with determinant +1.
class Rotation {
public:
  explicit Rotation(Matrix q);
  static Rotation identity(int dim);

  const Matrix& mat() const { return q_; }
  int dim() const { return static_cast<int>(q_.rows()); }

private:
  Matrix q_;
};

struct EighResult {
  Vector eigenvalues;  // ascending
  Matrix vectors;      // orthogonal, columns match eigenvalues
};

/// Symmetric eigendecomposition, eigenvalues ascending.
EighResult sym_eigh(const Matrix& s);

struct QrResult {
  Matrix q;  // n x k, orthonormal columns
  Matrix r;  // k x k, upper triangular, positive diagonal
};

/// Thin QR with the positive-diagonal sign convention, unique for
/// full-column-rank input.
QrResult qr_positive(const Matrix& m);

/// Upper-triangular Cholesky factor R with A = R^T R, R_ii > 0.
Matrix cholesky_upper(const SpdMatrix& a);

/// A^t through the eigendecomposition, eigenvalues clamped below.
SpdMatrix spd_power(const SpdMatrix& a, double t);

/// Haar-distributed rotation, deterministic in the seed.
/// PRNG algorithm: see kHaarPrngName.
Rotation haar_rotation(int n, std::uint64_t seed);

/// Identifier of the Gaussian source used by haar_rotation, recorded in
/// file manifests so samples are reproducible across platforms.
inline constexpr const char* kHaarPrngName = "mt19937_64-boxmuller-v1";

struct Clustering {
  std::vector<int> assignment;      // assignment[i] = target index of values[i]
  std::vector<int> multiplicities;  // per target
};

/// Assign each value to its nearest target; every value must land within
/// tol of some target, and multiplicities must match `expected` when given.
Clustering cluster_eigenvalues(const Vector& values, const Vector& targets,
                               double tol,
                               const std::vector<int>* expected = nullptr);

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace smm
