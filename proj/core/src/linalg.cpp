#include "smm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace smm {

SpdMatrix::SpdMatrix(Matrix a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw NotPositiveDefinite("matrix must be square and nonempty");
  double nrm = a.norm();
  if ((a - a.transpose()).norm() > tol::sym_tol * std::max(1.0, nrm))
    throw NonSymmetric("matrix is not symmetric");
  a_ = symmetrize(a);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NoConvergence("eigenvalue check failed");
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (lo <= tol::clamp_eps_factor * std::max(1.0, hi))
    throw NotPositiveDefinite("smallest eigenvalue " + std::to_string(lo) +
                              " is not positive");
}

SpdMatrix SpdMatrix::identity(int dim) {
  return SpdMatrix(Matrix::Identity(dim, dim));
}

double SpdMatrix::cond() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

Rotation::Rotation(Matrix q) {
  if (q.rows() != q.cols() || q.rows() == 0)
    throw NotRotation("matrix must be square and nonempty");
  int n = static_cast<int>(q.rows());
  if ((q.transpose() * q - Matrix::Identity(n, n)).norm() > tol::ortho_tol)
    throw NotRotation("columns are not orthonormal");
  if (q.determinant() <= 0) throw NotRotation("determinant is not +1");
  q_ = std::move(q);
}

Rotation Rotation::identity(int dim) {
  return Rotation(Matrix::Identity(dim, dim));
}

EighResult sym_eigh(const Matrix& s) {
  if (s.rows() != s.cols()) throw NonSymmetric("matrix must be square");
  double nrm = s.norm();
  if ((s - s.transpose()).norm() > tol::sym_tol * std::max(1.0, nrm))
    throw NonSymmetric("asymmetry exceeds tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(s));
  if (es.info() != Eigen::Success)
    throw NoConvergence("symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

QrResult qr_positive(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  const int k = static_cast<int>(m.cols());
  if (n < k || k == 0) throw RankDeficient("need n >= k >= 1");

  Eigen::JacobiSVD<Matrix> svd(m);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(k - 1);
  if (smin <= tol::rank_tol_factor * smax || smax == 0.0)
    throw RankDeficient("smallest singular value below rank tolerance");

  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  // sign convention: force positive diagonal of R
  for (int i = 0; i < k; ++i) {
    if (r(i, i) < 0) {
      r.row(i) = -r.row(i);
      q.col(i) = -q.col(i);
    }
  }
  return {std::move(q), std::move(r)};
}

Matrix cholesky_upper(const SpdMatrix& a) {
  Eigen::LLT<Matrix> llt(a.mat());
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("Cholesky factorization failed");
  return llt.matrixU();
}

SpdMatrix spd_power(const SpdMatrix& a, double t) {
  EighResult eig = sym_eigh(a.mat());
  double clamp = tol::clamp_eps_factor * eig.eigenvalues.maxCoeff();
  Vector powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < powered.size(); ++i)
    powered(i) = std::pow(std::max(eig.eigenvalues(i), clamp), t);
  Matrix out = eig.vectors * powered.asDiagonal() * eig.vectors.transpose();
  return SpdMatrix(symmetrize(out));
}

namespace {

// Fixed Gaussian source (kHaarPrngName): mt19937_64 feeding Box-Muller.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;         // [0,1)
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

Rotation haar_rotation(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidDimensions("n must be positive");
  GaussianStream gauss(seed);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss.next();
  QrResult qr = qr_positive(g);
  Matrix q = qr.q;
  if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
  return Rotation(std::move(q));
}

Clustering cluster_eigenvalues(const Vector& values, const Vector& targets,
                               double tol, const std::vector<int>* expected) {
  const int m = static_cast<int>(targets.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (targets(i) == targets(j))
        throw UnresolvedCluster("targets must be pairwise distinct");

  Clustering out;
  out.multiplicities.assign(m, 0);
  out.assignment.reserve(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    int best = 0;
    double best_gap = std::abs(values(i) - targets(0));
    for (int j = 1; j < m; ++j) {
      double gap = std::abs(values(i) - targets(j));
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best_gap > tol)
      throw UnresolvedCluster("value " + std::to_string(values(i)) +
                              " is not within tolerance of any target");
    out.assignment.push_back(best);
    ++out.multiplicities[best];
  }
  if (expected && *expected != out.multiplicities)
    throw MultiplicityMismatch("cluster multiplicities disagree with expected");
  return out;
}

}  // namespace smm
