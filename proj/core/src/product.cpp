#include "smm/product.hpp"

#include <cmath>

namespace smm {

std::vector<int> GrassmannProductPoint::ranks() const {
  std::vector<int> out;
  out.reserve(projectors.size());
  for (const Matrix& p : projectors) {
    double tr = p.trace();
    double rounded = std::round(tr);
    if (std::abs(tr - rounded) > tol::int_tol)
      throw NotAProduct("projector trace " + std::to_string(tr) +
                        " is not near an integer");
    out.push_back(static_cast<int>(rounded));
  }
  return out;
}

GrassmannProductPoint flag_to_product(const AbstractFlag& flag) {
  if (flag.blocks.empty()) throw InvalidFlag("flag has no blocks");
  Matrix q = flag.concatenated();
  if (q.rows() != q.cols())
    throw InvalidFlag("block widths do not sum to the ambient dimension");
  const int n = static_cast<int>(q.rows());
  if ((q.transpose() * q - Matrix::Identity(n, n)).norm() > tol::ortho_tol)
    throw InvalidFlag("concatenated blocks are not orthonormal");
  GrassmannProductPoint out;
  out.projectors.reserve(flag.blocks.size());
  for (const Matrix& b : flag.blocks)
    out.projectors.push_back(symmetrize(b * b.transpose()));
  return out;
}

AbstractFlag product_to_flag(const GrassmannProductPoint& point, double tol) {
  if (point.projectors.empty()) throw NotAProduct("no projectors given");
  const int n = static_cast<int>(point.projectors.front().rows());

  Matrix sum = Matrix::Zero(n, n);
  for (size_t i = 0; i < point.projectors.size(); ++i) {
    const Matrix& p = point.projectors[i];
    if (p.rows() != n || p.cols() != n)
      throw NotAProduct("projector shapes disagree");
    if ((p - p.transpose()).norm() > tol) throw NotAProduct("not symmetric");
    if ((p * p - p).norm() > tol) throw NotAProduct("not idempotent");
    for (size_t j = i + 1; j < point.projectors.size(); ++j)
      if ((p * point.projectors[j]).norm() > tol)
        throw NotAProduct("factors are not mutually orthogonal");
    sum += p;
  }
  if ((sum - Matrix::Identity(n, n)).norm() > tol)
    throw NotAProduct("projectors do not sum to the identity");

  std::vector<int> ranks = point.ranks();
  AbstractFlag flag;
  flag.blocks.reserve(point.projectors.size());
  for (size_t i = 0; i < point.projectors.size(); ++i) {
    // basis of the range: eigenvectors with eigenvalue near 1
    EighResult eig = sym_eigh(point.projectors[i]);
    Matrix block(n, ranks[i]);
    for (int c = 0; c < ranks[i]; ++c) {
      int src = n - ranks[i] + c;  // ascending order puts the range last
      if (std::abs(eig.eigenvalues(src) - 1.0) > std::max(tol, 1e-8))
        throw NotAProduct("projector spectrum is not {0, 1}");
      block.col(c) = eig.vectors.col(src);
    }
    flag.blocks.push_back(std::move(block));
  }

  Matrix q = flag.concatenated();
  if (q.determinant() < 0) {
    Matrix& last = flag.blocks.back();
    last.col(last.cols() - 1) = -last.col(last.cols() - 1);
  }
  return flag;
}

}  // namespace smm
