#include "smm/metrics.hpp"

#include <cmath>
#include <numeric>

namespace smm {

namespace {

std::vector<int> block_offsets(const std::vector<int>& mult) {
  std::vector<int> off(mult.size() + 1, 0);
  std::partial_sum(mult.begin(), mult.end(), off.begin() + 1);
  return off;
}

}  // namespace

FlagMTangent::FlagMTangent(FlagSignature sig, std::vector<Matrix> upper_blocks)
    : sig_(std::move(sig)), blocks_(std::move(upper_blocks)) {
  std::vector<int> mult = sig_.multiplicities();
  const int m = static_cast<int>(mult.size());
  if (static_cast<int>(blocks_.size()) != m * (m - 1) / 2)
    throw ShapeMismatch("wrong number of upper blocks for signature");
  int at = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j, ++at)
      if (blocks_[at].rows() != mult[i] || blocks_[at].cols() != mult[j])
        throw ShapeMismatch("block (" + std::to_string(i) + "," +
                            std::to_string(j) + ") has wrong shape");
}

FlagMTangent FlagMTangent::from_matrix(const FlagSignature& sig,
                                       const Matrix& m) {
  const int n = sig.n();
  if (m.rows() != n || m.cols() != n)
    throw ShapeMismatch("matrix shape disagrees with signature");
  if ((m + m.transpose()).norm() > tol::sym_tol * (1.0 + m.norm()))
    throw NonSymmetricTangent("tangent matrix must be skew-symmetric");
  std::vector<int> mult = sig.multiplicities();
  std::vector<int> off = block_offsets(mult);
  const int nb = static_cast<int>(mult.size());
  for (int i = 0; i < nb; ++i)
    if (m.block(off[i], off[i], mult[i], mult[i]).norm() >
        tol::sym_tol * (1.0 + m.norm()))
      throw ShapeMismatch("diagonal blocks must vanish");
  std::vector<Matrix> blocks;
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      blocks.push_back(m.block(off[i], off[j], mult[i], mult[j]));
  return FlagMTangent(sig, std::move(blocks));
}

int FlagMTangent::flat_index(int i, int j) const {
  const int m = sig_.p() + 1;
  // position of (i,j), i<j, in lexicographic upper-triangle order
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

const Matrix& FlagMTangent::block(int i, int j) const {
  return blocks_[flat_index(i, j)];
}

Matrix FlagMTangent::assemble() const {
  std::vector<int> mult = sig_.multiplicities();
  std::vector<int> off = block_offsets(mult);
  Matrix out = Matrix::Zero(sig_.n(), sig_.n());
  const int m = static_cast<int>(mult.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Matrix& b = block(i, j);
      out.block(off[i], off[j], mult[i], mult[j]) = b;
      out.block(off[j], off[i], mult[j], mult[i]) = -b.transpose();
    }
  return out;
}

StiefelMTangent::StiefelMTangent(Matrix b1_, Matrix b2_)
    : b1(std::move(b1_)), b2(std::move(b2_)) {
  if (b1.rows() != b1.cols()) throw ShapeMismatch("B1 must be square");
  if (b2.cols() != b1.rows())
    throw ShapeMismatch("B2 must have k columns");
  if ((b1 + b1.transpose()).norm() > tol::sym_tol * (1.0 + b1.norm()))
    throw NonSymmetricTangent("B1 must be skew-symmetric");
}

Matrix StiefelMTangent::assemble() const {
  const int k = static_cast<int>(b1.rows());
  const int nk = static_cast<int>(b2.rows());
  Matrix out = Matrix::Zero(k + nk, k + nk);
  out.topLeftCorner(k, k) = b1;
  out.topRightCorner(k, nk) = -b2.transpose();
  out.bottomLeftCorner(nk, k) = b2;
  return out;
}

double flag_m_metric(const FlagMTangent& b, const FlagMTangent& c,
                     const IsospectralParams& params) {
  if (!(b.sig() == c.sig())) throw ShapeMismatch("signatures differ");
  if (params.size() != b.sig().p() + 1)
    throw LengthMismatch("need p+1 parameters");
  const int m = params.size();
  double sum = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double w = params[i] - params[j];
      sum += w * w * (b.block(i, j).transpose() * c.block(i, j)).trace();
    }
  return 2.0 * sum;
}

double stiefel_m_metric(const StiefelMTangent& b, const StiefelMTangent& c,
                        const Matrix& r) {
  if (b.b1.rows() != c.b1.rows() || b.b2.rows() != c.b2.rows())
    throw ShapeMismatch("tangent shapes differ");
  if (r.rows() != b.b1.rows() || r.cols() != b.b1.rows())
    throw ShapeMismatch("R must be k x k");
  Matrix inner = b.b1.transpose() * c.b1 + b.b2.transpose() * c.b2;
  return (r.transpose() * inner * r).trace();
}

Matrix tangent_push_flag(const FlagMTangent& b,
                         const IsospectralParams& params) {
  if (params.size() != b.sig().p() + 1)
    throw LengthMismatch("need p+1 parameters");
  std::vector<int> mult = b.sig().multiplicities();
  std::vector<int> off = block_offsets(mult);
  const int m = params.size();
  Matrix out = Matrix::Zero(b.sig().n(), b.sig().n());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Matrix blk = (params[j] - params[i]) * b.block(i, j);
      out.block(off[i], off[j], mult[i], mult[j]) = blk;
      out.block(off[j], off[i], mult[j], mult[i]) = blk.transpose();
    }
  return out;
}

Matrix tangent_push_stiefel(const StiefelMTangent& b, const Matrix& r) {
  const int k = static_cast<int>(b.b1.rows());
  if (r.rows() != k || r.cols() != k) throw ShapeMismatch("R must be k x k");
  Matrix stacked(k + b.b2.rows(), k);
  stacked.topRows(k) = b.b1;
  stacked.bottomRows(b.b2.rows()) = b.b2;
  return stacked * r;
}

double embedded_metric(const Matrix& u, const Matrix& v, MetricKind kind) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw ShapeMismatch("operand shapes differ");
  if (kind == MetricKind::Symmetric) {
    if (u.rows() != u.cols()) throw ShapeMismatch("symmetric kind needs square");
    if ((u - u.transpose()).norm() > tol::sym_tol * (1.0 + u.norm()) ||
        (v - v.transpose()).norm() > tol::sym_tol * (1.0 + v.norm()))
      throw NonSymmetricTangent("symmetric kind needs symmetric operands");
    return (u * v).trace();
  }
  return (u.transpose() * v).trace();
}

Matrix tangent_project_flag(const Matrix& z, const IsospectralPoint& point) {
  const int n = point.sig.n();
  if (z.rows() != n || z.cols() != n)
    throw ShapeMismatch("Z shape disagrees with the base point");
  FlagExtraction ext = flag_extract(point);  // throws MembershipFailed
  const Matrix& q = ext.q.mat();
  Matrix w = q.transpose() * symmetrize(z) * q;
  std::vector<int> mult = point.sig.multiplicities();
  std::vector<int> off = block_offsets(mult);
  for (size_t i = 0; i < mult.size(); ++i)
    w.block(off[i], off[i], mult[i], mult[i]).setZero();
  return symmetrize(q * w * q.transpose());
}

}  // namespace smm
