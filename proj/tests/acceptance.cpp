// Acceptance checks; prints one pass/fail line per criterion and exits
// nonzero if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "smm/io.hpp"

using namespace smm;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok) {
  std::printf("criterion %2d [%s]: %s\n", idx, ok ? "pass" : "FAIL", name);
  if (!ok) ++failures;
}

Matrix diag5(double a, double b, double c, double d, double e) {
  Vector v(5);
  v << a, b, c, d, e;
  return Matrix(v.asDiagonal());
}

Matrix sym_noise(int n, std::mt19937_64& rng, double magnitude) {
  std::normal_distribution<double> dist(0.0, magnitude);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = dist(rng);
  return m;
}

bool example_reproduction() {
  FlagSignature sig14(5, {1, 4});
  FlagSignature sig23(5, {2, 3});
  IsospectralParams p012({0.0, 1.0, 2.0});
  Matrix a = diag5(0, 1, 1, 1, 2);
  Matrix b = diag5(0, 0, 1, 2, 2);

  bool ok = flag_membership_full(a, sig14, p012, 1e-9).pass;
  ok = ok && flag_membership_full(b, sig23, p012, 1e-9).pass;
  ok = ok && !flag_membership_full(b, sig14, p012, 1e-9).pass;
  ok = ok && std::abs(a.trace() - 5.0) < 1e-12 &&
       std::abs(b.trace() - 5.0) < 1e-12;

  GenericityResult gen = genericity_check(p012, 5, 2);
  ok = ok && gen.verdict == Genericity::NotGeneric &&
       !gen.witness_m.empty() && !gen.witness_m_prime.empty() &&
       gen.witness_m != gen.witness_m_prime;

  double r2 = std::sqrt(2.0);
  Matrix x = diag5(0, 0, 1, r2, r2);
  std::vector<double> traces = {x.trace(), (x * x).trace()};
  ok = ok && solve_multiplicities(traces, 5, IsospectralParams({0.0, 1.0, r2})) ==
                 std::vector<int>{2, 1, 2};
  return ok;
}

bool validator_agreement() {
  FlagSignature sig(5, {2, 3});
  IsospectralParams params({0.0, 1.0, std::sqrt(2.0)});
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    IsospectralPoint member =
        flag_construct(haar_rotation(5, 10'000 + trial), sig, params);
    Matrix perturbed = member.x + sym_noise(5, rng, 1e-3);
    for (const Matrix& x : {member.x, perturbed}) {
      bool full = flag_membership_full(x, sig, params, 1e-9).pass;
      bool generic = flag_membership_generic(x, sig, params, 1e-9).pass;
      if (full != generic) return false;
    }
    if (!flag_membership_full(member.x, sig, params, 1e-9).pass) return false;
    if (flag_membership_full(perturbed, sig, params, 1e-9).pass) return false;
  }
  return true;
}

bool equivariance_suite() {
  for (int trial = 0; trial < 100; ++trial) {
    std::uint64_t seed = 20'000 + trial;

    GrassmannPoint gr = gr_construct(haar_rotation(7, seed), 3, {2.0, -1.0});
    Rotation q7 = haar_rotation(7, seed + 1'000);
    Matrix gmoved = symmetrize(q7.mat() * gr.x * q7.mat().transpose());
    if (!gr_membership(gmoved, 3, gr.params, 1e-9).pass) return false;

    FlagSignature sig(8, {2, 5});
    IsospectralParams params({1.0, -0.5, 2.0});
    IsospectralPoint fl = flag_construct(haar_rotation(8, seed), sig, params);
    Rotation q8 = haar_rotation(8, seed + 2'000);
    Matrix fmoved = symmetrize(q8.mat() * fl.x * q8.mat().transpose());
    if (!flag_membership_full(fmoved, sig, params, 1e-9).pass) return false;

    Matrix a(3, 3);
    a << 2.0, 0.4, 0.1, 0.4, 1.5, 0.2, 0.1, 0.2, 1.0;
    CholeskyStiefelPoint st = st_construct(haar_rotation(6, seed).mat(),
                                           SpdMatrix(a));
    Matrix smoved = haar_rotation(6, seed + 3'000).mat() * st.y;
    if (!st_membership(smoved, st.a, 1e-9).pass) return false;
  }
  return true;
}

bool conversion_coherence() {
  for (int trial = 0; trial < 100; ++trial) {
    GrassmannPoint pt =
        gr_construct(haar_rotation(6, 30'000 + trial), 2, {1.0, 0.0});
    GrassmannPoint affine = gr_convert_affine(pt, {3.0, -2.0});
    IsospectralPoint iso{pt.x, FlagSignature(6, {2}),
                         IsospectralParams({1.0, 0.0})};
    IsospectralPoint homotopy =
        flag_homotopy_convert(iso, IsospectralParams({3.0, -2.0}), 1.0);
    if ((affine.x - homotopy.x).norm() > 1e-10) return false;

    GrassmannPoint involution = gr_convert_affine(pt, {1.0, -1.0});
    Matrix residual = involution.x - (2.0 * pt.x - Matrix::Identity(6, 6));
    if (residual.norm() > 1e-14) return false;
  }
  return true;
}

bool homotopy_sign_condition() {
  FlagSignature sig(4, {2});
  IsospectralPoint pt =
      flag_construct(haar_rotation(4, 41), sig, IsospectralParams({0.0, 1.0}));
  bool rejected = false;
  try {
    flag_homotopy_convert(pt, IsospectralParams({1.0, 0.0}), 0.5);
  } catch (const SignPatternViolation&) {
    rejected = true;
  } catch (const DegenerateInterpolation&) {
    rejected = true;
  }
  if (!rejected) return false;

  FlagSignature sig2(6, {2, 4});
  IsospectralParams a({3.0, 1.0, -2.0});
  IsospectralParams b({5.0, 0.5, -0.25});
  IsospectralPoint src = flag_construct(haar_rotation(6, 42), sig2, a);
  FlagExtraction ref = flag_extract(src);
  for (int step = 0; step <= 10; ++step) {
    IsospectralPoint moved = flag_homotopy_convert(src, b, step / 10.0);
    FlagExtraction ext = flag_extract(moved);
    for (size_t j = 0; j < ref.flag.blocks.size(); ++j) {
      Matrix pr = ref.flag.blocks[j] * ref.flag.blocks[j].transpose();
      Matrix pm = ext.flag.blocks[j] * ext.flag.blocks[j].transpose();
      if ((pr - pm).norm() > 1e-9) return false;
    }
  }
  return true;
}

bool stiefel_cartan_identities() {
  for (int trial = 0; trial < 100; ++trial) {
    std::uint64_t seed = 50'000 + trial;
    Rotation qa = haar_rotation(3, seed);
    Rotation qb = haar_rotation(3, seed + 500);
    Matrix da = Vector::LinSpaced(3, 0.5, 2.5).asDiagonal();
    Matrix db = Vector::LinSpaced(3, 0.8, 3.0).asDiagonal();
    SpdMatrix a(symmetrize(qa.mat() * da * qa.mat().transpose()));
    SpdMatrix b(symmetrize(qb.mat() * db * qb.mat().transpose()));

    CholeskyStiefelPoint pt = st_construct(haar_rotation(6, seed + 1).mat(), a);
    double t = (trial % 11) / 10.0;
    CholeskyStiefelPoint moved = st_convert_homotopy(pt, b, t);
    Matrix target = geometric_mean_t(a, b, t).mat();
    if ((moved.y.transpose() * moved.y - target).norm() > 1e-9) return false;

    double scale = 1e-11 * (1.0 + a.mat().norm() + b.mat().norm());
    if ((cartan_geodesic(a, b, 0.0).mat() - a.mat()).norm() > scale)
      return false;
    if ((cartan_geodesic(a, b, 1.0).mat() - b.mat()).norm() > scale)
      return false;

    Matrix ab = geometric_mean_t(a, b, 0.5).mat();
    Matrix ba = geometric_mean_t(b, a, 0.5).mat();
    if ((ab - ba).norm() > 1e-9 * (1.0 + ab.norm())) return false;
  }
  Matrix s1(1, 1), s4(1, 1);
  s1 << 1.0;
  s4 << 4.0;
  return std::abs(geometric_mean_t(SpdMatrix(s1), SpdMatrix(s4), 0.5).mat()(0, 0) -
                  2.0) <= 1e-14;
}

Matrix random_dense(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

bool isometry_suite() {
  std::mt19937_64 rng(77);

  // flag case, p = 2
  FlagSignature sig(7, {2, 5});
  IsospectralParams params({2.0, -1.0, 0.5});
  std::vector<int> mult = sig.multiplicities();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Matrix> bb, cb;
    for (size_t i = 0; i + 1 < mult.size(); ++i)
      for (size_t j = i + 1; j < mult.size(); ++j) {
        bb.push_back(random_dense(mult[i], mult[j], rng));
        cb.push_back(random_dense(mult[i], mult[j], rng));
      }
    FlagMTangent b(sig, bb), c(sig, cb);
    double lhs = embedded_metric(tangent_push_flag(b, params),
                                 tangent_push_flag(c, params),
                                 MetricKind::Symmetric);
    double rhs = flag_m_metric(b, c, params);
    if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(rhs))) return false;
  }

  // Grassmann closed form, p = 1: f(B) = (b - a) B off-diagonal
  FlagSignature gsig(5, {2});
  IsospectralParams gparams({1.5, -2.0});
  for (int trial = 0; trial < 100; ++trial) {
    Matrix b0 = random_dense(2, 3, rng);
    Matrix c0 = random_dense(2, 3, rng);
    FlagMTangent b(gsig, {b0}), c(gsig, {c0});
    double lhs = embedded_metric(tangent_push_flag(b, gparams),
                                 tangent_push_flag(c, gparams),
                                 MetricKind::Symmetric);
    double rhs = 2.0 * std::pow(1.5 - (-2.0), 2) *
                 (b0.transpose() * c0).trace();
    if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(rhs))) return false;
    Matrix pushed = tangent_push_flag(b, gparams);
    Matrix expect = (-2.0 - 1.5) * b0;
    if ((pushed.topRightCorner(2, 3) - expect).norm() > 1e-12) return false;
  }

  // Stiefel case
  Matrix aspd(3, 3);
  aspd << 4.0, 1.0, 0.5, 1.0, 3.0, 0.2, 0.5, 0.2, 2.0;
  Matrix r = cholesky_upper(SpdMatrix(aspd));
  for (int trial = 0; trial < 100; ++trial) {
    Matrix raw1 = random_dense(3, 3, rng);
    Matrix raw2 = random_dense(3, 3, rng);
    StiefelMTangent b(0.5 * (raw1 - raw1.transpose()).eval(),
                      random_dense(3, 3, rng));
    StiefelMTangent c(0.5 * (raw2 - raw2.transpose()).eval(),
                      random_dense(3, 3, rng));
    double lhs = embedded_metric(tangent_push_stiefel(b, r),
                                 tangent_push_stiefel(c, r),
                                 MetricKind::Rectangular);
    double rhs = stiefel_m_metric(b, c, r);
    if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(rhs))) return false;
  }
  return true;
}

bool condition_numbers() {
  if (cond_number(IsospectralParams({1.0, -1.0})) != 1.0) return false;
  if (!std::isinf(cond_number(IsospectralParams({1.0, 0.0})))) return false;

  std::vector<FlagSignature> sigs = {
      FlagSignature(6, {3}),            // p = 1
      FlagSignature(7, {2, 5}),         // p = 2
      FlagSignature(9, {2, 5, 7}),      // p = 3
      FlagSignature(12, {2, 5, 7, 10})  // p = 4
  };
  for (const FlagSignature& sig : sigs)
    for (double eps : {1.0, 0.1, 0.01}) {
      IsospectralParams p = params_optimize_cond(sig, eps);
      if (!(cond_number(p) <= 1.0 + eps)) return false;
    }
  return true;
}

bool traceless_construction() {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 9);  // 4..12
    int p = 1 + static_cast<int>(rng() % 3);  // 1..3
    // strictly increasing subset of {1, ..., n-1} of size p
    std::vector<int> pool(n - 1);
    for (int i = 0; i < n - 1; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> ks(pool.begin(), pool.begin() + p);
    std::sort(ks.begin(), ks.end());
    FlagSignature sig(n, ks);
    IsospectralParams params = params_traceless(sig);
    IsospectralPoint pt =
        flag_construct(haar_rotation(n, 60'000 + trial), sig, params);
    if (std::abs(pt.x.trace()) > 1e-10) return false;
  }
  return true;
}

bool roundtrips() {
  // flag
  FlagSignature sig(6, {1, 3});
  IsospectralParams params({2.0, 0.0, -1.0});
  IsospectralPoint fl = flag_construct(haar_rotation(6, 71), sig, params);
  FlagExtraction ext = flag_extract(fl);
  if ((flag_construct(ext.q, sig, params).x - fl.x).norm() > 1e-9) return false;

  // Grassmann
  GrassmannPoint gr = gr_construct(haar_rotation(6, 72), 2, {1.0, -1.0});
  Matrix basis = gr_extract(gr);
  if ((gr_from_basis(basis, gr.params).x - gr.x).norm() > 1e-9) return false;

  // Stiefel: Y -> (Q, R) -> Y
  Matrix aspd(2, 2);
  aspd << 2.0, 1.0, 1.0, 2.0;
  CholeskyStiefelPoint st = st_construct(haar_rotation(5, 73).mat(),
                                         SpdMatrix(aspd));
  QrResult qr = qr_positive(st.y);
  if ((qr.q * qr.r - st.y).norm() > 1e-9) return false;
  if ((qr.r.transpose() * qr.r - aspd).norm() > 1e-9) return false;

  // flag <-> product of Grassmannians
  GrassmannProductPoint prod = flag_to_product(ext.flag);
  AbstractFlag back = product_to_flag(prod, 1e-9);
  for (size_t j = 0; j < ext.flag.blocks.size(); ++j) {
    Matrix p1 = ext.flag.blocks[j] * ext.flag.blocks[j].transpose();
    Matrix p2 = back.blocks[j] * back.blocks[j].transpose();
    if ((p1 - p2).norm() > 1e-9) return false;
  }

  // file write -> read -> write is byte-identical
  ModelFile file = from_flag(fl);
  file.seed = 71;
  file.prng = kHaarPrngName;
  std::ostringstream first;
  write_model(file, first);
  std::istringstream in(first.str());
  ModelFile reread = read_model(in);
  std::ostringstream second;
  write_model(reread, second);
  return first.str() == second.str();
}

}  // namespace

int main() {
  report(1, "worked example reproduction", example_reproduction());
  report(2, "validator agreement on 2000 matrices", validator_agreement());
  report(3, "equivariance suite (100 pairs per kind)", equivariance_suite());
  report(4, "change-of-coordinates coherence", conversion_coherence());
  report(5, "homotopy sign condition and flag invariance",
         homotopy_sign_condition());
  report(6, "Stiefel/Cartan identities", stiefel_cartan_identities());
  report(7, "isometry suite", isometry_suite());
  report(8, "condition number selection", condition_numbers());
  report(9, "traceless construction", traceless_construction());
  report(10, "roundtrips and file identity", roundtrips());
  return failures == 0 ? 0 : 1;
}
