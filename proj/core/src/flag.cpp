#include "smm/flag.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

namespace smm {

FlagSignature::FlagSignature(int n, std::vector<int> k)
    : n_(n), k_(std::move(k)) {
  if (n_ <= 0) throw InvalidSignature("n must be positive");
  if (k_.empty()) throw InvalidSignature("signature needs at least one k");
  int prev = 0;
  for (int ki : k_) {
    if (ki <= prev) throw InvalidSignature("k must be strictly increasing");
    prev = ki;
  }
  if (k_.back() >= n_) throw InvalidSignature("kp must be smaller than n");
}

std::vector<int> FlagSignature::multiplicities() const {
  std::vector<int> mult;
  mult.reserve(k_.size() + 1);
  int prev = 0;
  for (int ki : k_) {
    mult.push_back(ki - prev);
    prev = ki;
  }
  mult.push_back(n_ - prev);
  return mult;
}

IsospectralParams::IsospectralParams(std::vector<double> a) : a_(std::move(a)) {
  if (a_.size() < 2) throw DegenerateParams("need at least two parameters");
  for (size_t i = 0; i < a_.size(); ++i)
    for (size_t j = i + 1; j < a_.size(); ++j)
      if (std::abs(a_[i] - a_[j]) <= tol::param_tol)
        throw DegenerateParams("parameters must be pairwise distinct");
}

Matrix AbstractFlag::concatenated() const {
  int n = static_cast<int>(blocks.front().rows());
  int cols = 0;
  for (const Matrix& b : blocks) cols += static_cast<int>(b.cols());
  Matrix q(n, cols);
  int at = 0;
  for (const Matrix& b : blocks) {
    q.middleCols(at, b.cols()) = b;
    at += static_cast<int>(b.cols());
  }
  return q;
}

static void check_lengths(const FlagSignature& sig,
                          const IsospectralParams& params) {
  if (params.size() != sig.p() + 1)
    throw LengthMismatch("need p+1 parameters for a p-step signature");
}

static Vector block_diagonal(const FlagSignature& sig,
                             const IsospectralParams& params) {
  std::vector<int> mult = sig.multiplicities();
  Vector d(sig.n());
  int at = 0;
  for (size_t j = 0; j < mult.size(); ++j) {
    d.segment(at, mult[j]).setConstant(params[static_cast<int>(j)]);
    at += mult[j];
  }
  return d;
}

IsospectralPoint flag_construct(const Rotation& q, const FlagSignature& sig,
                                const IsospectralParams& params) {
  check_lengths(sig, params);
  if (q.dim() != sig.n())
    throw InvalidDimensions("rotation dimension disagrees with signature");
  Vector d = block_diagonal(sig, params);
  Matrix x = symmetrize(q.mat() * d.asDiagonal() * q.mat().transpose());
  return {std::move(x), sig, params};
}

namespace {

struct ResidualScales {
  double sym;
  double poly;
  std::vector<double> trace;  // per power i = 1..p
};

// Residuals of the i-th power grow with ||X||^i; scale tolerances to match.
ResidualScales membership_scales(const Matrix& x,
                                 const IsospectralParams& params, int powers) {
  ResidualScales s;
  double nx = x.norm();
  double amax = 0;
  for (int j = 0; j < params.size(); ++j)
    amax = std::max(amax, std::abs(params[j]));
  s.sym = 1.0 + nx;
  s.poly = 1.0 + std::pow(nx + amax, params.size());
  double acc = 1.0;
  for (int i = 1; i <= powers; ++i) {
    acc *= nx;
    s.trace.push_back(1.0 + acc);
  }
  return s;
}

}  // namespace

FlagMembershipReport flag_membership_full(const Matrix& x,
                                          const FlagSignature& sig,
                                          const IsospectralParams& params,
                                          double tol) {
  check_lengths(sig, params);
  const int n = sig.n();
  if (x.rows() != n || x.cols() != n)
    throw InvalidDimensions("matrix shape disagrees with signature");
  const int p = sig.p();
  std::vector<int> mult = sig.multiplicities();

  FlagMembershipReport rep;
  rep.tol = tol;
  ResidualScales scales = membership_scales(x, params, p);
  rep.scale = scales.poly;
  rep.symmetry_residual = (x - x.transpose()).norm();

  Matrix poly = Matrix::Identity(n, n);
  for (int j = 0; j < params.size(); ++j)
    poly = poly * (x - params[j] * Matrix::Identity(n, n));
  rep.polynomial_residual = poly.norm();

  bool pass = rep.symmetry_residual <= tol * scales.sym &&
              rep.polynomial_residual <= tol * scales.poly;

  Matrix power = Matrix::Identity(n, n);
  for (int i = 1; i <= p; ++i) {
    power = power * x;
    double expect = 0;
    for (size_t j = 0; j < mult.size(); ++j)
      expect += mult[j] * std::pow(params[static_cast<int>(j)], i);
    double res = std::abs(power.trace() - expect);
    rep.trace_residuals.push_back(res);
    pass = pass && res <= tol * scales.trace[i - 1];
  }
  rep.pass = pass;
  return rep;
}

FlagMembershipReport flag_membership_generic(const Matrix& x,
                                             const FlagSignature& sig,
                                             const IsospectralParams& params,
                                             double tol) {
  check_lengths(sig, params);
  const int n = sig.n();
  if (x.rows() != n || x.cols() != n)
    throw InvalidDimensions("matrix shape disagrees with signature");
  GenericityResult gen = genericity_check(params, n, sig.p());
  if (gen.verdict != Genericity::Generic)
    throw NotGeneric(gen.verdict == Genericity::Undecided
                         ? "genericity undecided at budget; use the full validator"
                         : "parameters admit a multiplicity collision");

  FlagMembershipReport rep;
  rep.tol = tol;
  ResidualScales scales = membership_scales(x, params, 1);
  rep.scale = scales.poly;
  rep.symmetry_residual = (x - x.transpose()).norm();

  Matrix poly = Matrix::Identity(n, n);
  for (int j = 0; j < params.size(); ++j)
    poly = poly * (x - params[j] * Matrix::Identity(n, n));
  rep.polynomial_residual = poly.norm();

  std::vector<int> mult = sig.multiplicities();
  double expect = 0;
  for (size_t j = 0; j < mult.size(); ++j)
    expect += mult[j] * params[static_cast<int>(j)];
  rep.trace_residuals.push_back(std::abs(x.trace() - expect));

  rep.pass = rep.symmetry_residual <= tol * scales.sym &&
             rep.polynomial_residual <= tol * scales.poly &&
             rep.trace_residuals[0] <= tol * scales.trace[0];
  return rep;
}

std::vector<double> vandermonde_solve(const std::vector<double>& nodes,
                                      std::vector<double> rhs) {
  const int m = static_cast<int>(nodes.size());
  if (rhs.size() != nodes.size())
    throw LengthMismatch("rhs length must match node count");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (nodes[i] == nodes[j])
        throw SingularSystem("duplicate Vandermonde nodes");

  // Björck-Pereyra recurrence for V(nodes) x = rhs, V_ij = nodes_j^i.
  for (int k = 0; k < m - 1; ++k)
    for (int j = m - 1; j > k; --j)
      rhs[j] -= nodes[k] * rhs[j - 1];
  for (int k = m - 2; k >= 0; --k) {
    for (int j = k + 1; j < m; ++j) rhs[j] /= nodes[j] - nodes[j - k - 1];
    for (int j = k; j < m - 1; ++j) rhs[j] -= rhs[j + 1];
  }
  return rhs;
}

std::vector<int> solve_multiplicities(const std::vector<double>& traces, int n,
                                      const IsospectralParams& params) {
  const int m = params.size();
  if (static_cast<int>(traces.size()) != m - 1)
    throw LengthMismatch("need traces of powers 1..p");
  std::vector<double> rhs;
  rhs.reserve(m);
  rhs.push_back(static_cast<double>(n));
  rhs.insert(rhs.end(), traces.begin(), traces.end());
  std::vector<double> sol = vandermonde_solve(params.values(), std::move(rhs));

  std::vector<int> mult;
  mult.reserve(m);
  for (double v : sol) {
    double rounded = std::round(v);
    if (std::abs(v - rounded) > tol::int_tol)
      throw NonIntegralSolution("multiplicity " + std::to_string(v) +
                                " is not near an integer");
    if (rounded < 1.0)
      throw NonPositiveMultiplicity("multiplicity " + std::to_string(rounded) +
                                    " is not positive");
    mult.push_back(static_cast<int>(rounded));
  }
  return mult;
}

namespace {

// Deterministic enumeration of compositions of n into m positive parts.
// Calls visit(parts) in lexicographic order; returns false if aborted.
template <typename F>
void for_each_composition(int n, int m, F&& visit) {
  std::vector<int> parts(m, 1);
  parts[m - 1] = n - m + 1;
  std::function<bool(int, int)> rec = [&](int pos, int left) -> bool {
    if (pos == m - 1) {
      parts[pos] = left;
      return visit(parts);
    }
    for (int v = 1; v <= left - (m - 1 - pos); ++v) {
      parts[pos] = v;
      if (!rec(pos + 1, left - v)) return false;
    }
    return true;
  };
  rec(0, n);
}

double binomial_est(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace

GenericityResult genericity_check(const IsospectralParams& params, int n, int p,
                                  std::uint64_t budget) {
  if (params.size() != p + 1)
    throw LengthMismatch("need p+1 parameters");
  GenericityResult out;
  double count_est = binomial_est(n - 1, p);
  if (count_est > static_cast<double>(budget)) {
    out.verdict = Genericity::Undecided;
    return out;
  }

  double anorm = 0;
  for (int j = 0; j <= p; ++j) anorm += params[j] * params[j];
  anorm = std::sqrt(anorm);
  const double gen_tol = tol::gen_tol_factor * anorm * n;

  std::vector<std::pair<double, std::uint32_t>> sums;
  sums.reserve(static_cast<size_t>(count_est) + 1);
  std::uint32_t index = 0;
  for_each_composition(n, p + 1, [&](const std::vector<int>& parts) {
    double dot = 0;
    for (int j = 0; j <= p; ++j) dot += params[j] * parts[j];
    sums.emplace_back(dot, index++);
    return true;
  });

  std::sort(sums.begin(), sums.end());
  std::uint32_t wa = 0, wb = 0;
  bool collided = false;
  for (size_t i = 0; i + 1 < sums.size(); ++i) {
    if (std::abs(sums[i + 1].first - sums[i].first) <= gen_tol) {
      wa = sums[i].second;
      wb = sums[i + 1].second;
      collided = true;
      break;
    }
  }
  if (!collided) {
    out.verdict = Genericity::Generic;
    return out;
  }

  out.verdict = Genericity::NotGeneric;
  index = 0;
  for_each_composition(n, p + 1, [&](const std::vector<int>& parts) {
    if (index == wa) out.witness_m = parts;
    if (index == wb) out.witness_m_prime = parts;
    ++index;
    return out.witness_m.empty() || out.witness_m_prime.empty();
  });
  return out;
}

FlagExtraction flag_extract(const IsospectralPoint& point) {
  FlagMembershipReport rep = flag_membership_full(
      point.x, point.sig, point.params, tol::default_membership());
  if (!rep.pass) throw MembershipFailed("point fails isospectral membership");

  EighResult eig = sym_eigh(point.x);
  const int m = point.params.size();
  Vector targets(m);
  double min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    targets(j) = point.params[j];
    for (int i = 0; i < j; ++i)
      min_gap = std::min(min_gap, std::abs(targets(j) - point.params[i]));
  }
  std::vector<int> expected = point.sig.multiplicities();
  double ctol = std::min(0.45 * min_gap, 1e-6 * (1.0 + point.x.norm()));
  Clustering cl = cluster_eigenvalues(eig.eigenvalues, targets, ctol, &expected);

  // blocks follow the parameter order, not eigenvalue order
  AbstractFlag flag;
  flag.blocks.reserve(m);
  for (int j = 0; j < m; ++j) {
    Matrix block(point.sig.n(), expected[j]);
    int col = 0;
    for (int i = 0; i < point.sig.n(); ++i)
      if (cl.assignment[i] == j) block.col(col++) = eig.vectors.col(i);
    flag.blocks.push_back(std::move(block));
  }

  Matrix q = flag.concatenated();
  if (q.determinant() < 0) {
    Matrix& last = flag.blocks.back();
    last.col(last.cols() - 1) = -last.col(last.cols() - 1);
    q = flag.concatenated();
  }
  return {std::move(flag), Rotation(std::move(q))};
}

IsospectralPoint flag_homotopy_convert(const IsospectralPoint& point,
                                       const IsospectralParams& target,
                                       double t) {
  if (target.size() != point.params.size())
    throw LengthMismatch("target parameter count differs");
  if (t < 0.0 || t > 1.0)
    throw InvalidDimensions("homotopy parameter t must lie in [0, 1]");
  if (t == 0.0) return point;

  const int m = point.params.size();
  if (t < 1.0) {
    // interior points need the interpolated parameters to stay distinct
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double da = point.params[i] - point.params[j];
        double db = target[i] - target[j];
        if ((da > 0) != (db > 0))
          throw SignPatternViolation(
              "pairwise order of parameters differs between endpoints");
      }
  }

  std::vector<double> interp(m);
  for (int j = 0; j < m; ++j)
    interp[j] = (1.0 - t) * point.params[j] + t * target[j];
  IsospectralParams mid = [&] {
    try {
      return IsospectralParams(interp);
    } catch (const DegenerateParams& e) {
      throw DegenerateInterpolation(e.what());
    }
  }();

  FlagExtraction ext = flag_extract(point);
  return flag_construct(ext.q, point.sig, mid);
}

IsospectralParams params_traceless(const FlagSignature& sig) {
  std::vector<int> mult = sig.multiplicities();
  double weighted = 0;
  for (size_t j = 0; j < mult.size(); ++j)
    weighted += static_cast<double>(mult[j]) * static_cast<double>(j + 1);
  double mean = weighted / sig.n();
  std::vector<double> a(mult.size());
  for (size_t j = 0; j < mult.size(); ++j)
    a[j] = static_cast<double>(j + 1) - mean;
  return IsospectralParams(std::move(a));
}

double cond_number(const IsospectralParams& params) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (int j = 0; j < params.size(); ++j) {
    double v = std::abs(params[j]);
    if (v == 0.0) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi / lo;
}

namespace {

IsospectralParams optimize_cond_free(int m, double epsilon) {
  if (m == 2) return IsospectralParams({1.0, -1.0});
  const double delta = epsilon / (2.0 * m);
  if (delta <= tol::param_tol)
    throw InfeasibleEpsilon("epsilon too small for distinct parameters");
  std::vector<double> a;
  a.reserve(m);
  int pos = (m + 1) / 2;
  for (int i = 0; i < pos; ++i) a.push_back(1.0 + delta * i);
  for (int i = 0; i < m - pos; ++i) a.push_back(-(1.0 + delta * i));
  return IsospectralParams(std::move(a));
}

IsospectralParams optimize_cond_traceless(const FlagSignature& sig,
                                          double epsilon) {
  std::vector<int> mult = sig.multiplicities();
  const int m = static_cast<int>(mult.size());

  if (m == 2) {
    // traceless forces (a, b) proportional to (n2, -n1); the ratio is fixed
    double n1 = mult[0], n2 = mult[1];
    double cond = std::max(n1, n2) / std::min(n1, n2);
    if (cond > 1.0 + epsilon)
      throw InfeasibleEpsilon("traceless p=1 condition number is fixed at " +
                              std::to_string(cond));
    return IsospectralParams({std::sqrt(n2 / n1), -std::sqrt(n1 / n2)});
  }

  // choose signs balancing the two weight sums
  unsigned best_mask = 0;
  double best_rho = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    double wp = 0, wn = 0;
    for (int j = 0; j < m; ++j)
      (mask & (1u << j) ? wp : wn) += mult[j];
    double rho = std::max(wp, wn) / std::min(wp, wn);
    if (rho < best_rho) {
      best_rho = rho;
      best_mask = mask;
    }
  }

  double wp = 0, wn = 0;
  for (int j = 0; j < m; ++j)
    (best_mask & (1u << j) ? wp : wn) += mult[j];
  const double mu_p = std::sqrt(wn / wp);
  const double mu_n = std::sqrt(wp / wn);

  // weight-orthogonal tilt within each sign group keeps the sum at zero
  // while separating equal magnitudes
  std::vector<double> d(m, 0.0);
  for (int sign = 0; sign < 2; ++sign) {
    double wsum = 0, widx = 0;
    int g = 0;
    std::vector<int> members;
    for (int j = 0; j < m; ++j) {
      bool positive = (best_mask & (1u << j)) != 0;
      if (positive != (sign == 0)) continue;
      members.push_back(j);
      wsum += mult[j];
      widx += mult[j] * g;
      ++g;
    }
    double center = widx / wsum;
    for (size_t i = 0; i < members.size(); ++i)
      d[members[i]] = static_cast<double>(i) - center;
  }
  double dmax = 0;
  for (double v : d) dmax = std::max(dmax, std::abs(v));
  double gamma = std::min(1e-3, epsilon / (16.0 * (1.0 + dmax)));
  if (gamma <= tol::param_tol)
    throw InfeasibleEpsilon("epsilon too small for distinct parameters");

  std::vector<double> a(m);
  for (int j = 0; j < m; ++j) {
    bool positive = (best_mask & (1u << j)) != 0;
    double mu = positive ? mu_p : mu_n;
    a[j] = (positive ? 1.0 : -1.0) * (mu + gamma * d[j]);
  }
  return IsospectralParams(std::move(a));
}

}  // namespace

IsospectralParams params_optimize_cond(const FlagSignature& sig, double epsilon,
                                       bool traceless) {
  if (epsilon <= 0) throw InfeasibleEpsilon("epsilon must be positive");
  IsospectralParams out =
      traceless ? optimize_cond_traceless(sig, epsilon)
                : optimize_cond_free(sig.p() + 1, epsilon);
  if (cond_number(out) > 1.0 + epsilon)
    throw InfeasibleEpsilon("constructed spread misses the target bound");
  return out;
}

}  // namespace smm
