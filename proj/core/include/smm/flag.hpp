#pragma once

#include <cstdint>
#include <vector>

#include "smm/grassmann.hpp"
#include "smm/linalg.hpp"

namespace smm {

/// Dimension sequence 0 < k1 < ... < kp < n of a flag.
class FlagSignature {
public:
  FlagSignature(int n, std::vector<int> k);

  int n() const { return n_; }
  int p() const { return static_cast<int>(k_.size()); }
  const std::vector<int>& k() const { return k_; }

  /// Block multiplicities (n_1, ..., n_{p+1}), n_i = k_i - k_{i-1}.
  std::vector<int> multiplicities() const;

  bool operator==(const FlagSignature&) const = default;

private:
  int n_;
  std::vector<int> k_;
};

inline std::vector<int> signature_multiplicities(const FlagSignature& sig) {
  return sig.multiplicities();
}

/// Pairwise distinct model parameters (a_1, ..., a_{p+1}). Order is
/// semantic: a_j belongs to block j. Never sorted.
class IsospectralParams {
public:
  explicit IsospectralParams(std::vector<double> a);

  int size() const { return static_cast<int>(a_.size()); }
  double operator[](int i) const { return a_[i]; }
  const std::vector<double>& values() const { return a_; }

private:
  std::vector<double> a_;
};

struct IsospectralPoint {
  Matrix x;
  FlagSignature sig;
  IsospectralParams params;
};

struct FlagMembershipReport {
  bool pass = false;
  double symmetry_residual = 0;
  double polynomial_residual = 0;
  std::vector<double> trace_residuals;  // i = 1..p (single entry for generic)
  double scale = 1;
  double tol = 0;
};

/// Ordered orthonormal basis blocks whose concatenation is a rotation.
struct AbstractFlag {
  std::vector<Matrix> blocks;

  /// Concatenated n x n matrix.
  Matrix concatenated() const;
};

IsospectralPoint flag_construct(const Rotation& q, const FlagSignature& sig,
                                const IsospectralParams& params);

/// Full membership: product polynomial plus all p trace conditions.
FlagMembershipReport flag_membership_full(const Matrix& x,
                                          const FlagSignature& sig,
                                          const IsospectralParams& params,
                                          double tol);

/// Single-trace membership; refuses to run unless the parameters are
/// certified generic.
FlagMembershipReport flag_membership_generic(const Matrix& x,
                                             const FlagSignature& sig,
                                             const IsospectralParams& params,
                                             double tol);

/// Solve the (p+1)x(p+1) Vandermonde system with right side
/// (n, tr X, ..., tr X^p) for integer multiplicities.
std::vector<int> solve_multiplicities(const std::vector<double>& traces, int n,
                                      const IsospectralParams& params);

/// Björck-Pereyra-style O(p^2) solve of V(nodes) x = rhs where
/// V_{ij} = nodes_j^i.
std::vector<double> vandermonde_solve(const std::vector<double>& nodes,
                                      std::vector<double> rhs);

enum class Genericity { Generic, NotGeneric, Undecided };

struct GenericityResult {
  Genericity verdict = Genericity::Undecided;
  // collision witness: two distinct multiplicity vectors with equal a^T m
  std::vector<int> witness_m;
  std::vector<int> witness_m_prime;
};

/// Enumerates compositions of n into p+1 positive parts and looks for a
/// weighted-trace collision. Returns Undecided above the budget.
GenericityResult genericity_check(const IsospectralParams& params, int n, int p,
                                  std::uint64_t budget = 2'000'000);

struct FlagExtraction {
  AbstractFlag flag;
  Rotation q;
};

/// Eigenvector blocks ordered by the parameter order (not by magnitude);
/// concatenated representative has determinant +1.
FlagExtraction flag_extract(const IsospectralPoint& point);

/// Moves a point along the straight-line parameter homotopy
/// (1-t) a + t b while keeping its flag. Interior t requires the sign
/// pattern of pairwise differences to agree between a and b; t = 1 does not.
IsospectralPoint flag_homotopy_convert(const IsospectralPoint& point,
                                       const IsospectralParams& target,
                                       double t);

/// Parameters with sum_j n_j a_j = 0: a_j = j - (sum_i n_i i)/n.
IsospectralParams params_traceless(const FlagSignature& sig);

/// Parameters whose condition number is at most 1 + epsilon; with the
/// traceless constraint the achievable bound depends on the signature.
IsospectralParams params_optimize_cond(const FlagSignature& sig, double epsilon,
                                       bool traceless = false);

/// max|a_i| / min|a_i|, +infinity if any parameter is zero.
double cond_number(const IsospectralParams& params);

}  // namespace smm
