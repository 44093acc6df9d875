#pragma once

#include "smm/flag.hpp"

namespace smm {

/// A flag represented inside a product of Grassmannians: mutually
/// orthogonal projectors that sum to the identity.
struct GrassmannProductPoint {
  std::vector<Matrix> projectors;

  /// Ranks read off as rounded traces.
  std::vector<int> ranks() const;
};

/// P_i = Q_i Q_i^T for the i-th basis block of the flag representative.
GrassmannProductPoint flag_to_product(const AbstractFlag& flag);

/// Inverse map: recover the nested subspaces from partial sums of the
/// projectors. Throws NotAProduct when the invariants fail at tolerance.
AbstractFlag product_to_flag(const GrassmannProductPoint& point, double tol);

}  // namespace smm
