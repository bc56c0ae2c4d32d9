#pragma once

#include "polyasym/rational.hpp"

#include <optional>
#include <vector>

namespace polyasym {

using QMatrix = std::vector<QVector>;

/// Rank over the rationals (exact Gaussian elimination).
int rank(QMatrix a);

/// One solution of A x = b, or nullopt if the system is inconsistent.
std::optional<QVector> solve_linear(QMatrix a, QVector b);

/// Basis of the nullspace of A (columns = a[0].size()).
std::vector<QVector> nullspace(QMatrix a);

/// Rank of the set {p - points[0] : p in points}; -1 for an empty set.
/// This is the affine dimension of the affine hull of the points.
int affine_rank(const std::vector<QVector>& points);

}  // namespace polyasym
