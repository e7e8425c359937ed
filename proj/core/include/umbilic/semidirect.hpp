#pragma once

#include <array>
#include <functional>

#include "umbilic/lie_algebra.hpp"
#include "umbilic/linalg.hpp"

namespace umbilic {

/// A point (x, y, z) of the semidirect product R^2 x_A R in its global chart.
struct GroupPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend constexpr bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

using PointMap = std::function<GroupPoint(const GroupPoint&)>;

/// A(a, b) = [[1+a, -(1-a)b], [(1+a)b, 1-a]].
Matrix2 nonunimodular_matrix(const NonUnimodularParams& p);

/// e^{zA} by scaling and squaring: the series of M = zA / 2^20 gives
/// B = e^M - I, then B <- 2B + B^2 twenty times, and I + B is returned.
/// Carrying e^M - I instead of e^M keeps rounding from growing with each squaring.
Matrix2 matrix_exp(const Matrix2& a, double z);

GroupPoint multiply(const Matrix2& a, const GroupPoint& p, const GroupPoint& q);
GroupPoint inverse(const Matrix2& a, const GroupPoint& p);

/// Orthonormal left-invariant frame at p: E1, E2 are the columns of e^{zA}
/// acting on (d/dx, d/dy); E3 = d/dz.
std::array<CoordinateVector, 3> frame_at(const Matrix2& a, const GroupPoint& p);

/// Metric coefficients g(d_i, d_j) at p: (e^{zA} e^{zA}^T)^{-1} on the (x, y)
/// block, 1 on dz^2.
Matrix3 metric_at(const Matrix2& a, const GroupPoint& p);

/// Coordinate components to frame components at height z, and back.
AlgebraVector to_frame(const Matrix2& a, double z, const CoordinateVector& v);
CoordinateVector to_coordinates(const Matrix2& a, double z, const AlgebraVector& v);

/// q -> g * q.
PointMap left_translate_map(const Matrix2& a, const GroupPoint& g);

/// [E1,E2] = 0, [E3,E1] = A11 E1 + A21 E2, [E3,E2] = A12 E1 + A22 E2.
BracketTable semidirect_brackets(const Matrix2& a);

/// Levi-Civita connection of the frame for an arbitrary A, with S and K the
/// symmetric and skew parts of A:
///   nabla_{Ei}Ej = S_ij E3,  nabla_{Ei}E3 = -sum_k S_ik Ek  (i, j in {1, 2}),
///   <nabla_{E3}Ej, Ek> = K_kj,  nabla_{E3}E3 = 0.
ConnectionTable connection_semidirect(const Matrix2& a);

}  // namespace umbilic
