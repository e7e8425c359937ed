#pragma once

#include "umbilic/lie_algebra.hpp"
#include "umbilic/linalg.hpp"
#include "umbilic/semidirect.hpp"

// Reference computations used only for verification. Nothing here shares
// intermediate results with the production evaluators it is compared to.
namespace umbilic::oracle {

/// nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z from a connection
/// table and a bracket table, for constant frame components.
AlgebraVector curvature_bruteforce(const ConnectionTable& gamma, const BracketTable& brackets,
                                   const AlgebraVector& x, const AlgebraVector& y,
                                   const AlgebraVector& z);

/// 2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y> on an orthonormal frame.
ConnectionTable koszul_connection(const BracketTable& brackets);

/// sum_{k=0}^{terms} (zA)^k / k!
Matrix2 series_exp(const Matrix2& a, double z, int terms = 40);

/// Frame connection coefficients rebuilt from the coordinate metric: Christoffel
/// symbols from five-point differences of metric_at, frame derivatives from
/// five-point differences of frame_at.
ConnectionTable christoffel_frame(const Matrix2& a, const GroupPoint& p, double h = 1e-3);

/// Five-point Jacobian of a point map at p, columns d/dx, d/dy, d/dz.
Matrix3 jacobian(const PointMap& f, const GroupPoint& p, double h = 1e-3);

/// max |g(p)(v_i, v_j) - g(f(p))(J v_i, J v_j)| over coordinate basis vectors.
double isometry_defect(const Matrix2& a, const PointMap& f, const GroupPoint& p, double h = 1e-3);

/// Geodesic sphere in the model A = I (hyperbolic space, t = e^z is the
/// half-space height): Euclidean sphere of radius r centred at height t0 > r.
GroupPoint hyperbolic_sphere(double t0, double r, double u, double v);
/// Its umbilicity constant coth(hyperbolic radius) in absolute value.
double hyperbolic_sphere_curvature(double t0, double r);

}  // namespace umbilic::oracle
