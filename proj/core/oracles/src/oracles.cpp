#include "umbilic/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace umbilic::oracle {

namespace {

AlgebraVector apply_connection(const ConnectionTable& g, const AlgebraVector& x,
                               const AlgebraVector& y) {
  AlgebraVector r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[k] += x[i] * y[j] * g(i, j, k);
  return r;
}

AlgebraVector apply_bracket(const BracketTable& c, const AlgebraVector& x, const AlgebraVector& y) {
  AlgebraVector r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[k] += x[i] * y[j] * c(i, j, k);
  return r;
}

GroupPoint shifted(GroupPoint p, int axis, double d) {
  if (axis == 0) p.x += d;
  else if (axis == 1) p.y += d;
  else p.z += d;
  return p;
}

// Five-point first derivative along one coordinate axis.
template <class F>
auto five_point(F&& f, const GroupPoint& p, int axis, double h) {
  return (f(shifted(p, axis, -2 * h)) - 8.0 * f(shifted(p, axis, -h)) + 8.0 * f(shifted(p, axis, h)) -
          f(shifted(p, axis, 2 * h))) *
         (1.0 / (12.0 * h));
}

double coord(const GroupPoint& p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

}  // namespace

AlgebraVector curvature_bruteforce(const ConnectionTable& gamma, const BracketTable& brackets,
                                   const AlgebraVector& x, const AlgebraVector& y,
                                   const AlgebraVector& z) {
  const auto nyz = apply_connection(gamma, y, z);
  const auto nxz = apply_connection(gamma, x, z);
  return apply_connection(gamma, x, nyz) - apply_connection(gamma, y, nxz) -
         apply_connection(gamma, apply_bracket(brackets, x, y), z);
}

ConnectionTable koszul_connection(const BracketTable& c) {
  ConnectionTable g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) g(i, j, k) = 0.5 * (c(i, j, k) - c(j, k, i) + c(k, i, j));
  return g;
}

Matrix2 series_exp(const Matrix2& a, double z, int terms) {
  Matrix2 sum = Matrix2::identity();
  Matrix2 term = Matrix2::identity();
  const Matrix2 m = z * a;
  for (int k = 1; k <= terms; ++k) {
    term = (1.0 / k) * (term * m);
    sum = sum + term;
  }
  return sum;
}

ConnectionTable christoffel_frame(const Matrix2& a, const GroupPoint& p, double h) {
  // dg[c](i, j) = d_c g_ij
  Matrix3 dg[3];
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        dg[c](i, j) = five_point([&](const GroupPoint& q) { return metric_at(a, q)(i, j); }, p, c, h);
  const Matrix3 g = metric_at(a, p);
  const Matrix3 gi = inverse(g);
  // Gamma^b_{ac}
  double chr[3][3][3] = {};
  for (int b = 0; b < 3; ++b)
    for (int ai = 0; ai < 3; ++ai)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d)
          s += gi(b, d) * (dg[ai](d, c) + dg[c](d, ai) - dg[d](ai, c));
        chr[b][ai][c] = 0.5 * s;
      }

  const auto e = frame_at(a, p);
  std::array<CoordinateVector, 3> de[3];  // de[c][j] = d_c E_j
  for (int c = 0; c < 3; ++c)
    for (int j = 0; j < 3; ++j)
      de[c][j] = five_point([&](const GroupPoint& q) { return frame_at(a, q)[j]; }, p, c, h);

  ConnectionTable out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CoordinateVector v;
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (int ai = 0; ai < 3; ++ai) {
          s += e[i][ai] * de[ai][j][b];
          for (int c = 0; c < 3; ++c) s += e[i][ai] * chr[b][ai][c] * e[j][c];
        }
        v[b] = s;
      }
      const CoordinateVector gv = g.apply(v);
      for (int k = 0; k < 3; ++k) out(i, j, k) = dot(gv, e[k]);
    }
  return out;
}

Matrix3 jacobian(const PointMap& f, const GroupPoint& p, double h) {
  Matrix3 j;
  for (int c = 0; c < 3; ++c) {
    const double step = h * std::max(1.0, std::abs(coord(p, c)));
    const CoordinateVector d = five_point(
        [&](const GroupPoint& q) {
          const GroupPoint r = f(q);
          return CoordinateVector{r.x, r.y, r.z};
        },
        p, c, step);
    for (int i = 0; i < 3; ++i) j(i, c) = d[i];
  }
  return j;
}

double isometry_defect(const Matrix2& a, const PointMap& f, const GroupPoint& p, double h) {
  const Matrix3 j = jacobian(f, p, h);
  const Matrix3 pulled = j.transposed() * metric_at(a, f(p)) * j;
  return max_abs_difference(pulled, metric_at(a, p));
}

GroupPoint hyperbolic_sphere(double t0, double r, double u, double v) {
  return {r * std::sin(u) * std::cos(v), r * std::sin(u) * std::sin(v),
          std::log(t0 + r * std::cos(u))};
}

double hyperbolic_sphere_curvature(double t0, double r) {
  // Hyperbolic radius: half of log((t0 + r) / (t0 - r)).
  const double rho = 0.5 * std::log((t0 + r) / (t0 - r));
  return 1.0 / std::tanh(rho);
}

}  // namespace umbilic::oracle
