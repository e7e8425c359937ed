#include "umbilic/semidirect.hpp"

#include <cmath>

namespace umbilic {

namespace {

constexpr int kSquarings = 20;
constexpr int kSeriesTerms = 10;

}  // namespace

Matrix2 nonunimodular_matrix(const NonUnimodularParams& p) {
  const double a = p.a();
  const double b = p.b();
  return {1.0 + a, -(1.0 - a) * b, (1.0 + a) * b, 1.0 - a};
}

Matrix2 matrix_exp(const Matrix2& a, double z) {
  const Matrix2 m = std::ldexp(z, -kSquarings) * a;
  // B = sum_{k>=1} M^k / k!
  Matrix2 b{};
  Matrix2 term = Matrix2::identity();
  for (int k = 1; k <= kSeriesTerms; ++k) {
    term = (1.0 / k) * (term * m);
    b = b + term;
  }
  for (int i = 0; i < kSquarings; ++i) b = 2.0 * b + b * b;
  return Matrix2::identity() + b;
}

GroupPoint multiply(const Matrix2& a, const GroupPoint& p, const GroupPoint& q) {
  const auto r = matrix_exp(a, p.z).apply(q.x, q.y);
  return {p.x + r[0], p.y + r[1], p.z + q.z};
}

GroupPoint inverse(const Matrix2& a, const GroupPoint& p) {
  const auto r = matrix_exp(a, -p.z).apply(p.x, p.y);
  return {-r[0], -r[1], -p.z};
}

std::array<CoordinateVector, 3> frame_at(const Matrix2& a, const GroupPoint& p) {
  const Matrix2 g = matrix_exp(a, p.z);
  return {CoordinateVector{g.m11, g.m21, 0.0}, CoordinateVector{g.m12, g.m22, 0.0},
          CoordinateVector{0.0, 0.0, 1.0}};
}

Matrix3 metric_at(const Matrix2& a, const GroupPoint& p) {
  const Matrix2 gi = matrix_exp(a, -p.z);  // (e^{zA})^{-1}
  const Matrix2 block = gi.transposed() * gi;
  Matrix3 g;
  g(0, 0) = block.m11;
  g(0, 1) = block.m12;
  g(1, 0) = block.m21;
  g(1, 1) = block.m22;
  g(2, 2) = 1.0;
  return g;
}

AlgebraVector to_frame(const Matrix2& a, double z, const CoordinateVector& v) {
  const auto r = matrix_exp(a, -z).apply(v[0], v[1]);
  return {r[0], r[1], v[2]};
}

CoordinateVector to_coordinates(const Matrix2& a, double z, const AlgebraVector& v) {
  const auto r = matrix_exp(a, z).apply(v[0], v[1]);
  return {r[0], r[1], v[2]};
}

PointMap left_translate_map(const Matrix2& a, const GroupPoint& g) {
  return [a, g](const GroupPoint& q) { return multiply(a, g, q); };
}

BracketTable semidirect_brackets(const Matrix2& a) {
  BracketTable t;
  const double col1[2] = {a.m11, a.m21};
  const double col2[2] = {a.m12, a.m22};
  for (int k = 0; k < 2; ++k) {
    t(2, 0, k) = col1[k];
    t(0, 2, k) = -col1[k];
    t(2, 1, k) = col2[k];
    t(1, 2, k) = -col2[k];
  }
  return t;
}

ConnectionTable connection_semidirect(const Matrix2& a) {
  const double s[2][2] = {{a.m11, 0.5 * (a.m12 + a.m21)}, {0.5 * (a.m12 + a.m21), a.m22}};
  const double k21 = 0.5 * (a.m21 - a.m12);  // K_21 = -K_12
  ConnectionTable t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      t(i, j, 2) = s[i][j];
      t(i, 2, j) = -s[i][j];
    }
  t(2, 0, 1) = k21;
  t(2, 1, 0) = -k21;
  return t;
}

}  // namespace umbilic
