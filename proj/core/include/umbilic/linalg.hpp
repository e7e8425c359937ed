#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace umbilic {

/// Three real components tagged with the basis they are expressed in, so
/// frame and coordinate vectors cannot be mixed by accident.
template <class Basis>
struct Vector3 {
  std::array<double, 3> c{};

  constexpr Vector3() = default;
  constexpr Vector3(double a, double b, double d) : c{a, b, d} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vector3& operator+=(const Vector3& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vector3& operator-=(const Vector3& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vector3& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Vector3 operator+(Vector3 a, const Vector3& b) { return a += b; }
  friend constexpr Vector3 operator-(Vector3 a, const Vector3& b) { return a -= b; }
  friend constexpr Vector3 operator-(Vector3 a) { return a *= -1.0; }
  friend constexpr Vector3 operator*(double s, Vector3 a) { return a *= s; }
  friend constexpr Vector3 operator*(Vector3 a, double s) { return a *= s; }
  friend constexpr Vector3 operator/(Vector3 a, double s) { return a *= (1.0 / s); }
  friend constexpr bool operator==(const Vector3&, const Vector3&) = default;
};

template <class B>
constexpr double dot(const Vector3<B>& a, const Vector3<B>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class B>
constexpr Vector3<B> cross(const Vector3<B>& a, const Vector3<B>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class B>
double norm(const Vector3<B>& a) {
  return std::sqrt(dot(a, a));
}

template <class B>
double max_abs(const Vector3<B>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

struct FrameBasis {};
struct CoordinateBasis {};

/// Components in the left-invariant orthonormal frame {E1, E2, E3}.
using AlgebraVector = Vector3<FrameBasis>;
/// Components in the coordinate basis {d/dx, d/dy, d/dz} of a chart.
using CoordinateVector = Vector3<CoordinateBasis>;

/// Dense 3x3 real matrix, row-major.
struct Matrix3 {
  std::array<std::array<double, 3>, 3> m{};

  static constexpr Matrix3 identity() {
    Matrix3 r;
    for (std::size_t i = 0; i < 3; ++i) r.m[i][i] = 1.0;
    return r;
  }

  constexpr double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

  template <class B>
  constexpr Vector3<B> apply(const Vector3<B>& v) const {
    Vector3<B> r;
    for (std::size_t i = 0; i < 3; ++i)
      r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
  }

  constexpr Matrix3 transposed() const {
    Matrix3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  friend constexpr Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    Matrix3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
    return r;
  }
};

double determinant(const Matrix3& a);
/// Throws std::domain_error for singular input.
Matrix3 inverse(const Matrix3& a);
double max_abs_difference(const Matrix3& a, const Matrix3& b);

/// 2x2 real matrix [[m11, m12], [m21, m22]].
struct Matrix2 {
  double m11 = 0.0, m12 = 0.0, m21 = 0.0, m22 = 0.0;

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

  constexpr double trace() const { return m11 + m22; }
  constexpr double det() const { return m11 * m22 - m12 * m21; }
  constexpr Matrix2 transposed() const { return {m11, m21, m12, m22}; }
  double frobenius() const { return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22); }
  double max_abs() const {
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
  }

  friend constexpr Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
  }
  friend constexpr Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
  }
  friend constexpr Matrix2 operator*(double s, const Matrix2& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
  }
  friend constexpr Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  constexpr std::array<double, 2> apply(double x, double y) const {
    return {m11 * x + m12 * y, m21 * x + m22 * y};
  }
  friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Throws std::domain_error for singular input.
Matrix2 inverse(const Matrix2& a);

}  // namespace umbilic
