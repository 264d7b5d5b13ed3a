#pragma once

#include <cmath>
#include <iosfwd>

namespace affnet {

// Affine coordinates in R^3. Cross/dot/det are the only metric-ish
// operations the constructions use; all results are equi-affine covariant.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// [a, b, c] = (a x b) . c
constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(cross(a, b), c);
}

std::ostream& operator<<(std::ostream& os, const Vec3& v);

// 3x3 matrix with column vectors; enough linear algebra for frame solves.
struct Mat3 {
  // m[r][c]
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  static Mat3 identity() { return {}; }
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  Vec3 col(int c) const { return {m[0][c], m[1][c], m[2][c]}; }
  Vec3 operator*(const Vec3& v) const;
  Mat3 operator*(const Mat3& o) const;
  double det() const;
  Mat3 inverse() const;  // throws on near-singular input
  Mat3 transposed() const;
};

}  // namespace affnet
