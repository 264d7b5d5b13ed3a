#include "affnet/vec3.hpp"

#include <ostream>
#include <stdexcept>

namespace affnet {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 r;
  r.m[0][0] = c0.x; r.m[1][0] = c0.y; r.m[2][0] = c0.z;
  r.m[0][1] = c1.x; r.m[1][1] = c1.y; r.m[2][1] = c1.z;
  r.m[0][2] = c2.x; r.m[1][2] = c2.y; r.m[2][2] = c2.z;
  return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

double Mat3::det() const {
  return det3(col(0), col(1), col(2));
}

Mat3 Mat3::inverse() const {
  const Vec3 c0 = col(0), c1 = col(1), c2 = col(2);
  const double d = det3(c0, c1, c2);
  double scale = c0.norm() * c1.norm() * c2.norm();
  if (std::fabs(d) <= 1e-300 || std::fabs(d) < 1e-14 * (scale + 1e-300))
    throw std::runtime_error("Mat3::inverse: matrix is singular to working precision");
  // rows of the inverse are cross products of columns over the determinant
  const Vec3 r0 = cross(c1, c2) / d;
  const Vec3 r1 = cross(c2, c0) / d;
  const Vec3 r2 = cross(c0, c1) / d;
  Mat3 r;
  r.m[0][0] = r0.x; r.m[0][1] = r0.y; r.m[0][2] = r0.z;
  r.m[1][0] = r1.x; r.m[1][1] = r1.y; r.m[1][2] = r1.z;
  r.m[2][0] = r2.x; r.m[2][1] = r2.y; r.m[2][2] = r2.z;
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
  return r;
}

}  // namespace affnet
