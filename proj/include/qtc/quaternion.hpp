#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace qtc {

// One quaternion scalar w + x*i + y*j + z*k over doubles. Plain aggregate so
// that arrays of these map directly onto four real component planes.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion p, Quaternion q) {
  return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
}

constexpr Quaternion operator-(Quaternion p, Quaternion q) {
  return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
}

constexpr Quaternion operator-(Quaternion q) { return {-q.w, -q.x, -q.y, -q.z}; }

// Hamilton product. Multiplication is associative and distributive but not
// commutative: ij = k while ji = -k.
constexpr Quaternion operator*(Quaternion p, Quaternion q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(double s, Quaternion q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
constexpr Quaternion operator*(Quaternion q, double s) { return s * q; }

constexpr Quaternion conj(Quaternion q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double modulus_sq(Quaternion q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

inline double modulus(Quaternion q) { return std::sqrt(modulus_sq(q)); }

// A quaternion is pure when its real part vanishes exactly.
constexpr bool is_pure(Quaternion q) { return q.w == 0.0; }

// Cayley-Dickson form q = z1 + z2 * j with complex z1 = w + x*i, z2 = y + z*i.
struct CdForm {
  std::complex<double> z1;
  std::complex<double> z2;
};

inline CdForm cd_decompose(Quaternion q) { return {{q.w, q.x}, {q.y, q.z}}; }

inline Quaternion cd_compose(const CdForm& c) {
  return {c.z1.real(), c.z1.imag(), c.z2.real(), c.z2.imag()};
}

inline std::ostream& operator<<(std::ostream& os, Quaternion q) {
  return os << '(' << q.w << ", " << q.x << "i, " << q.y << "j, " << q.z << "k)";
}

}  // namespace qtc
