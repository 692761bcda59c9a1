#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace dkg {

using cdouble = std::complex<double>;

inline constexpr cdouble iu{0.0, 1.0};

/** Half-wave / projection sign index. */
enum class Sign : int { plus = 0, minus = 1 };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline const char* sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline bool is_zero(const Vec3& v) { return v.x == 0.0 && v.y == 0.0 && v.z == 0.0; }

/** Angle between two nonzero vectors, in [0, pi]; stable near 0 and pi. */
inline double angle(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace dkg
