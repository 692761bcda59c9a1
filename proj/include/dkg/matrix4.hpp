#pragma once

#include <array>
#include <cstddef>

#include "dkg/types.hpp"

namespace dkg {

/** Dense 2x2 complex matrix, row major. */
struct Matrix2 {
  std::array<cdouble, 4> e{};

  cdouble& operator()(int r, int c) { return e[2 * r + c]; }
  const cdouble& operator()(int r, int c) const { return e[2 * r + c]; }
};

/** Dense 4x4 complex matrix, row major. Small enough to pass by value. */
struct Matrix4 {
  std::array<cdouble, 16> e{};

  cdouble& operator()(int r, int c) { return e[4 * r + c]; }
  const cdouble& operator()(int r, int c) const { return e[4 * r + c]; }

  static Matrix4 zero() { return {}; }
  static Matrix4 identity() {
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  Matrix4 operator+(const Matrix4& o) const {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  Matrix4 operator-(const Matrix4& o) const {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  Matrix4 operator-() const {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = -e[i];
    return r;
  }
  Matrix4 operator*(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const cdouble a = (*this)(i, k);
        if (a == 0.0) continue;
        for (int j = 0; j < 4; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  friend Matrix4 operator*(cdouble c, const Matrix4& m) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = c * m.e[i];
    return r;
  }

  std::array<cdouble, 4> operator*(const std::array<cdouble, 4>& v) const {
    std::array<cdouble, 4> r{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix4 adjoint() const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  cdouble trace() const { return e[0] + e[5] + e[10] + e[15]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : e) m = std::max(m, std::abs(v));
    return m;
  }
};

/** Largest entry of a - b in absolute value. */
inline double max_abs_diff(const Matrix4& a, const Matrix4& b) { return (a - b).max_abs(); }

/** Block matrix [[a, b], [c, d]] from 2x2 blocks. */
inline Matrix4 from_blocks(const Matrix2& a, const Matrix2& b, const Matrix2& c,
                           const Matrix2& d) {
  Matrix4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m(i, j) = a(i, j);
      m(i, j + 2) = b(i, j);
      m(i + 2, j) = c(i, j);
      m(i + 2, j + 2) = d(i, j);
    }
  return m;
}

}  // namespace dkg
