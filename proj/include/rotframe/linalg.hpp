#pragma once

#include <array>
#include <cmath>

namespace rotframe {

// Convention used throughout: points are row vectors and transform by
// right-multiplication, X' = X * A.  Matrices are stored row-major.

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

struct Mat3 {
  // row-major: m[3*r + c]
  std::array<double, 9> m{};

  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  static Mat3 identity() {
    Mat3 a;
    a.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return a;
  }
  static Mat3 zero() { return Mat3{}; }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

inline Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
  return r;
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

// Row-vector application, X' = X * A.
inline Vec3 operator*(const Vec3& v, const Mat3& a) {
  Vec3 r;
  for (int j = 0; j < 3; ++j) r[j] = v.x * a(0, j) + v.y * a(1, j) + v.z * a(2, j);
  return r;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Largest absolute entry; the matrix norm used by all tolerance checks.
inline double max_abs(const Mat3& a) {
  double w = 0.0;
  for (double v : a.m) w = std::max(w, std::abs(v));
  return w;
}

struct Mat4 {
  std::array<double, 16> m{};

  double operator()(int r, int c) const { return m[4 * r + c]; }
  double& operator()(int r, int c) { return m[4 * r + c]; }
};

inline double det(const Mat4& a) {
  auto minor3 = [&](int r, int c) {
    std::array<double, 9> s{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == r) continue;
      for (int j = 0; j < 4; ++j) {
        if (j == c) continue;
        s[k++] = a(i, j);
      }
    }
    Mat3 t;
    t.m = s;
    return det(t);
  };
  double d = 0.0;
  double sign = 1.0;
  for (int c = 0; c < 4; ++c) {
    d += sign * a(0, c) * minor3(0, c);
    sign = -sign;
  }
  return d;
}

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  double w = 0.0;
  for (int i = 0; i < 16; ++i) w = std::max(w, std::abs(a.m[i] - b.m[i]));
  return w;
}

}  // namespace rotframe
