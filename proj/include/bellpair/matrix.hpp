#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace bellpair {

using cdouble = std::complex<double>;

// Dense fixed-size square matrix, row-major. Nothing in this project is
// larger than 4x4, so everything lives on the stack and loops are plain.
template <typename T, int N>
struct Mat {
  std::array<T, static_cast<std::size_t>(N) * N> e{};

  static constexpr int dim = N;

  static Mat zero() { return Mat{}; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = T{1};
    return m;
  }

  T& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * N + c]; }
  const T& operator()(int r, int c) const {
    return e[static_cast<std::size_t>(r) * N + c];
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat m;
    for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i] + b.e[i];
    return m;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat m;
    for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i] - b.e[i];
    return m;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat m;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const T aik = a(i, k);
        for (int j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend Mat operator*(const T& s, const Mat& a) {
    Mat m;
    for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = s * a.e[i];
    return m;
  }

  friend Mat operator*(const Mat& a, const T& s) { return s * a; }

  Mat transpose() const {
    Mat m;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  T trace() const {
    T t{};
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }
};

using Mat2c = Mat<cdouble, 2>;
using Mat4c = Mat<cdouble, 4>;
using Mat3d = Mat<double, 3>;
using Mat4d = Mat<double, 4>;

template <int N>
inline Mat<cdouble, N> conj(const Mat<cdouble, N>& a) {
  Mat<cdouble, N> m;
  for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = std::conj(a.e[i]);
  return m;
}

template <int N>
inline Mat<cdouble, N> adjoint(const Mat<cdouble, N>& a) {
  return conj(a).transpose();
}

// (A + A^dagger)/2; cheap way to remove accumulated rounding drift.
template <int N>
inline Mat<cdouble, N> hermitize(const Mat<cdouble, N>& a) {
  Mat<cdouble, N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return m;
}

template <typename T, int N>
inline double frobenius_norm(const Mat<T, N>& a) {
  double s = 0;
  for (const auto& v : a.e) s += std::norm(std::complex<double>(v));
  return std::sqrt(s);
}

template <typename T, int N>
inline double max_abs(const Mat<T, N>& a) {
  double s = 0;
  for (const auto& v : a.e) s = std::max(s, std::abs(std::complex<double>(v)));
  return s;
}

inline Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

template <int N>
inline Mat<cdouble, N> to_complex(const Mat<double, N>& a) {
  Mat<cdouble, N> m;
  for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i];
  return m;
}

// ---------------------------------------------------------------------------
// Small real 3-vectors (measurement directions).

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

inline Vec3 mul(const Mat3d& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline Vec3 mul_t(const Mat3d& m, const Vec3& v) {  // m^T v
  Vec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += m(j, i) * v[j];
  return r;
}

// ---------------------------------------------------------------------------
// Complex 4-vectors (two-qubit pure states).

using CVec4 = std::array<cdouble, 4>;

inline double norm(const CVec4& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

inline CVec4 normalized(const CVec4& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

// |v><v|
inline Mat4c projector(const CVec4& v) {
  Mat4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

inline CVec4 mul(const Mat4c& m, const CVec4& v) {
  CVec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
  return r;
}

}  // namespace bellpair
