#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

#include "fsol/errors.hpp"

namespace fsol {

using cplx = std::complex<double>;
using namespace std::complex_literals;

inline constexpr int kMaxDim = 3;
inline constexpr double kPi = 3.14159265358979323846;

// Fixed-capacity vector in R^n, n <= 3. Unused slots stay zero so dot
// products can run over the full array.
struct VecN {
  int n = 0;
  std::array<double, kMaxDim> v{};

  VecN() = default;
  explicit VecN(int dim) : n(dim) {
    if (dim < 1 || dim > kMaxDim) fail(ErrorCode::UnsupportedDimension, "dimension must be 1..3");
  }
  VecN(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
    if (n < 1 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "dimension must be 1..3");
    int i = 0;
    for (double x : xs) v[i++] = x;
  }

  double operator[](int i) const { return v[i]; }
  double& operator[](int i) { return v[i]; }

  double dot(const VecN& o) const {
    return v[0] * o.v[0] + v[1] * o.v[1] + v[2] * o.v[2];
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  VecN operator+(const VecN& o) const {
    VecN r(n);
    for (int i = 0; i < kMaxDim; ++i) r.v[i] = v[i] + o.v[i];
    return r;
  }
  VecN operator-(const VecN& o) const {
    VecN r(n);
    for (int i = 0; i < kMaxDim; ++i) r.v[i] = v[i] - o.v[i];
    return r;
  }
  VecN operator*(double s) const {
    VecN r(n);
    for (int i = 0; i < kMaxDim; ++i) r.v[i] = s * v[i];
    return r;
  }
  VecN operator-() const { return (*this) * -1.0; }

  static VecN zero(int dim) { return VecN(dim); }
  static VecN unit(int dim, int axis) {
    VecN r(dim);
    r.v[axis] = 1.0;
    return r;
  }
};

inline VecN operator*(double s, const VecN& x) { return x * s; }

// Row-major n x n matrix, n <= 3.
struct MatN {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  MatN() = default;
  explicit MatN(int dim) : n(dim) {
    if (dim < 1 || dim > kMaxDim) fail(ErrorCode::UnsupportedDimension, "dimension must be 1..3");
  }

  double operator()(int i, int j) const { return a[i * kMaxDim + j]; }
  double& operator()(int i, int j) { return a[i * kMaxDim + j]; }

  VecN mul(const VecN& x) const {
    VecN r(n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += (*this)(i, j) * x[j];
      r[i] = s;
    }
    return r;
  }
  // transpose(M) * x
  VecN tmul(const VecN& x) const {
    VecN r(n);
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += (*this)(i, j) * x[i];
      r[j] = s;
    }
    return r;
  }

  double det() const {
    if (n == 1) return (*this)(0, 0);
    if (n == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    return (*this)(0, 0) * ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) -
           (*this)(0, 1) * ((*this)(1, 0) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 0)) +
           (*this)(0, 2) * ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0));
  }

  static MatN identity(int dim) {
    MatN m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
  // 2x2 counterclockwise rotation
  static MatN rotation2(double angle) {
    MatN m(2);
    m(0, 0) = std::cos(angle);
    m(0, 1) = -std::sin(angle);
    m(1, 0) = std::sin(angle);
    m(1, 1) = std::cos(angle);
    return m;
  }
};

}  // namespace fsol
