#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fsol/geometry.hpp"

namespace fsol {

// Polynomial in the radial variable r with complex coefficients,
// stored in ascending order: a_0 + a_1 r + ... + a_d r^d.
struct RadialPolynomial {
  std::vector<cplx> coeffs;

  RadialPolynomial() = default;
  explicit RadialPolynomial(std::vector<cplx> c) : coeffs(std::move(c)) { trim(); }
  static RadialPolynomial constant(cplx c) { return RadialPolynomial({c}); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }

  void trim() {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  }

  double sup_coeff() const {
    double m = 0;
    for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }

  cplx eval(cplx r) const {
    cplx acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * r + coeffs[i];
    return acc;
  }

  RadialPolynomial derivative() const {
    if (coeffs.size() <= 1) return {};
    std::vector<cplx> d(coeffs.size() - 1);
    for (size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
    return RadialPolynomial(std::move(d));
  }

  RadialPolynomial derivative(int k) const {
    RadialPolynomial p = *this;
    for (int i = 0; i < k; ++i) p = p.derivative();
    return p;
  }

  RadialPolynomial operator*(const RadialPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<cplx> c(coeffs.size() + o.coeffs.size() - 1, cplx(0));
    for (size_t i = 0; i < coeffs.size(); ++i)
      for (size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
    return RadialPolynomial(std::move(c));
  }

  RadialPolynomial operator+(const RadialPolynomial& o) const {
    std::vector<cplx> c(std::max(coeffs.size(), o.coeffs.size()), cplx(0));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
    return RadialPolynomial(std::move(c));
  }

  RadialPolynomial operator*(cplx s) const {
    std::vector<cplx> c = coeffs;
    for (cplx& x : c) x *= s;
    return RadialPolynomial(std::move(c));
  }

  // Divides by (r - root) in place, returns the quotient; the remainder
  // (the value at the root) is dropped.
  RadialPolynomial deflate(cplx root) const {
    const int d = degree();
    if (d < 1) return {};
    std::vector<cplx> q(d);
    cplx carry = coeffs[d];
    for (int k = d - 1; k >= 0; --k) {
      q[k] = carry;
      carry = coeffs[k] + root * carry;
    }
    return RadialPolynomial(std::move(q));
  }
};

}  // namespace fsol
