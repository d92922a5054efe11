#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include "fsol/errors.hpp"
#include "fsol/geometry.hpp"
#include "fsol/polynomial.hpp"

namespace fsol {

inline constexpr int kDegreeCap = 32;

// Multi-index alpha in N_0^n, n <= 3.
struct MIdx {
  std::array<int, kMaxDim> a{};

  MIdx() = default;
  MIdx(std::initializer_list<int> xs) {
    int i = 0;
    for (int x : xs) a[i++] = x;
  }

  int operator[](int i) const { return a[i]; }
  int& operator[](int i) { return a[i]; }
  int order() const { return a[0] + a[1] + a[2]; }

  bool operator==(const MIdx& o) const { return a == o.a; }
  bool operator<(const MIdx& o) const { return a < o.a; }
};

// Sparse polynomial in up to three variables with complex coefficients.
// Terms are kept sorted by multi-index and merged.
class MultiPoly {
 public:
  struct Term {
    MIdx alpha;
    cplx coeff;
  };

  MultiPoly() = default;

  static MultiPoly constant(cplx c) {
    MultiPoly p;
    if (c != 0.0) p.terms_.push_back({MIdx{}, c});
    return p;
  }
  static MultiPoly monomial(MIdx alpha, cplx c) {
    MultiPoly p;
    if (c != 0.0) p.terms_.push_back({alpha, c});
    return p;
  }
  // x_axis as a polynomial
  static MultiPoly variable(int axis) {
    MIdx m;
    m[axis] = 1;
    return monomial(m, 1.0);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, t.alpha.order());
    return d;
  }

  void add_term(MIdx alpha, cplx c) {
    if (c == 0.0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Term& t, const MIdx& m) { return t.alpha < m; });
    if (it != terms_.end() && it->alpha == alpha) {
      it->coeff += c;
      if (it->coeff == 0.0) terms_.erase(it);
    } else {
      terms_.insert(it, Term{alpha, c});
    }
  }

  MultiPoly operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const Term& t : o.terms_) r.add_term(t.alpha, t.coeff);
    return r;
  }

  MultiPoly operator*(cplx s) const {
    MultiPoly r = *this;
    if (s == 0.0) return MultiPoly();
    for (Term& t : r.terms_) t.coeff *= s;
    return r;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    MultiPoly r;
    for (const Term& s : terms_)
      for (const Term& t : o.terms_) {
        MIdx m;
        for (int i = 0; i < kMaxDim; ++i) m[i] = s.alpha[i] + t.alpha[i];
        if (m.order() > kDegreeCap)
          fail(ErrorCode::DegreeOverflow, "polynomial degree cap exceeded");
        r.add_term(m, s.coeff * t.coeff);
      }
    return r;
  }

  MultiPoly pow(int k) const {
    MultiPoly r = constant(1.0);
    for (int i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  cplx eval(const VecN& x) const {
    cplx acc = 0;
    for (const Term& t : terms_) {
      cplx m = t.coeff;
      for (int i = 0; i < kMaxDim; ++i)
        for (int p = 0; p < t.alpha[i]; ++p) m *= x.v[i];
      acc += m;
    }
    return acc;
  }

  // Partial derivative along one axis.
  MultiPoly derivative(int axis) const {
    MultiPoly r;
    for (const Term& t : terms_) {
      if (t.alpha[axis] == 0) continue;
      MIdx m = t.alpha;
      m[axis] -= 1;
      r.add_term(m, t.coeff * double(t.alpha[axis]));
    }
    return r;
  }

  // p(x) -> p(x + delta), expanded in the shifted variable.
  MultiPoly shift(const VecN& delta) const {
    MultiPoly r;
    for (const Term& t : terms_) {
      // expand prod_i (x_i + delta_i)^{alpha_i} by binomials
      MultiPoly f = constant(t.coeff);
      for (int i = 0; i < kMaxDim; ++i) {
        if (t.alpha[i] == 0) continue;
        MultiPoly base = variable(i) + constant(delta.v[i]);
        f = f * base.pow(t.alpha[i]);
      }
      r = r + f;
    }
    return r;
  }

  // Restriction to the line x(t) = origin + t * direction: a polynomial in t.
  RadialPolynomial restrict_to_line(const VecN& origin, const VecN& direction) const {
    RadialPolynomial acc;
    for (const Term& t : terms_) {
      RadialPolynomial f = RadialPolynomial::constant(t.coeff);
      for (int i = 0; i < kMaxDim; ++i) {
        if (t.alpha[i] == 0) continue;
        RadialPolynomial lin({cplx(origin.v[i]), cplx(direction.v[i])});
        for (int p = 0; p < t.alpha[i]; ++p) f = f * lin;
      }
      acc = acc + f;
    }
    return acc;
  }

 private:
  std::vector<Term> terms_;
};

}  // namespace fsol
