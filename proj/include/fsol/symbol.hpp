#pragma once

#include <complex>
#include <vector>

#include "fsol/geometry.hpp"
#include "fsol/multipoly.hpp"
#include "fsol/polynomial.hpp"

namespace fsol {

// Ellipsoidal frame (Q, W, b, c): Q orthogonal, W positive diagonal weights,
// b a real shift, c a complex constant. The quadratic base of the symbol is
//   (Q xi)^T W (Q xi) + b . xi + c.
struct EllipsoidalFrame {
  MatN q;
  VecN w;       // diagonal of W, all > 0
  VecN b;
  cplx c = 0.0;
  double det_q = 1.0;  // recorded by validate_frame

  int dim() const { return q.n; }
};

// Checks orthogonality of Q (max norm of Q^T Q - I <= 1e-12) and positivity
// of the weights; records |det Q|.
EllipsoidalFrame validate_frame(EllipsoidalFrame frame);

// The multiplier p(xi) = sum_j coeffs[j] * [(Q xi)^T W (Q xi) + b.xi + c]^j
// with coeffs[d] normalized to 1. A nontrivial leading coefficient supplied
// at construction is divided out and recorded in `scale`, so the represented
// symbol is always monic in the quadratic base.
class SymbolSpec {
 public:
  SymbolSpec(int dim, std::vector<cplx> coeffs, EllipsoidalFrame frame);

  int dim() const { return n_; }
  int power_degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // d
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  const EllipsoidalFrame& frame() const { return frame_; }
  // Leading coefficient divided out at construction; pairings for the
  // original symbol are pairings of this spec divided by scale().
  cplx scale() const { return scale_; }

  // x0 = -1/2 Q^T W^-1 Q b, the common center of the radial chart.
  const VecN& center() const { return x0_; }

  // p(xi), Horner in the quadratic base.
  cplx eval(const VecN& xi) const;

  // The chart Phi(r, omega) = r Q^T W^{-1/2} omega + x0 mapping the radial
  // coordinates onto R^n. Requires |omega| = 1 up to 1e-12 and r >= 0.
  VecN chart(double r, const VecN& omega) const;

  // Q^T W^{-1/2} omega without the center shift.
  VecN chart_direction(const VecN& omega) const;

  // Coefficients of pi(r) = (p o Phi)(r, .) = sum_j c_j (r^2 + kappa)^j,
  // kappa = c - 1/4 b . Q^T W^-1 Q b.
  RadialPolynomial radial_profile() const;
  cplx kappa() const { return kappa_; }

  // |det W^{-1/2}| r^{n-1}, the density of the chart volume form relative
  // to dr x sigma_{n-1}.
  double jacobian_density(double r) const;

  // p expanded into monomials in xi (for Op(p) on the test-function algebra).
  MultiPoly monomials() const;

 private:
  int n_;
  std::vector<cplx> coeffs_;
  EllipsoidalFrame frame_;
  cplx scale_;
  VecN x0_;
  cplx kappa_;
  double root_det_w_inv_;  // |det W^{-1/2}|
};

// Convenience constructors for the common isotropic families.
// p(xi) = sum_j coeffs[j] |xi|^{2j} on R^n.
SymbolSpec make_power_symbol(int dim, std::vector<cplx> coeffs);

}  // namespace fsol
