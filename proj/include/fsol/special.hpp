#pragma once

#include <complex>

#include "fsol/geometry.hpp"

namespace fsol {

// Half-integer or integer Bessel order nu = n/2 - 1 >= -1/2, stored as 2*nu.
struct BesselOrder {
  int two_nu;

  explicit BesselOrder(int two_nu_) : two_nu(two_nu_) {
    if (two_nu < -1 || two_nu > 13)
      fail(ErrorCode::UnsupportedDimension, "bessel order out of supported range");
  }
  static BesselOrder for_dimension(int n) { return BesselOrder(n - 2); }
  double nu() const { return 0.5 * two_nu; }
  bool half_integer() const { return (two_nu & 1) != 0; }
};

// J_nu(x) / x^nu, continuous at 0 with value 1 / (2^nu Gamma(nu+1)).
double normalized_bessel(BesselOrder order, double x);

// int_{S^{n-1}} e^{i y . M omega} sigma_{n-1}(omega)
//   = (2 pi)^{n/2} J_{n/2-1}(|M^T y|) / |M^T y|^{n/2-1},
// real-valued by symmetry. M must be invertible.
cplx sphere_exp_integral(const MatN& m, const VecN& y);

}  // namespace fsol
