#pragma once

#include <complex>
#include <vector>

#include "fsol/polynomial.hpp"

namespace fsol {

// One nonnegative real radial root with multiplicity and its partial
// fraction coefficients C[k-1] for (r - root)^{-k}, k = 1..multiplicity.
struct RadialRoot {
  double r = 0;
  int multiplicity = 1;
  std::vector<cplx> pf;  // C_{j,k}, index k-1
};

// Factorization pi = q0 * q with q0 carrying every nonnegative real root
// and q nonvanishing on [0, infinity).
struct RadialFactorization {
  RadialPolynomial profile;   // pi
  std::vector<RadialRoot> roots;  // ascending in r
  RadialPolynomial q0;        // monic product of (r - r_j)^{m_j}
  RadialPolynomial deflated;  // q = pi / q0
  int max_multiplicity = 0;
  double q_lower_margin = 0;  // certified min |q| on [0, inf)
  bool origin_order_warning = false;  // m_j >= n at the origin root

  bool regular() const { return roots.empty(); }
};

// All complex roots of pi with clustered multiplicities (cluster tolerance
// 1e-7 relative) and Newton polish on the matching derivative.
struct ClusteredRoot {
  cplx value;
  int multiplicity;
};
std::vector<ClusteredRoot> find_roots(const RadialPolynomial& pi);

// Splits roots into q0 (|Im| <= tol, Re >= -tol, snapped and clamped to
// [0, inf)) and q; computes partial fractions; certifies that q is
// lower-bounded. `dim` feeds the origin-multiplicity warning (m >= n).
RadialFactorization factor_radial(const RadialPolynomial& pi, double tol = 1e-7, int dim = 3);

// Recomputes the C_{j,k} table of an existing factorization (exposed for
// tests; factor_radial already fills it).
void partial_fractions(RadialFactorization& fact);

// Max relative reconstruction error of 1/q0 by the partial fraction sum over
// 128 sample points at distance >= 0.1 from every root.
double verify_partial_fractions(const RadialFactorization& fact);

}  // namespace fsol
