#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fsol/geometry.hpp"

namespace fsol {

// -------------------------------------------------------------------------
// Gauss rules

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1].
const Rule1D& gauss_legendre(int n);
// Gauss-Hermite with weight e^{-t^2} on (-inf, inf).
const Rule1D& gauss_hermite(int n);

// Adaptive Gauss quadrature of a smooth (possibly complex) integrand.
cplx adaptive_integrate(const std::function<cplx(double)>& f, double lo, double hi,
                        double tol, int max_depth = 48);

// -------------------------------------------------------------------------
// Sphere rules

// Quadrature nodes and weights for S^{n-1}, n = 1, 2, 3. Weights sum to the
// sphere measure. n = 2 is the uniform circle rule with 'order' points;
// n = 3 is Gauss-Legendre in the polar cosine ('order' points) times a
// uniform azimuthal rule (2*order points).
struct SphereRule {
  int dim = 0;
  int order = 0;
  std::vector<VecN> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(const VecN&)>& f) const {
    double s = 0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
  cplx integrate_c(const std::function<cplx(const VecN&)>& f) const {
    cplx s = 0;
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

SphereRule sphere_rule(int n, int order);

// Surface measure of S^{n-1}.
double sphere_measure(int n);

// -------------------------------------------------------------------------
// Radial panels

// Panel decomposition of [0, tail] with Chebyshev-Lobatto nodes per panel.
// Mandatory breakpoints (roots, kinks) are always panel endpoints and the
// panel adjacent to a root is at most `panel_width` wide.
struct RadialGrid {
  std::vector<double> breaks;  // ascending, breaks.front() == 0
  int nodes_per_panel = 24;

  int panel_count() const { return static_cast<int>(breaks.size()) - 1; }
  double tail() const { return breaks.back(); }
  // Chebyshev-Lobatto nodes of panel i, ascending in r.
  std::vector<double> panel_nodes(int i) const;
};

RadialGrid make_radial_grid(double tail, std::span<const double> mandatory,
                            double panel_width, int nodes_per_panel);

// Piecewise Chebyshev representation of a smooth function sampled on a
// RadialGrid; all downstream integration and differentiation acts on the
// interpolant.
class PanelFn {
 public:
  PanelFn(const RadialGrid& grid, std::vector<std::vector<cplx>> node_values);

  const RadialGrid& grid() const { return *grid_; }
  // Values at the Lobatto nodes of panel i (ascending in r).
  const std::vector<cplx>& panel_values(int i) const { return values_[i]; }
  const std::vector<cplx>& panel_coeffs(int i) const { return coeffs_[i]; }

  cplx eval(double r) const;
  // k-th derivative of the interpolant at r.
  cplx deriv_at(double r, int k) const;
  // Differentiate every panel interpolant k times.
  PanelFn derivative(int k) const;
  // Integral over [0, tail] (Clenshaw-Curtis on the coefficients).
  cplx integrate() const;
  // Max |value| over all nodes.
  double sup_norm() const;
  // Interpolation-error indicator: largest trailing-coefficient magnitude
  // relative to the panel scale, maximized over panels.
  double resolution_indicator() const;

 private:
  const RadialGrid* grid_;
  std::vector<std::vector<cplx>> values_;
  std::vector<std::vector<cplx>> coeffs_;
};

PanelFn sample_panels(const RadialGrid& grid, const std::function<cplx(double)>& f);

// Chebyshev differentiation of one panel: values at Lobatto nodes of
// [lo, hi] -> values of the k-th derivative at the same nodes.
std::vector<cplx> cheb_derivative(std::span<const cplx> values, double lo, double hi, int k);

// -------------------------------------------------------------------------
// Log-weighted integration

struct LogIntegral {
  cplx value;
  double error = 0;  // two-level estimate
};

// int_0^tail ln|r - a| h(r) dr for smooth h given as a PanelFn. `a` must be
// a grid breakpoint (or 0). Panels touching a use subtraction of a short
// Taylor polynomial of h at a with exact log moments; all panels use
// Gauss-Legendre of the interpolant.
LogIntegral log_weighted_integral(const PanelFn& h, double a, int gl_points = 32);

// Convenience overload sampling a callable on a fresh grid; decay at the
// tail is checked against tail_tol.
LogIntegral log_weighted_integral(const std::function<cplx(double)>& h, double a,
                                  const RadialGrid& grid, double tail_tol = 1e-14);

// -------------------------------------------------------------------------
// Principal-value oracle (Lemma-verification side)

// Brute-force evaluation of int_0^inf (r-a)^{-k} psi(r) dr for psi vanishing
// to order k at a: adaptive quadrature excluding (a-eps, a+eps) and
// Richardson extrapolation of eps -> 0 over eps = 2^-4 .. 2^-20. The
// vanishing hypothesis |psi^(j)(a)| <= 1e-8, j < k, is verified numerically.
double pv_oracle(const std::function<double(double)>& psi, double a, int k,
                 double upper = 60.0);

// Falling factorial (k-1)(k-2)...(k-l).
double falling_factorial(int k_minus_1, int l);

}  // namespace fsol
