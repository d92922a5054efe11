#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "fsol/quad.hpp"
#include "fsol/rootsys.hpp"
#include "fsol/symbol.hpp"
#include "fsol/testfn.hpp"

namespace fsol {

// c * d^alpha delta_y
struct PointMass {
  VecN location;
  MIdx alpha;
  cplx weight = 1.0;
};

// Finite combination of derivatives of point masses and Gaussian atoms.
struct SourceTerm {
  int dim = 0;
  std::vector<std::variant<PointMass, GaussPolyAtom>> terms;

  static SourceTerm delta(int n) {
    SourceTerm s;
    s.dim = n;
    s.terms.push_back(PointMass{VecN(n), MIdx{}, 1.0});
    return s;
  }
};

struct PairingResult {
  cplx value = 0;
  double error = 0;  // absolute estimate
  int sphere_nodes = 0;
  int panel_count = 0;
  double tail_bound = 0;
};

// Cutoff of the approximation theorem, given by its radial profile:
// eta = 1 for |x| < 1, exp(1 - 1/(1 - (|x|-1)^2)) on 1 <= |x| < 2, 0 beyond.
struct BumpSpec {
  int k = 1;  // dilation index, >= 1

  double profile(double t) const;          // eta at radius t
  double fourier_data(double rho) const {  // F[F eta_k] at radius rho: eta(rho/k)
    return profile(rho / k);
  }
};

struct QuadParams {
  int sphere_order = 0;        // 0 = automatic from the data
  double panel_width = 1.0;
  int nodes_per_panel = 24;
  double tail_tol = 1e-16;
  double error_budget = 1e-3;  // ErrorBudgetExceeded above this estimate
  int log_gl_points = 32;
  double x_extent = 6.0;       // max |x| the evaluator must resolve
  int hermite_points = 16;     // volume quadrature order per axis
  uint64_t seed = 0xF0DD;
};

// Assembled solution operator for one (symbol, factorization, Fourier data)
// triple. Construction precomputes the radial grid, sphere rule and the
// x-independent node weights mu * Fv(Phi) * G / q; each eval(x) then costs
// one complex exponential per (radial node, sphere node) plus the log
// integrals on the shared grid.
class P0Evaluator {
 public:
  // Exact atom data (v is the physical-side test function).
  P0Evaluator(const SymbolSpec& spec, const RadialFactorization& fact, const TestFunction& v,
              const QuadParams& params);
  // Pointwise Fourier data with compact radial support (approximants).
  P0Evaluator(const SymbolSpec& spec, const RadialFactorization& fact,
              std::function<cplx(const VecN&)> fourier_data, double support_radius,
              const QuadParams& params);

  PairingResult eval(const VecN& x) const;

  // E_q(v)(., x) sampled on the shared grid.
  PanelFn sample_e(const VecN& x) const;
  // Analytic r-derivatives of E_q at the Lobatto nodes of one panel
  // (atom-backed data only).
  std::vector<cplx> analytic_derivs(const VecN& x, int panel, int k) const;

  const RadialGrid& grid() const { return grid_; }
  const SphereRule& rule() const { return rule_; }
  const SymbolSpec& spec() const { return *spec_; }

 private:
  void build(const QuadParams& params, double support_radius,
             const std::function<cplx(const VecN&)>& data);

  const SymbolSpec* spec_;
  const RadialFactorization* fact_;
  std::optional<TestFunction> fourier_atoms_;  // transformed v when exact
  QuadParams params_;
  RadialGrid grid_;
  SphereRule rule_;
  std::vector<VecN> dirs_;              // M omega per sphere node
  std::vector<std::vector<cplx>> wgt_;  // per panel: node-major weights
  double tail_bound_ = 0;
};

// ---- spec-level operations -----------------------------------------------

// E_q(v)(r, x), a single spherical quadrature.
cplx e_q(const SymbolSpec& spec, const RadialFactorization& fact, const TestFunction& v,
         double r, const VecN& x, const SphereRule& rule);

// Chebyshev-vs-analytic r-derivatives of E_q on one panel; throws
// PathsDisagree when the relative gap exceeds 1e-6.
struct DerivPaths {
  std::vector<double> nodes;
  std::vector<cplx> cheb;
  std::vector<cplx> analytic;
  double max_gap = 0;  // absolute, relative to the panel sup
};
DerivPaths e_q_derivs(const SymbolSpec& spec, const RadialFactorization& fact,
                      const TestFunction& v, const VecN& x, int panel, int k,
                      const QuadParams& params);

// Boundary residual R_{j,k}: zero at a root r_j = 0, otherwise
// sum_{l=1}^{k-1} (-r_j)^{l-k}/(k-1)_l d_r^{l-1}E(0,x)
//   - ln(r_j)/(k-1)! d_r^{k-1}E(0,x),
// with (k-1)_l the falling factorial.
cplx residual_r(double root, int k, std::span<const cplx> e_derivs_at_zero);

// P0 v (x).
PairingResult apply_p0(const SymbolSpec& spec, const RadialFactorization& fact,
                       const TestFunction& v, const VecN& x, const QuadParams& params = {});

// <P0 delta_0, psi> = (P0 A psi)(0).
PairingResult pair_delta(const SymbolSpec& spec, const RadialFactorization& fact,
                         const TestFunction& psi, const QuadParams& params = {});

// <P0 s, psi> for a finite source.
PairingResult pair_source(const SymbolSpec& spec, const RadialFactorization& fact,
                          const SourceTerm& s, const TestFunction& psi,
                          const QuadParams& params = {});

// Paley-Wiener approximant u_k(x) = P0(v_k)(x), F v_k = eta(./k).
PairingResult approximant_value(const SymbolSpec& spec, const RadialFactorization& fact,
                                const BumpSpec& bump, const VecN& x,
                                const QuadParams& params = {});

// Circle in R^2 (axis ignored) or R^3.
struct CircleSurface {
  VecN center;
  double radius = 1.0;
  VecN axis;  // n = 3 only
};

// Mollified trace samples (P0 s * eta_eps)(x_i) at equi-angular points.
std::vector<cplx> trace_on_surface(const SymbolSpec& spec, const RadialFactorization& fact,
                                   const SourceTerm& s, const CircleSurface& surface,
                                   int num_samples, double mollifier_width,
                                   const QuadParams& params = {});

// Equi-angular sample points of a circle surface.
std::vector<VecN> circle_points(const CircleSurface& surface, int num_samples, int dim);

}  // namespace fsol
