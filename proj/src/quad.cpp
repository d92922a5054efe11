#include "fsol/quad.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fsol/errors.hpp"

namespace fsol {
namespace {

std::mutex g_rule_mutex;

Rule1D compute_gauss_legendre(int n) {
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

Rule1D compute_gauss_hermite(int n) {
  // Golub-Welsch on the Hermite Jacobi matrix.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(0.5 * k);
    j(k - 1, k) = b;
    j(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mu0 = std::sqrt(kPi);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

const Rule1D& gauss_hermite(int n) {
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_hermite(n)).first;
  return it->second;
}

namespace {

cplx gl_apply(const std::function<cplx(double)>& f, double lo, double hi, const Rule1D& r) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  cplx s = 0;
  for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

cplx adaptive_rec(const std::function<cplx(double)>& f, double lo, double hi, double tol,
                  int depth, const Rule1D& r) {
  cplx whole = gl_apply(f, lo, hi, r);
  double mid = 0.5 * (lo + hi);
  cplx split = gl_apply(f, lo, mid, r) + gl_apply(f, mid, hi, r);
  if (std::abs(whole - split) <= tol || depth <= 0) return split;
  return adaptive_rec(f, lo, mid, 0.5 * tol, depth - 1, r) +
         adaptive_rec(f, mid, hi, 0.5 * tol, depth - 1, r);
}

}  // namespace

cplx adaptive_integrate(const std::function<cplx(double)>& f, double lo, double hi, double tol,
                        int max_depth) {
  if (hi <= lo) return 0;
  return adaptive_rec(f, lo, hi, tol, max_depth, gauss_legendre(12));
}

// -------------------------------------------------------------------------

double sphere_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: fail(ErrorCode::UnsupportedDimension, "sphere measure for n > 3");
  }
}

SphereRule sphere_rule(int n, int order) {
  if (n < 1 || n > 3) fail(ErrorCode::UnsupportedDimension, "sphere rules support n = 1, 2, 3");
  if (order < 1) fail(ErrorCode::InvalidConfig, "sphere rule order must be >= 1");
  SphereRule rule;
  rule.dim = n;
  rule.order = order;
  if (n == 1) {
    rule.nodes = {VecN{-1.0}, VecN{1.0}};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (n == 2) {
    const int m = std::max(4, order);
    rule.nodes.reserve(m);
    rule.weights.assign(m, 2.0 * kPi / m);
    for (int i = 0; i < m; ++i) {
      double t = 2.0 * kPi * i / m;
      rule.nodes.push_back(VecN{std::cos(t), std::sin(t)});
    }
    return rule;
  }
  // n = 3: Gauss-Legendre in cos(theta) x uniform azimuth.
  const int p = std::max(2, order);
  const int m = 2 * p;
  const Rule1D& gl = gauss_legendre(p);
  rule.nodes.reserve(p * m);
  rule.weights.reserve(p * m);
  for (int i = 0; i < p; ++i) {
    double c = gl.nodes[i];
    double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    double w = gl.weights[i] * 2.0 * kPi / m;
    for (int j = 0; j < m; ++j) {
      double t = 2.0 * kPi * j / m;
      rule.nodes.push_back(VecN{s * std::cos(t), s * std::sin(t), c});
      rule.weights.push_back(w);
    }
  }
  return rule;
}

// -------------------------------------------------------------------------

std::vector<double> RadialGrid::panel_nodes(int i) const {
  const double lo = breaks[i], hi = breaks[i + 1];
  const int m = nodes_per_panel - 1;
  std::vector<double> r(nodes_per_panel);
  for (int j = 0; j <= m; ++j)
    r[j] = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(kPi * (m - j) / m);
  // pin the endpoints exactly
  r.front() = lo;
  r.back() = hi;
  return r;
}

RadialGrid make_radial_grid(double tail, std::span<const double> mandatory, double panel_width,
                            int nodes_per_panel) {
  if (!(tail > 0)) fail(ErrorCode::InvalidConfig, "grid tail must be positive");
  if (nodes_per_panel < 8) fail(ErrorCode::InsufficientNodes, "need at least 8 nodes per panel");
  std::vector<double> marks{0.0, tail};
  for (double m : mandatory)
    if (m > 0 && m < tail) marks.push_back(m);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              marks.end());

  RadialGrid grid;
  grid.nodes_per_panel = nodes_per_panel;
  grid.breaks.push_back(0.0);
  for (size_t i = 0; i + 1 < marks.size(); ++i) {
    const double lo = marks[i], hi = marks[i + 1];
    const int parts = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width - 1e-12)));
    for (int k = 1; k <= parts; ++k) grid.breaks.push_back(lo + (hi - lo) * k / parts);
  }
  return grid;
}

// -------------------------------------------------------------------------
// Chebyshev machinery. Values are stored ascending in r; the standard
// Chebyshev index j corresponds to node cos(j pi / m), i.e. reversed order.

namespace {

std::vector<cplx> cheb_coeffs(std::span<const cplx> values) {
  const int m = static_cast<int>(values.size()) - 1;
  std::vector<cplx> a(m + 1, cplx(0));
  for (int k = 0; k <= m; ++k) {
    cplx s = 0.5 * (values[m] + (k % 2 == 0 ? values[0] : -values[0]));
    for (int j = 1; j < m; ++j) s += values[m - j] * std::cos(kPi * j * k / m);
    a[k] = s * (2.0 / m);
  }
  a[0] *= 0.5;
  a[m] *= 0.5;
  return a;
}

// Derivative of a Chebyshev series on [-1, 1].
std::vector<cplx> cheb_diff_coeffs(const std::vector<cplx>& a) {
  const int m = static_cast<int>(a.size()) - 1;
  std::vector<cplx> b(m + 1, cplx(0));
  if (m == 0) return b;
  b[m] = 0;
  b[m - 1] = 2.0 * m * a[m];
  for (int k = m - 2; k >= 0; --k) b[k] = b[k + 2] + 2.0 * (k + 1) * a[k + 1];
  b[0] *= 0.5;
  return b;
}

cplx clenshaw(const std::vector<cplx>& a, double t) {
  cplx b1 = 0, b2 = 0;
  for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
    cplx b0 = 2.0 * t * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + a[0];
}

std::vector<cplx> cheb_values_from_coeffs(const std::vector<cplx>& a) {
  const int m = static_cast<int>(a.size()) - 1;
  std::vector<cplx> v(m + 1);
  for (int j = 0; j <= m; ++j) v[j] = clenshaw(a, -std::cos(kPi * j / m));
  return v;
}

}  // namespace

std::vector<cplx> cheb_derivative(std::span<const cplx> values, double lo, double hi, int k) {
  const int n = static_cast<int>(values.size());
  if (n < k + 8) fail(ErrorCode::InsufficientNodes, "panel too small for requested derivative");
  std::vector<cplx> a = cheb_coeffs(values);
  const double scale = 2.0 / (hi - lo);
  for (int i = 0; i < k; ++i) {
    a = cheb_diff_coeffs(a);
    for (cplx& c : a) c *= scale;
  }
  return cheb_values_from_coeffs(a);
}

PanelFn::PanelFn(const RadialGrid& grid, std::vector<std::vector<cplx>> node_values)
    : grid_(&grid), values_(std::move(node_values)) {
  coeffs_.reserve(values_.size());
  for (const auto& v : values_) coeffs_.push_back(cheb_coeffs(v));
}

PanelFn sample_panels(const RadialGrid& grid, const std::function<cplx(double)>& f) {
  std::vector<std::vector<cplx>> vals(grid.panel_count());
  for (int i = 0; i < grid.panel_count(); ++i) {
    for (double r : grid.panel_nodes(i)) vals[i].push_back(f(r));
  }
  return PanelFn(grid, std::move(vals));
}

namespace {

int locate_panel(const RadialGrid& g, double r) {
  int i = static_cast<int>(std::upper_bound(g.breaks.begin(), g.breaks.end(), r) -
                           g.breaks.begin()) - 1;
  return std::clamp(i, 0, g.panel_count() - 1);
}

}  // namespace

cplx PanelFn::eval(double r) const {
  const int i = locate_panel(*grid_, r);
  const double lo = grid_->breaks[i], hi = grid_->breaks[i + 1];
  return clenshaw(coeffs_[i], (2.0 * r - lo - hi) / (hi - lo));
}

cplx PanelFn::deriv_at(double r, int k) const {
  const int i = locate_panel(*grid_, r);
  const double lo = grid_->breaks[i], hi = grid_->breaks[i + 1];
  std::vector<cplx> a = coeffs_[i];
  const double scale = 2.0 / (hi - lo);
  for (int d = 0; d < k; ++d) {
    a = cheb_diff_coeffs(a);
    for (cplx& c : a) c *= scale;
  }
  return clenshaw(a, (2.0 * r - lo - hi) / (hi - lo));
}

PanelFn PanelFn::derivative(int k) const {
  std::vector<std::vector<cplx>> vals(grid_->panel_count());
  for (int i = 0; i < grid_->panel_count(); ++i) {
    vals[i] = cheb_derivative(values_[i], grid_->breaks[i], grid_->breaks[i + 1], k);
  }
  return PanelFn(*grid_, std::move(vals));
}

cplx PanelFn::integrate() const {
  cplx total = 0;
  for (int i = 0; i < grid_->panel_count(); ++i) {
    const auto& a = coeffs_[i];
    cplx s = 0;
    for (size_t k = 0; k < a.size(); k += 2) s += a[k] * (2.0 / (1.0 - double(k) * double(k)));
    total += s * 0.5 * (grid_->breaks[i + 1] - grid_->breaks[i]);
  }
  return total;
}

double PanelFn::sup_norm() const {
  double m = 0;
  for (const auto& panel : values_)
    for (const cplx& v : panel) m = std::max(m, std::abs(v));
  return m;
}

double PanelFn::resolution_indicator() const {
  double worst = 0;
  for (const auto& a : coeffs_) {
    const size_t n = a.size();
    for (size_t k = n >= 2 ? n - 2 : 0; k < n; ++k) worst = std::max(worst, std::abs(a[k]));
  }
  return worst;
}

// -------------------------------------------------------------------------

namespace {

// int_0^w u^l ln(u) du
double log_moment(double w, int l) {
  return std::pow(w, l + 1) * (std::log(w) / (l + 1) - 1.0 / ((l + 1.0) * (l + 1.0)));
}

// One panel of int ln|r-a| h(r) dr with h the panel interpolant given by
// Chebyshev coefficients on [lo, hi].
cplx log_panel(const std::vector<cplx>& coeffs, double lo, double hi, double a,
               const Rule1D& gl) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  auto h = [&](double r) { return clenshaw(coeffs, (r - mid) / half); };

  const bool touches = std::abs(a - lo) < 1e-13 || std::abs(a - hi) < 1e-13;
  if (!touches) {
    cplx s = 0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double r = mid + half * gl.nodes[i];
      s += gl.weights[i] * std::log(std::abs(r - a)) * h(r);
    }
    return s * half;
  }

  // Singularity at an endpoint: subtract a short Taylor polynomial of h at a
  // and integrate its log moments exactly.
  const int kTaylor = std::min<int>(6, static_cast<int>(coeffs.size()) - 2);
  std::vector<cplx> taylor(kTaylor + 1);
  {
    std::vector<cplx> d = coeffs;
    double fact = 1.0;
    const double ta = (a - mid) / half;
    for (int l = 0; l <= kTaylor; ++l) {
      taylor[l] = clenshaw(d, ta) / fact;
      d = cheb_diff_coeffs(d);
      for (cplx& c : d) c /= half;
      fact *= (l + 1.0);
    }
  }
  auto taylor_eval = [&](double u) {  // sum_l taylor[l] u^l
    cplx acc = 0;
    for (int l = kTaylor; l >= 0; --l) acc = acc * u + taylor[l];
    return acc;
  };

  cplx s = 0;
  for (size_t i = 0; i < gl.nodes.size(); ++i) {
    double r = mid + half * gl.nodes[i];
    double u = r - a;
    s += gl.weights[i] * std::log(std::abs(u)) * (h(r) - taylor_eval(u));
  }
  s *= half;

  const double w = hi - lo;
  const double sign = (std::abs(a - lo) < 1e-13) ? 1.0 : -1.0;  // side of the panel
  for (int l = 0; l <= kTaylor; ++l) {
    // right side: u in [0, w]; left side: u in [-w, 0]
    double m = log_moment(w, l);
    s += taylor[l] * (sign > 0 ? m : (l % 2 == 0 ? m : -m));
  }
  return s;
}

cplx log_integral_with_coeffs(const PanelFn& h, double a, const Rule1D& gl,
                              int coeff_truncate) {
  const RadialGrid& g = h.grid();
  cplx total = 0;
  for (int i = 0; i < g.panel_count(); ++i) {
    std::vector<cplx> c = h.panel_coeffs(i);
    if (coeff_truncate > 0 && static_cast<int>(c.size()) > coeff_truncate)
      c.resize(coeff_truncate);
    total += log_panel(c, g.breaks[i], g.breaks[i + 1], a, gl);
  }
  return total;
}

}  // namespace

LogIntegral log_weighted_integral(const PanelFn& h, double a, int gl_points) {
  const RadialGrid& g = h.grid();
  bool on_break = a == 0.0;
  for (double b : g.breaks) on_break = on_break || std::abs(b - a) < 1e-13;
  if (!on_break) fail(ErrorCode::InvalidConfig, "log singularity must sit on a panel break");

  const Rule1D& gl = gauss_legendre(gl_points);
  LogIntegral out;
  out.value = log_integral_with_coeffs(h, a, gl, 0);
  const int half = std::max(6, g.nodes_per_panel / 2);
  cplx low = log_integral_with_coeffs(h, a, gl, half);
  out.error = std::abs(out.value - low);
  return out;
}

LogIntegral log_weighted_integral(const std::function<cplx(double)>& h, double a,
                                  const RadialGrid& grid, double tail_tol) {
  PanelFn fn = sample_panels(grid, h);
  const double edge = std::abs(fn.panel_values(grid.panel_count() - 1).back());
  if (edge > tail_tol * std::max(1.0, fn.sup_norm()))
    fail(ErrorCode::TailNotDecayed, "integrand has not decayed at the grid tail");
  return log_weighted_integral(fn, a);
}

// -------------------------------------------------------------------------

double falling_factorial(int k_minus_1, int l) {
  double p = 1;
  for (int i = 0; i < l; ++i) p *= (k_minus_1 - i);
  return p;
}

double pv_oracle(const std::function<double(double)>& psi, double a, int k, double upper) {
  if (a < 0 || k < 1) fail(ErrorCode::InvalidConfig, "pv_oracle needs a >= 0, k >= 1");

  // Verify the vanishing hypothesis psi^(j)(a) = 0, j < k, from a local
  // Chebyshev interpolant.
  {
    const double lo = std::max(0.0, a - 0.5), hi = a + 0.5;
    const int m = 31;
    std::vector<cplx> vals(m + 1);
    for (int j = 0; j <= m; ++j) {
      double r = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(kPi * (m - j) / m);
      vals[j] = psi(r);
    }
    std::vector<cplx> d = cheb_coeffs(vals);
    const double half = 0.5 * (hi - lo);
    for (int j = 0; j < k; ++j) {
      cplx v = clenshaw(d, (a - 0.5 * (lo + hi)) / half);
      if (std::abs(v) > 1e-8)
        fail(ErrorCode::HypothesisViolated, "psi does not vanish to the requested order at a");
      d = cheb_diff_coeffs(d);
      for (cplx& c : d) c /= half;
    }
  }

  auto integrand = [&](double r) -> cplx { return psi(r) / std::pow(r - a, k); };

  // I(eps), excluding (a - eps, a + eps). Only odd powers of eps appear in
  // I - I(eps), so two Richardson levels over the halving sequence kill the
  // eps and eps^3 terms; the best-converged entry wins (small eps entries
  // are noise-dominated for k >= 2 because the integrand is an exact 0/0).
  std::vector<double> i_eps;
  for (int e = 4; e <= 20; ++e) {
    const double eps = std::ldexp(1.0, -e);
    cplx v = adaptive_integrate(integrand, a + eps, upper, 1e-12);
    if (a - eps > 0) v += adaptive_integrate(integrand, 0.0, a - eps, 1e-12);
    i_eps.push_back(v.real());
  }
  std::vector<double> r1, r2;
  for (size_t i = 1; i < i_eps.size(); ++i) r1.push_back(2.0 * i_eps[i] - i_eps[i - 1]);
  for (size_t i = 1; i < r1.size(); ++i) r2.push_back((8.0 * r1[i] - r1[i - 1]) / 7.0);
  double best = r2.back(), best_gap = 1e300;
  for (size_t i = 1; i < r2.size(); ++i) {
    double gap = std::abs(r2[i] - r2[i - 1]);
    if (gap <= best_gap) {
      best_gap = gap;
      best = r2[i];
    }
  }
  return best;
}

}  // namespace fsol
