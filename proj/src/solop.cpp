#include "fsol/solop.hpp"

#include <algorithm>
#include <cmath>

#include "fsol/errors.hpp"
#include "fsol/special.hpp"

namespace fsol {

double BumpSpec::profile(double t) const {
  t = std::abs(t);
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double u = t - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

namespace {

double pow_int(double x, int k) {
  double p = 1;
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

// Smallest radius beyond which the atom's Fourier envelope is below
// tol * (its peak): sup_{|eta| = t} |poly(eta)| e^{-t^2/(2 sigma^2)}.
double atom_decay_radius(const GaussPolyAtom& atom, double tol) {
  double csum = 0;
  int deg = 0;
  for (const MultiPoly::Term& t : atom.poly.terms()) {
    csum += std::abs(t.coeff);
    deg = std::max(deg, t.alpha.order());
  }
  if (csum == 0) return 0.0;
  const double sigma = atom.width;
  auto env = [&](double t) { return csum * pow_int(1.0 + t, deg) * std::exp(-t * t / (2 * sigma * sigma)); };
  double peak = env(0);
  for (double t = 0; t < 10 * sigma * (1 + deg); t += 0.1 * sigma) peak = std::max(peak, env(t));
  double t = sigma;
  while (env(t) > tol * peak && t < 400 * sigma) t += 0.25 * sigma;
  return t;
}

}  // namespace

P0Evaluator::P0Evaluator(const SymbolSpec& spec, const RadialFactorization& fact,
                         const TestFunction& v, const QuadParams& params)
    : spec_(&spec), fact_(&fact), fourier_atoms_(fourier(v)), params_(params) {
  auto data = [this](const VecN& xi) { return fsol::eval(*fourier_atoms_, xi); };
  build(params, std::numeric_limits<double>::infinity(),
        std::function<cplx(const VecN&)>(data));
}

P0Evaluator::P0Evaluator(const SymbolSpec& spec, const RadialFactorization& fact,
                         std::function<cplx(const VecN&)> fourier_data, double support_radius,
                         const QuadParams& params)
    : spec_(&spec), fact_(&fact), params_(params) {
  build(params, support_radius, fourier_data);
}

void P0Evaluator::build(const QuadParams& params, double support_radius,
                        const std::function<cplx(const VecN&)>& data) {
  const int n = spec_->dim();
  const VecN x0 = spec_->center();
  double wmax = 0, wmin = 1e300;
  for (int i = 0; i < n; ++i) {
    wmax = std::max(wmax, spec_->frame().w[i]);
    wmin = std::min(wmin, spec_->frame().w[i]);
  }
  const double stretch = std::sqrt(wmax);   // r -> |Phi - x0| upper slack
  const double s_max = 1.0 / std::sqrt(wmin);  // largest singular value of M
  const double s_min = 1.0 / std::sqrt(wmax);
  const double aniso = 0.5 * (s_max * s_max - s_min * s_min);

  // Tail radius and angular-bandwidth demands from the Fourier data. The
  // plane-wave phases contribute r |x + freq| s_max; the Gaussian envelope
  // contributes only through anisotropy and off-center data.
  double tail = 4.0;
  double max_freq = 0, max_cen = 0, sig_min = 1e300;
  std::vector<double> kinks;
  if (fourier_atoms_) {
    for (const GaussPolyAtom& a : fourier_atoms_->atoms) {
      const double t = atom_decay_radius(a, params.tail_tol);
      const double cen = (a.center - x0).norm();
      tail = std::max(tail, stretch * (t + cen) * 1.05);
      max_freq = std::max(max_freq, a.freq.norm());
      max_cen = std::max(max_cen, cen);
      sig_min = std::min(sig_min, a.width);
    }
  } else {
    if (!std::isfinite(support_radius))
      fail(ErrorCode::InvalidConfig, "pointwise fourier data needs a support radius");
    tail = stretch * (support_radius + x0.norm()) + 1e-9;
    // profile kinks sit where |xi| crosses half and full support
    for (double c : {0.5 * support_radius, support_radius}) {
      kinks.push_back((c - x0.norm()) / s_max);
      kinks.push_back((c + x0.norm()) / s_min);
      kinks.push_back(c / s_max);
      kinks.push_back(c / s_min);
    }
  }

  double bandwidth = tail * s_max * (params.x_extent + max_freq);
  if (fourier_atoms_) {
    bandwidth += (tail * tail * aniso + tail * s_max * max_cen) / (sig_min * sig_min);
  } else if (aniso > 0 || x0.norm() > 0) {
    // radial profile pulled back through an anisotropic or shifted chart
    bandwidth += (tail * aniso / s_min + s_max * x0.norm()) * 8.0 / support_radius;
  }

  int order = params.sphere_order;
  if (order <= 0) {
    if (n == 3)
      order = std::clamp(static_cast<int>(0.75 * bandwidth) + 12, 16, 128);
    else if (n == 2)
      order = std::clamp(static_cast<int>(1.4 * bandwidth) + 24, 32, 320);
    else
      order = 1;
  }
  rule_ = sphere_rule(n, order);

  std::vector<double> mandatory;
  for (const RadialRoot& r : fact_->roots) mandatory.push_back(r.r);
  for (double kk : kinks)
    if (kk > 1e-9 && kk < tail) mandatory.push_back(kk);
  grid_ = make_radial_grid(tail, mandatory, params.panel_width, params.nodes_per_panel);

  dirs_.clear();
  dirs_.reserve(rule_.nodes.size());
  for (const VecN& omega : rule_.nodes) dirs_.push_back(spec_->chart_direction(omega));

  const size_t m = rule_.nodes.size();
  wgt_.assign(grid_.panel_count(), {});
  double data_sup = 0;
  for (int i = 0; i < grid_.panel_count(); ++i) {
    const std::vector<double> nodes = grid_.panel_nodes(i);
    wgt_[i].assign(nodes.size() * m, cplx(0));
    for (size_t t = 0; t < nodes.size(); ++t) {
      const double r = nodes[t];
      const cplx qv = fact_->deflated.eval(r);
      const double dens = spec_->jacobian_density(r);
      for (size_t j = 0; j < m; ++j) {
        VecN xi = dirs_[j] * r + x0;
        cplx f = data(xi);
        data_sup = std::max(data_sup, std::abs(f));
        wgt_[i][t * m + j] = rule_.weights[j] * f * dens / qv;
      }
    }
  }

  // Rapid decay means the dropped tail is below tail_tol relative to the
  // data scale; fold a crude bound into the reported error.
  tail_bound_ = params.tail_tol * data_sup * sphere_measure(n) *
                spec_->jacobian_density(std::max(tail, 1.0)) * (1.0 + std::log1p(tail));
}

PanelFn P0Evaluator::sample_e(const VecN& x) const {
  const size_t m = rule_.nodes.size();
  const cplx base = std::exp(cplx(0.0, x.dot(spec_->center())));
  std::vector<double> phase(m);
  for (size_t j = 0; j < m; ++j) phase[j] = x.dot(dirs_[j]);

  std::vector<std::vector<cplx>> values(grid_.panel_count());
  for (int i = 0; i < grid_.panel_count(); ++i) {
    const std::vector<double> nodes = grid_.panel_nodes(i);
    values[i].resize(nodes.size());
    for (size_t t = 0; t < nodes.size(); ++t) {
      const double r = nodes[t];
      const cplx* w = &wgt_[i][t * m];
      cplx acc = 0;
      for (size_t j = 0; j < m; ++j) acc += w[j] * std::polar(1.0, r * phase[j]);
      values[i][t] = base * acc;
    }
  }
  return PanelFn(grid_, std::move(values));
}

PairingResult P0Evaluator::eval(const VecN& x) const {
  const int n = spec_->dim();
  PanelFn e = sample_e(x);

  PairingResult out;
  out.sphere_nodes = static_cast<int>(rule_.nodes.size());
  out.panel_count = grid_.panel_count();
  out.tail_bound = tail_bound_;

  const double norm = std::pow(2.0 * kPi, -n);
  double err = tail_bound_;

  if (fact_->regular()) {
    out.value = norm * e.integrate();
    err += norm * e.resolution_indicator() * grid_.tail();
  } else {
    // shared derivative chain on the one grid
    std::vector<PanelFn> derivs;
    derivs.push_back(std::move(e));
    for (int k = 1; k <= fact_->max_multiplicity; ++k)
      derivs.push_back(derivs.back().derivative(1));

    cplx total = 0;
    for (const RadialRoot& root : fact_->roots) {
      std::vector<cplx> at_zero(root.multiplicity, cplx(0));
      for (int l = 0; l < root.multiplicity; ++l) at_zero[l] = derivs[l].eval(0.0);
      for (int k = 1; k <= root.multiplicity; ++k) {
        const double kfact = std::tgamma(double(k));  // (k-1)!
        LogIntegral li = log_weighted_integral(derivs[k], root.r, params_.log_gl_points);
        cplx pjk = -li.value / kfact;
        cplx rjk = residual_r(root.r, k, std::span<const cplx>(at_zero.data(), k));
        const cplx c = root.pf[k - 1];
        total += c * (pjk + rjk);
        err += std::abs(c) * norm *
               (li.error / kfact + derivs[k].resolution_indicator() * (1.0 + grid_.tail()));
      }
    }
    out.value = norm * total;
  }

  const cplx scale = spec_->scale();
  out.value /= scale;
  out.error = err / std::abs(scale) + 1e-15 * std::abs(out.value);
  if (out.error > params_.error_budget)
    fail(ErrorCode::ErrorBudgetExceeded, "pairing error estimate exceeds the budget");
  return out;
}

std::vector<cplx> P0Evaluator::analytic_derivs(const VecN& x, int panel, int k) const {
  if (!fourier_atoms_)
    fail(ErrorCode::InvalidConfig, "analytic derivative path needs atom data");
  const int n = spec_->dim();
  const VecN x0 = spec_->center();
  const std::vector<double> nodes = grid_.panel_nodes(panel);
  const size_t m = rule_.nodes.size();

  // q-side derivative tables at every node: D_j = (1/q)^(j)
  std::vector<RadialPolynomial> qder{fact_->deflated};
  for (int j = 1; j <= k; ++j) qder.push_back(qder.back().derivative());
  std::vector<double> binom(k + 1, 1.0);
  for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * double(k - j + 1) / double(j);

  std::vector<cplx> out(nodes.size(), cplx(0));

  const double detw = spec_->jacobian_density(1.0);  // |det W^{-1/2}| (times 1^{n-1})
  for (const GaussPolyAtom& atom : fourier_atoms_->atoms) {
    const double s2 = atom.width * atom.width;
    for (size_t j = 0; j < m; ++j) {
      const VecN u = dirs_[j];
      const VecN off = x0 - atom.center;
      // g(r) = mu_j dens(r) P(off + r u) e^{a2 r^2 + a1 r + a0}
      RadialPolynomial base = atom.poly.restrict_to_line(off, u);
      std::vector<cplx> dens_coeffs(n, cplx(0));
      dens_coeffs[n - 1] = detw * rule_.weights[j];
      base = base * RadialPolynomial(std::move(dens_coeffs));
      const cplx a2 = cplx(-u.norm2() / (2.0 * s2), 0.0);
      const cplx a1 = cplx(-u.dot(off) / s2, atom.freq.dot(u) + x.dot(u));
      const cplx a0 = cplx(-off.norm2() / (2.0 * s2), atom.freq.dot(x0) + x.dot(x0));

      // A_0 = base, A_{i+1} = A_i' + (2 a2 r + a1) A_i gives d^i g = A_i e^{...}
      std::vector<RadialPolynomial> a{base};
      RadialPolynomial lin({a1, 2.0 * a2});
      for (int i = 1; i <= k; ++i) a.push_back(a[i - 1].derivative() + lin * a[i - 1]);

      for (size_t t = 0; t < nodes.size(); ++t) {
        const double r = nodes[t];
        const cplx expo = std::exp((a2 * r + a1) * r + a0);
        // derivatives of 1/q at r
        std::vector<cplx> dq(k + 1);
        dq[0] = 1.0 / qder[0].eval(r);
        for (int i = 1; i <= k; ++i) {
          cplx acc = 0;
          double bin = 1.0;
          for (int l = 1; l <= i; ++l) {
            bin = bin * double(i - l + 1) / double(l);
            acc += bin * qder[l].eval(r) * dq[i - l];
          }
          dq[i] = -dq[0] * acc;
        }
        cplx sum = 0;
        for (int i = 0; i <= k; ++i) sum += binom[i] * a[i].eval(r) * expo * dq[k - i];
        out[t] += sum;
      }
    }
  }
  return out;
}

// ---- spec-level operations -----------------------------------------------

cplx e_q(const SymbolSpec& spec, const RadialFactorization& fact, const TestFunction& v,
         double r, const VecN& x, const SphereRule& rule) {
  TestFunction hat = fourier(v);
  const cplx qv = fact.deflated.eval(r);
  const double dens = spec.jacobian_density(r);
  cplx acc = 0;
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    VecN xi = spec.chart(r, rule.nodes[j]);
    acc += rule.weights[j] * std::exp(cplx(0.0, x.dot(xi))) * eval(hat, xi);
  }
  return acc * dens / qv;
}

DerivPaths e_q_derivs(const SymbolSpec& spec, const RadialFactorization& fact,
                      const TestFunction& v, const VecN& x, int panel, int k,
                      const QuadParams& params) {
  if (k > std::max(fact.max_multiplicity, 1))
    fail(ErrorCode::InvalidConfig, "derivative order beyond the root multiplicity");
  P0Evaluator ev(spec, fact, v, params);
  DerivPaths out;
  if (panel < 0 || panel >= ev.grid().panel_count())
    fail(ErrorCode::InvalidConfig, "panel index out of range");
  out.nodes = ev.grid().panel_nodes(panel);
  PanelFn e = ev.sample_e(x);
  PanelFn d = e.derivative(k);
  out.cheb = d.panel_values(panel);
  out.analytic = ev.analytic_derivs(x, panel, k);

  double sup = 0;
  for (const cplx& c : out.cheb) sup = std::max(sup, std::abs(c));
  for (const cplx& c : out.analytic) sup = std::max(sup, std::abs(c));
  for (size_t i = 0; i < out.cheb.size(); ++i)
    out.max_gap = std::max(out.max_gap, std::abs(out.cheb[i] - out.analytic[i]));
  if (sup > 0 && out.max_gap > 1e-6 * sup)
    fail(ErrorCode::PathsDisagree, "chebyshev and analytic derivative paths disagree");
  return out;
}

cplx residual_r(double root, int k, std::span<const cplx> e_derivs_at_zero) {
  if (root == 0.0) return 0.0;
  cplx acc = 0;
  for (int l = 1; l <= k - 1; ++l)
    acc += std::pow(-root, l - k) / falling_factorial(k - 1, l) * e_derivs_at_zero[l - 1];
  acc -= std::log(root) / std::tgamma(double(k)) * e_derivs_at_zero[k - 1];
  return acc;
}

PairingResult apply_p0(const SymbolSpec& spec, const RadialFactorization& fact,
                       const TestFunction& v, const VecN& x, const QuadParams& params) {
  QuadParams p = params;
  p.x_extent = std::max(p.x_extent, x.norm() + 0.5);
  P0Evaluator ev(spec, fact, v, p);
  return ev.eval(x);
}

PairingResult pair_delta(const SymbolSpec& spec, const RadialFactorization& fact,
                         const TestFunction& psi, const QuadParams& params) {
  return apply_p0(spec, fact, reflect(psi), VecN(spec.dim()), params);
}

PairingResult pair_source(const SymbolSpec& spec, const RadialFactorization& fact,
                          const SourceTerm& s, const TestFunction& psi,
                          const QuadParams& params) {
  const int n = spec.dim();
  PairingResult total;
  for (const auto& term : s.terms) {
    if (std::holds_alternative<PointMass>(term)) {
      const PointMass& pm = std::get<PointMass>(term);
      // c d^alpha delta_y pairs to c (-1)^|alpha| (P0 A d^alpha psi)(-y)
      TestFunction t = reflect(derive(psi, pm.alpha));
      QuadParams p = params;
      p.x_extent = std::max(p.x_extent, pm.location.norm() + 0.5);
      P0Evaluator ev(spec, fact, t, p);
      PairingResult r = ev.eval(-pm.location);
      const double sign = pm.alpha.order() % 2 == 0 ? 1.0 : -1.0;
      total.value += pm.weight * sign * r.value;
      total.error += std::abs(pm.weight) * r.error;
      total.sphere_nodes = std::max(total.sphere_nodes, r.sphere_nodes);
      total.panel_count = std::max(total.panel_count, r.panel_count);
      total.tail_bound = std::max(total.tail_bound, r.tail_bound);
    } else {
      // <g, A P0 A psi> on a gauss-hermite grid adapted to g
      const GaussPolyAtom& g = std::get<GaussPolyAtom>(term);
      const Rule1D& gh = gauss_hermite(params.hermite_points);
      const double tmax = std::abs(gh.nodes.back());
      QuadParams p = params;
      p.x_extent = std::max(p.x_extent, g.center.norm() + std::sqrt(2.0) * g.width * tmax + 0.5);
      P0Evaluator ev(spec, fact, reflect(psi), p);

      const double jac = std::pow(std::sqrt(2.0) * g.width, n);
      std::array<int, kMaxDim> idx{};
      const int npt = static_cast<int>(gh.nodes.size());
      int count = 1;
      for (int i = 0; i < n; ++i) count *= npt;
      for (int flat = 0; flat < count; ++flat) {
        int rem = flat;
        double w = jac;
        VecN t(n);
        for (int i = 0; i < n; ++i) {
          idx[i] = rem % npt;
          rem /= npt;
          w *= gh.weights[idx[i]];
          t[i] = gh.nodes[idx[i]];
        }
        VecN xq = g.center + std::sqrt(2.0) * g.width * t;
        VecN u = xq - g.center;
        cplx gval = g.poly.eval(u) * std::exp(cplx(0.0, g.freq.dot(xq)));
        PairingResult r = ev.eval(-xq);
        total.value += w * gval * r.value;
        total.error += w * std::abs(gval) * r.error;
        total.sphere_nodes = std::max(total.sphere_nodes, r.sphere_nodes);
        total.panel_count = std::max(total.panel_count, r.panel_count);
      }
    }
  }
  return total;
}

PairingResult approximant_value(const SymbolSpec& spec, const RadialFactorization& fact,
                                const BumpSpec& bump, const VecN& x, const QuadParams& params) {
  if (bump.k < 1) fail(ErrorCode::InvalidConfig, "bump index k must be >= 1");
  QuadParams p = params;
  p.x_extent = std::max(p.x_extent, x.norm() + 0.5);
  auto data = [bump](const VecN& xi) { return cplx(bump.fourier_data(xi.norm()), 0.0); };
  P0Evaluator ev(spec, fact, data, 2.0 * bump.k, p);
  return ev.eval(x);
}

std::vector<VecN> circle_points(const CircleSurface& surface, int num_samples, int dim) {
  std::vector<VecN> pts;
  pts.reserve(num_samples);
  if (dim == 2) {
    for (int i = 0; i < num_samples; ++i) {
      double t = 2.0 * kPi * i / num_samples;
      pts.push_back(surface.center + VecN{std::cos(t), std::sin(t)} * surface.radius);
    }
    return pts;
  }
  if (dim != 3) fail(ErrorCode::UnsupportedDimension, "circle surfaces need n = 2 or 3");
  VecN axis = surface.axis;
  const double an = axis.norm();
  if (an == 0) fail(ErrorCode::InvalidConfig, "surface axis must be nonzero");
  axis = axis * (1.0 / an);
  // orthonormal basis of the plane orthogonal to axis
  VecN e = std::abs(axis[0]) < 0.9 ? VecN{1, 0, 0} : VecN{0, 1, 0};
  VecN u{axis[1] * e[2] - axis[2] * e[1], axis[2] * e[0] - axis[0] * e[2],
         axis[0] * e[1] - axis[1] * e[0]};
  u = u * (1.0 / u.norm());
  VecN w{axis[1] * u[2] - axis[2] * u[1], axis[2] * u[0] - axis[0] * u[2],
         axis[0] * u[1] - axis[1] * u[0]};
  for (int i = 0; i < num_samples; ++i) {
    double t = 2.0 * kPi * i / num_samples;
    pts.push_back(surface.center + (u * std::cos(t) + w * std::sin(t)) * surface.radius);
  }
  return pts;
}

std::vector<cplx> trace_on_surface(const SymbolSpec& spec, const RadialFactorization& fact,
                                   const SourceTerm& s, const CircleSurface& surface,
                                   int num_samples, double mollifier_width,
                                   const QuadParams& params) {
  const int n = spec.dim();
  if (!(mollifier_width > 0)) fail(ErrorCode::InvalidConfig, "mollifier width must be positive");
  std::vector<VecN> pts = circle_points(surface, num_samples, n);

  for (const auto& term : s.terms) {
    if (!std::holds_alternative<PointMass>(term)) continue;
    const VecN& y = std::get<PointMass>(term).location;
    for (const VecN& x : pts)
      if ((x - y).norm() <= 3.0 * mollifier_width)
        fail(ErrorCode::SurfaceTooClose, "surface passes within 3 eps of a point source");
  }

  // unit-mass gaussian mollifier
  const double amp = std::pow(2.0 * kPi * mollifier_width * mollifier_width, -0.5 * n);
  TestFunction eta(n, make_gaussian(VecN(n), mollifier_width, VecN(n), amp));

  std::vector<cplx> out;
  out.reserve(num_samples);
  for (const VecN& x : pts) {
    TestFunction probe = translate(reflect(eta), x);
    out.push_back(pair_source(spec, fact, s, probe, params).value);
  }
  return out;
}

}  // namespace fsol
