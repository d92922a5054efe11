#include "fsol/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "fsol/special.hpp"

namespace fsol {
namespace {

using clock_type = std::chrono::steady_clock;

double elapsed(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// psi(r) = A(r) exp(-r) or A(r) exp(-r^2/2): closed under d/dr, which is all
// the regularization lemma needs.
struct PolyExp {
  RadialPolynomial a;
  bool gaussian;  // false: e^{-r}, true: e^{-r^2/2}

  double eval(double r) const {
    double e = gaussian ? std::exp(-0.5 * r * r) : std::exp(-r);
    return a.eval(r).real() * e;
  }
  PolyExp derivative() const {
    RadialPolynomial d = a.derivative();
    if (gaussian)
      d = d + a * RadialPolynomial({0.0, -1.0});
    else
      d = d + a * (-1.0);
    return {d, gaussian};
  }
  PolyExp derivative(int k) const {
    PolyExp p = *this;
    for (int i = 0; i < k; ++i) p = p.derivative();
    return p;
  }
};

// (r - a)^k as a RadialPolynomial
RadialPolynomial shifted_power(double a, int k) {
  RadialPolynomial p = RadialPolynomial::constant(1.0);
  for (int i = 0; i < k; ++i) p = p * RadialPolynomial({-a, 1.0});
  return p;
}

double logres_gap(const PolyExp& psi, double a, int k) {
  const double tail = psi.gaussian ? 12.0 : 55.0;
  const double pv = pv_oracle([&](double r) { return psi.eval(r); }, a, k, tail);

  PolyExp dk = psi.derivative(k);
  RadialGrid grid = make_radial_grid(tail, std::vector<double>{a}, 1.0, 24);
  LogIntegral li =
      log_weighted_integral([&](double r) -> cplx { return dk.eval(r); }, a, grid, 1e-12);
  double log_form = -li.value.real() / std::tgamma(double(k));
  if (a > 0) {
    double c0 = 0;
    for (int l = 1; l <= k - 1; ++l)
      c0 += std::pow(-a, l - k) / falling_factorial(k - 1, l) * psi.derivative(l - 1).eval(0.0);
    c0 -= std::log(a) / std::tgamma(double(k)) * psi.derivative(k - 1).eval(0.0);
    log_form += c0;
  }
  return std::abs(pv - log_form);
}

MatN random_invertible(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    MatN m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = u(rng);
    if (std::abs(m.det()) > 0.3) return m;
  }
}

VecN random_in_ball(std::mt19937_64& rng, int n, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    VecN y(n);
    for (int i = 0; i < n; ++i) y[i] = u(rng);
    if (y.norm() <= 1.0) return y * radius;
  }
}

}  // namespace

std::vector<TestFunction> seeded_psi_panel(int dim, int count, uint64_t seed) {
  std::mt19937_64 rng(seed + dim);
  std::uniform_real_distribution<double> uw(0.75, 1.3);
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  std::uniform_int_distribution<int> uaxis(0, dim - 1);
  std::uniform_int_distribution<int> udeg(1, 2);

  std::vector<TestFunction> panel;
  for (int i = 0; i < count; ++i) {
    GaussPolyAtom atom = make_gaussian(random_in_ball(rng, dim, 1.2), uw(rng),
                                       random_in_ball(rng, dim, 1.0));
    atom.poly = MultiPoly::constant(cplx(1.0, 0.25 * uc(rng)));
    if (i > 0) {  // the first panel member stays a plain gaussian
      MIdx alpha;
      alpha[uaxis(rng)] = udeg(rng);
      atom.poly.add_term(alpha, cplx(uc(rng), 0.5 * uc(rng)));
    }
    panel.emplace_back(dim, std::move(atom));
  }
  return panel;
}

SymbolSpec shifted_frame_spec() {
  EllipsoidalFrame f;
  f.q = MatN::rotation2(kPi / 6.0);
  f.w = VecN{1.0, 2.0};
  f.b = VecN{0.3, -0.2};
  f.c = 0.1;
  // kappa fixes the constant so the radial roots land at 1 and 1.5
  SymbolSpec probe(2, {0.0, 1.0}, f);
  const cplx kappa = probe.kappa();
  std::vector<cplx> coeffs{(kappa + 1.0) * (kappa + 2.25), -(2.0 * kappa + 3.25), 1.0};
  return SymbolSpec(2, std::move(coeffs), f);
}

std::vector<SymbolSpec> canonical_specs() {
  std::vector<SymbolSpec> specs;
  specs.push_back(make_power_symbol(3, {0.0, 1.0}));        // |xi|^2
  specs.push_back(make_power_symbol(3, {1.0, 1.0}));        // |xi|^2 + 1
  specs.push_back(make_power_symbol(2, {4.0, -5.0, 1.0}));  // (|xi|^2-1)(|xi|^2-4)
  specs.push_back(make_power_symbol(3, {4.0, -5.0, 1.0}));
  specs.push_back(shifted_frame_spec());
  return specs;
}

CheckReport check_logres() {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "logres";
  rep.tolerance = 1e-7;

  double worst_a0 = 0, worst_apos = 0;
  for (int k = 1; k <= 3; ++k) {
    worst_a0 = std::max(worst_a0, logres_gap({shifted_power(0.0, k), false}, 0.0, k));
    worst_a0 = std::max(worst_a0, logres_gap({shifted_power(0.0, k), true}, 0.0, k));
    for (double a : {0.5, 1.0, 2.0})
      worst_apos = std::max(worst_apos, logres_gap({shifted_power(a, k), false}, a, k));
  }
  rep.details["a0"] = worst_a0;
  rep.details["a_positive"] = worst_apos;
  rep.residual = std::max(worst_a0, worst_apos);
  rep.pass = worst_a0 <= 1e-8 && worst_apos <= rep.tolerance;
  rep.seconds = elapsed(t0);
  return rep;
}

CheckReport check_bessel(uint64_t seed) {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "bessel";
  rep.tolerance = 1e-9;
  rep.seed = seed;
  std::mt19937_64 rng(seed);

  double worst = 0, worst_origin = 0;
  for (int n = 2; n <= 3; ++n) {
    SphereRule rule = sphere_rule(n, n == 2 ? 128 : 48);
    for (int trial = 0; trial < 20; ++trial) {
      MatN m = random_invertible(rng, n);
      VecN y = random_in_ball(rng, n, 8.0);
      cplx closed = sphere_exp_integral(m, y);
      cplx quad = rule.integrate_c(
          [&](const VecN& omega) { return std::exp(cplx(0.0, y.dot(m.mul(omega)))); });
      worst = std::max(worst, std::abs(closed - quad));
    }
    cplx at0 = sphere_exp_integral(MatN::identity(n), VecN(n));
    worst_origin = std::max(worst_origin, std::abs(at0 - sphere_measure(n)));
  }
  rep.details["random_my"] = worst;
  rep.details["origin"] = worst_origin;
  rep.residual = worst;
  rep.pass = worst <= rep.tolerance && worst_origin <= 1e-12;
  rep.seconds = elapsed(t0);
  return rep;
}

CheckReport check_identity(const SymbolSpec& spec, uint64_t seed, const QuadParams& params) {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "identity";
  rep.tolerance = 1e-5;
  rep.seed = seed;

  RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, spec.dim());
  double worst = 0;
  for (const TestFunction& psi : seeded_psi_panel(spec.dim(), 5, seed)) {
    // <Op(p) P0 delta_0, psi> = (P0 Op(p) A psi)(0)
    TestFunction v = apply_symbol(spec, reflect(psi));
    PairingResult r = apply_p0(spec, fact, v, VecN(spec.dim()), params);
    worst = std::max(worst, std::abs(r.value - eval(psi, VecN(spec.dim()))));
  }
  rep.residual = worst;
  rep.pass = worst <= rep.tolerance;
  rep.seconds = elapsed(t0);
  return rep;
}

namespace {

// Radially reduced convolution oracle: int k(|x|) psi(x) dx evaluated as
// int r^{n-1} k(r) [sphere average of psi] dr, independent of the operator
// machinery.
double kernel_pair_oracle(const std::function<double(double)>& kernel, const TestFunction& psi,
                          int n, double tail) {
  SphereRule rule = sphere_rule(n, 32);
  auto radial = [&](double r) -> cplx {
    cplx avg = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      avg += rule.weights[i] * eval(psi, rule.nodes[i] * r);
    double rpow = 1;
    for (int i = 0; i < n - 1; ++i) rpow *= r;
    return rpow * kernel(r) * avg;
  };
  return adaptive_integrate(radial, 0.0, tail, 1e-12).real();
}

}  // namespace

CheckReport check_closed_forms(const QuadParams& params) {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "closed_forms";
  rep.tolerance = 1e-6;

  SymbolSpec laplace = make_power_symbol(3, {0.0, 1.0});
  SymbolSpec yukawa = make_power_symbol(3, {1.0, 1.0});
  RadialFactorization lf = factor_radial(laplace.radial_profile(), 1e-7, 3);
  RadialFactorization yf = factor_radial(yukawa.radial_profile(), 1e-7, 3);

  TestFunction psi(3, make_gaussian(VecN(3), 1.0));

  // <P0 delta, psi> = 1 for the newtonian kernel
  double newt = std::abs(pair_delta(laplace, lf, psi, params).value - 1.0);
  rep.details["newtonian"] = newt;

  // translated psi against the kernel quadrature oracle
  TestFunction shifted = translate(psi, VecN{1.0, 0.0, 0.0});
  double oracle = kernel_pair_oracle([](double r) { return 1.0 / (4.0 * kPi * r); }, shifted,
                                     3, 12.0);
  double newt_shift = std::abs(pair_delta(laplace, lf, shifted, params).value - oracle);
  rep.details["newtonian_shifted"] = newt_shift;

  double yuk_oracle = kernel_pair_oracle(
      [](double r) { return std::exp(-r) / (4.0 * kPi * r); }, psi, 3, 12.0);
  double yuk = std::abs(pair_delta(yukawa, yf, psi, params).value - yuk_oracle);
  rep.details["yukawa"] = yuk;

  rep.residual = std::max({newt, newt_shift, yuk});
  rep.pass = rep.residual <= rep.tolerance;
  rep.seconds = elapsed(t0);
  return rep;
}

CheckReport check_approximation(const SymbolSpec& spec, const QuadParams& params) {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "approximation";
  rep.tolerance = 1e-3;

  const int n = spec.dim();
  RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, n);
  TestFunction psi(n, make_gaussian(VecN(n), 1.0));
  TestFunction op_psi = apply_symbol(spec, psi);

  bool radial = spec.frame().b.norm() == 0;
  for (int i = 0; i < n; ++i) radial = radial && spec.frame().w[i] == spec.frame().w[0];

  SphereRule srule = sphere_rule(n, 24);
  const Rule1D& gl = gauss_legendre(10);
  const double pair_tail = 9.0;
  const int pair_panels = 12;

  std::vector<double> errs;
  for (int k : {1, 2, 4, 8}) {
    BumpSpec bump{k};
    QuadParams p = params;
    p.x_extent = radial ? pair_tail : 8.0;
    auto data = [bump](const VecN& xi) { return cplx(bump.fourier_data(xi.norm()), 0.0); };
    P0Evaluator ev(spec, fact, data, 2.0 * bump.k, p);

    cplx acc = 0;
    if (radial) {
      // u_k is radial: evaluate once per radius and average Op(p) psi on
      // the sphere
      for (int panel = 0; panel < pair_panels; ++panel) {
        double lo = pair_tail * panel / pair_panels, hi = pair_tail * (panel + 1) / pair_panels;
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
          double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[q];
          double w = 0.5 * (hi - lo) * gl.weights[q];
          cplx u = ev.eval(VecN::unit(n, 0) * r).value;
          cplx avg = 0;
          for (size_t s = 0; s < srule.nodes.size(); ++s)
            avg += srule.weights[s] * eval(op_psi, srule.nodes[s] * r);
          double rpow = 1;
          for (int i = 0; i < n - 1; ++i) rpow *= r;
          acc += w * rpow * u * avg;
        }
      }
    } else {
      const Rule1D& gh = gauss_hermite(params.hermite_points);
      int count = 1;
      for (int i = 0; i < n; ++i) count *= static_cast<int>(gh.nodes.size());
      const double jac = std::pow(std::sqrt(2.0), n);
      for (int flat = 0; flat < count; ++flat) {
        int rem = flat;
        double w = jac;
        VecN x(n);
        for (int i = 0; i < n; ++i) {
          int idx = rem % static_cast<int>(gh.nodes.size());
          rem /= static_cast<int>(gh.nodes.size());
          w *= gh.weights[idx];
          x[i] = std::sqrt(2.0) * gh.nodes[idx];
        }
        // weight e^{-|x|^2/2} is the psi envelope; evaluate the remaining
        // smooth factor
        cplx val = ev.eval(x).value * eval(op_psi, x) * std::exp(0.5 * x.norm2());
        acc += w * val;
      }
    }
    errs.push_back(std::abs(acc - eval(psi, VecN(n))));
  }

  rep.details["e1"] = errs[0];
  rep.details["e2"] = errs[1];
  rep.details["e4"] = errs[2];
  rep.details["e8"] = errs[3];
  rep.residual = errs[3];
  rep.pass = errs[3] <= errs[0] && errs[3] <= rep.tolerance;
  rep.seconds = elapsed(t0);
  return rep;
}

CheckReport check_partial_fractions() {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "partial_fractions";
  rep.tolerance = 1e-10;

  std::vector<RadialPolynomial> cases;
  cases.push_back(shifted_power(1.0, 1) * shifted_power(2.0, 1));      // simple
  cases.push_back(shifted_power(1.0, 2));                              // double
  cases.push_back(shifted_power(0.0, 2) * shifted_power(1.0, 1));      // zero root
  cases.push_back(shifted_power(0.5, 1) * shifted_power(1.5, 2) *
                  RadialPolynomial({1.0, 0.0, 1.0}) * shifted_power(-2.0, 1));  // mixed

  double worst = 0;
  for (const RadialPolynomial& pi : cases) {
    RadialFactorization fact = factor_radial(pi, 1e-7, 3);
    worst = std::max(worst, verify_partial_fractions(fact));
  }
  rep.residual = worst;
  rep.pass = worst <= rep.tolerance;
  rep.seconds = elapsed(t0);
  return rep;
}

CheckReport check_deriv_paths(uint64_t seed, const QuadParams& params) {
  auto t0 = clock_type::now();
  CheckReport rep;
  rep.name = "deriv_paths";
  rep.tolerance = 1e-8;
  rep.seed = seed;

  double worst = 0;
  {
    SymbolSpec spec = make_power_symbol(2, {4.0, -5.0, 1.0});
    RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, 2);
    for (const TestFunction& psi : seeded_psi_panel(2, 3, seed)) {
      DerivPaths d = e_q_derivs(spec, fact, psi, VecN{0.25, -0.5}, 1, 1, params);
      double sup = 0;
      for (const cplx& c : d.cheb) sup = std::max(sup, std::abs(c));
      worst = std::max(worst, d.max_gap / std::max(sup, 1e-30));
    }
  }
  {
    SymbolSpec spec = make_power_symbol(3, {0.0, 1.0});
    RadialFactorization fact = factor_radial(spec.radial_profile(), 1e-7, 3);
    for (const TestFunction& psi : seeded_psi_panel(3, 3, seed + 1)) {
      DerivPaths d = e_q_derivs(spec, fact, psi, VecN{0.5, 0.25, -0.25}, 0, 2, params);
      double sup = 0;
      for (const cplx& c : d.cheb) sup = std::max(sup, std::abs(c));
      worst = std::max(worst, d.max_gap / std::max(sup, 1e-30));
    }
  }
  rep.residual = worst;
  rep.pass = worst <= rep.tolerance;
  rep.seconds = elapsed(t0);
  return rep;
}

std::vector<CheckReport> run_all_checks(uint64_t seed, const QuadParams& params) {
  std::vector<CheckReport> reports;
  reports.push_back(check_logres());
  reports.push_back(check_bessel(seed));
  reports.push_back(check_partial_fractions());

  std::vector<SymbolSpec> specs = canonical_specs();
  const char* names[] = {"identity.laplacian3", "identity.yukawa3", "identity.biharm_like2",
                         "identity.biharm_like3", "identity.shifted_frame2"};
  for (size_t i = 0; i < specs.size(); ++i) {
    CheckReport r = check_identity(specs[i], seed, params);
    r.name = names[i];
    reports.push_back(r);
  }

  reports.push_back(check_closed_forms(params));

  CheckReport a1 = check_approximation(make_power_symbol(3, {0.0, 1.0}), params);
  a1.name = "approximation.laplacian3";
  reports.push_back(a1);
  CheckReport a2 = check_approximation(make_power_symbol(3, {1.0, 1.0}), params);
  a2.name = "approximation.yukawa3";
  reports.push_back(a2);

  reports.push_back(check_deriv_paths(seed, params));
  return reports;
}

}  // namespace fsol
