#include "fsol/rootsys.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "fsol/errors.hpp"

namespace fsol {
namespace {

constexpr double kClusterTol = 1e-7;

// Newton polish on the derivative matching the cluster multiplicity: a
// multiplicity-m root of pi is a simple root of pi^(m-1).
cplx polish(const RadialPolynomial& pi, cplx x0, int multiplicity) {
  RadialPolynomial f = pi.derivative(multiplicity - 1);
  RadialPolynomial df = f.derivative();
  cplx x = x0;
  for (int it = 0; it < 60; ++it) {
    cplx fv = f.eval(x);
    cplx dv = df.eval(x);
    if (std::abs(dv) == 0.0) break;
    cplx dx = fv / dv;
    x -= dx;
    if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) break;
  }
  if (std::abs(x - x0) > 0.1 * (1.0 + std::abs(x0))) return x0;  // polish ran away
  return x;
}

double dist_to_halfline(cplx z) {
  // distance from z to [0, infinity) on the real axis
  return z.real() >= 0 ? std::abs(z.imag()) : std::abs(z);
}

}  // namespace

std::vector<ClusteredRoot> find_roots(const RadialPolynomial& pi) {
  const int d = pi.degree();
  if (d < 1) fail(ErrorCode::InvalidConfig, "root finding needs degree >= 1");
  const cplx lead = pi.coeffs.back();
  if (std::abs(lead) == 0.0) fail(ErrorCode::InvalidConfig, "leading coefficient is zero");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -pi.coeffs[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
  if (es.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "eigenvalue iteration failed");

  std::vector<cplx> raw(d);
  for (int i = 0; i < d; ++i) raw[i] = es.eigenvalues()(i);

  // Greedy clustering with relative tolerance.
  struct Cluster {
    cplx sum;
    int count;
    cplx mean() const { return sum / double(count); }
  };
  std::vector<Cluster> clusters;
  for (cplx z : raw) {
    Cluster* hit = nullptr;
    for (Cluster& c : clusters) {
      if (std::abs(z - c.mean()) <= kClusterTol * (1.0 + std::abs(z))) {
        hit = &c;
        break;
      }
    }
    if (hit) {
      hit->sum += z;
      hit->count += 1;
    } else {
      clusters.push_back({z, 1});
    }
  }

  std::vector<ClusteredRoot> out;
  const double scale = pi.sup_coeff();
  for (const Cluster& c : clusters) {
    cplx root = polish(pi, c.mean(), c.count);
    double bound = 1e-9 * scale * std::pow(std::max(1.0, std::abs(root)), d);
    for (int l = 0; l < c.count; ++l) {
      if (std::abs(pi.derivative(l).eval(root)) > bound * std::pow(10.0, l))
        fail(ErrorCode::NoConvergence, "root residual above tolerance");
    }
    out.push_back({root, c.count});
  }
  std::sort(out.begin(), out.end(), [](const ClusteredRoot& a, const ClusteredRoot& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

RadialFactorization factor_radial(const RadialPolynomial& pi, double tol, int dim) {
  RadialFactorization fact;
  fact.profile = pi;
  std::vector<ClusteredRoot> all = find_roots(pi);

  std::vector<ClusteredRoot> others;
  std::vector<RadialRoot> snapped;
  for (const ClusteredRoot& c : all) {
    const bool real_nonneg = std::abs(c.value.imag()) <= tol * (1.0 + std::abs(c.value)) &&
                             c.value.real() >= -tol;
    if (real_nonneg) {
      RadialRoot r;
      r.r = std::max(0.0, c.value.real());
      r.multiplicity = c.multiplicity;
      snapped.push_back(r);
    } else {
      others.push_back(c);
    }
  }
  // merge snapped roots that collapsed onto the same point (e.g. +/- eps -> 0)
  std::sort(snapped.begin(), snapped.end(),
            [](const RadialRoot& a, const RadialRoot& b) { return a.r < b.r; });
  for (const RadialRoot& r : snapped) {
    if (!fact.roots.empty() && std::abs(fact.roots.back().r - r.r) <= tol * (1.0 + r.r))
      fact.roots.back().multiplicity += r.multiplicity;
    else
      fact.roots.push_back(r);
  }

  // q0 and the deflated remainder
  fact.q0 = RadialPolynomial::constant(1.0);
  RadialPolynomial q = pi;
  for (const RadialRoot& r : fact.roots) {
    fact.max_multiplicity = std::max(fact.max_multiplicity, r.multiplicity);
    for (int i = 0; i < r.multiplicity; ++i) {
      fact.q0 = fact.q0 * RadialPolynomial({-r.r, 1.0});
      q = q.deflate(r.r);
    }
    if (r.r == 0.0 && r.multiplicity >= dim) fact.origin_order_warning = true;
  }
  fact.deflated = q;

  if (fact.q0.degree() + fact.deflated.degree() != pi.degree())
    fail(ErrorCode::NoConvergence, "degree bookkeeping failed in factorization");

  // Certified lower bound for |q| on [0, inf): |lead| times the product of
  // root distances to the half-line.
  double margin = std::abs(q.coeffs.back());
  for (const ClusteredRoot& c : others)
    for (int i = 0; i < c.multiplicity; ++i) margin *= dist_to_halfline(c.value);
  fact.q_lower_margin = margin;
  if (!(margin > 1e-6 * q.sup_coeff()))
    fail(ErrorCode::NotLowerBounded,
         "deflated factor q is not bounded away from zero on [0, inf)");

  partial_fractions(fact);
  return fact;
}

void partial_fractions(RadialFactorization& fact) {
  for (size_t j = 0; j < fact.roots.size(); ++j) {
    RadialRoot& root = fact.roots[j];
    const int mj = root.multiplicity;
    // Taylor series of prod_{i != j} (r - r_i)^{-m_i} at r_j up to delta^{mj-1}.
    std::vector<cplx> series(mj, cplx(0));
    series[0] = 1.0;
    for (size_t i = 0; i < fact.roots.size(); ++i) {
      if (i == j) continue;
      const cplx d = root.r - fact.roots[i].r;
      const int mi = fact.roots[i].multiplicity;
      // (d + delta)^{-mi} = d^{-mi} sum_t binom(-mi, t) (delta/d)^t
      std::vector<cplx> f(mj, cplx(0));
      cplx coef = std::pow(d, -mi);
      for (int t = 0; t < mj; ++t) {
        f[t] = coef;
        coef *= -cplx(mi + t) / (cplx(t + 1) * d);
      }
      std::vector<cplx> prod(mj, cplx(0));
      for (int s = 0; s < mj; ++s)
        for (int t = 0; s + t < mj; ++t) prod[s + t] += series[s] * f[t];
      series = std::move(prod);
    }
    root.pf.assign(mj, cplx(0));
    for (int k = 1; k <= mj; ++k) root.pf[k - 1] = series[mj - k];
  }
}

double verify_partial_fractions(const RadialFactorization& fact) {
  if (fact.roots.empty()) return 0.0;  // empty sum vs 1/1, exact by convention
  double rmax = 0;
  for (const RadialRoot& r : fact.roots) rmax = std::max(rmax, r.r);
  const double hi = 2.0 * rmax + 2.0;

  double worst = 0;
  int taken = 0;
  for (int i = 0; taken < 128 && i < 512; ++i) {
    double r = hi * (i + 0.5) / 512.0;
    bool clear = true;
    for (const RadialRoot& root : fact.roots) clear = clear && std::abs(r - root.r) >= 0.1;
    if (!clear) continue;
    ++taken;
    cplx recon = 0;
    for (const RadialRoot& root : fact.roots)
      for (int k = 1; k <= root.multiplicity; ++k)
        recon += root.pf[k - 1] * std::pow(cplx(r - root.r), -k);
    cplx exact = 1.0 / fact.q0.eval(r);
    worst = std::max(worst, std::abs(recon - exact) / std::abs(exact));
  }
  return worst;
}

}  // namespace fsol
