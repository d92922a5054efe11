#include "fsol/special.hpp"

#include <cmath>
#include <vector>

#include "fsol/errors.hpp"

namespace fsol {
namespace {

// Ascending-power series of J_nu(x)/x^nu with compensated summation.
// Plain double accumulation is fine only while the alternating terms stay
// small; the caller keeps x below the cancellation threshold.
double series_normalized(double nu, double x) {
  const double x2 = 0.25 * x * x;
  double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  double sum = term, comp = 0.0;
  for (int k = 0; k < 200; ++k) {
    term *= -x2 / (double(k + 1) * (nu + k + 1));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-19 * (1.0 + std::abs(sum))) return sum;
  }
  fail(ErrorCode::NoConvergence, "bessel series did not converge");
}

// Hankel's large-x expansion for integer or half-integer nu, valid here for
// x >= 25 and nu <= 13/2 (optimal truncation well below 1e-14).
double hankel_jnu(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = 1e300;
  for (int k = 1; k <= 40; ++k) {
    term *= (mu - double(2 * k - 1) * (2 * k - 1)) / (8.0 * x * k);
    if (std::abs(term) >= prev) break;  // asymptotic tail turned around
    prev = std::abs(term);
    switch (k & 3) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (std::abs(term) < 1e-18) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller's backward recurrence for integer orders, normalized with
// 1 = J_0 + 2 sum_k J_{2k}. Stable for the mid range where the ascending
// series cancels and the asymptotic expansion has not yet converged.
double miller_jn(int n, double x) {
  int start = n + 16 + int(1.8 * std::pow(x, 0.6));
  double last = 0.0;
  for (int attempt = 0; attempt < 6; ++attempt, start += 8) {
    int m = start + (start & 1);  // even start
    double fp = 0.0, f = 1e-30;
    double norm = 0.0, result = 0.0;
    for (int k = m; k >= 1; --k) {
      double fm = (2.0 * k / x) * f - fp;
      fp = f;
      f = fm;
      if (std::abs(f) > 1e100) {  // rescale to avoid overflow
        f *= 1e-100;
        fp *= 1e-100;
        norm *= 1e-100;
        result *= 1e-100;
      }
      if (((k - 1) & 1) == 0 && k > 1) norm += f;  // accumulates J_{even}
      if (k - 1 == n) result = f;
    }
    norm = 2.0 * norm + f;  // f holds the unnormalized J_0
    double value = result / norm;
    if (attempt > 0 && std::abs(value - last) <= 1e-15 * (1.0 + std::abs(value))) return value;
    last = value;
  }
  return last;
}

// Spherical bessel route for half-integer nu = l + 1/2:
// J_{l+1/2}(x)/x^{l+1/2} = sqrt(2/pi) j_l(x)/x^l with j_l by upward
// recurrence (stable because l < x on this branch).
double half_integer_normalized(int l, double x) {
  double j0 = std::sin(x) / x;
  if (l == 0) return std::sqrt(2.0 / kPi) * j0;
  double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  double jm = j0, j = j1;
  for (int k = 1; k < l; ++k) {
    double jn = (2.0 * k + 1.0) / x * j - jm;
    jm = j;
    j = jn;
  }
  return std::sqrt(2.0 / kPi) * j / std::pow(x, l);
}

}  // namespace

double normalized_bessel(BesselOrder order, double x) {
  if (x < 0) fail(ErrorCode::NegativeArgument, "normalized_bessel needs x >= 0");
  const double nu = order.nu();

  // The ascending series loses eps * I_nu(x) to cancellation; below x = 10
  // that stays under ~1e-12 absolute, which is the accuracy target.
  constexpr double kSeriesLimit = 10.0;
  constexpr double kAsymptoticLimit = 25.0;

  if (x <= kSeriesLimit) return series_normalized(nu, x);

  if (order.half_integer()) {
    if (order.two_nu == -1) return std::sqrt(2.0 / kPi) * std::cos(x);  // nu = -1/2
    return half_integer_normalized((order.two_nu - 1) / 2, x);
  }

  const int n = order.two_nu / 2;
  double jnu = (x < kAsymptoticLimit) ? miller_jn(n, x) : hankel_jnu(nu, x);
  return jnu / std::pow(x, nu);
}

cplx sphere_exp_integral(const MatN& m, const VecN& y) {
  const int n = m.n;
  if (std::abs(m.det()) < 1e-300) fail(ErrorCode::SingularMatrix, "matrix is singular");
  VecN mty = m.tmul(y);
  const double arg = mty.norm();
  if (n == 1) return 2.0 * std::cos(arg);  // S^0 = {-1, +1}
  return std::pow(2.0 * kPi, 0.5 * n) *
         normalized_bessel(BesselOrder::for_dimension(n), arg);
}

}  // namespace fsol
