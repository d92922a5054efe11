#include <doctest.h>

#include <cmath>
#include <random>

#include "fsol/symbol.hpp"

using namespace fsol;

TEST_SUITE_BEGIN("symbol");

namespace {

EllipsoidalFrame frame2(MatN q, VecN w, VecN b = VecN(2), cplx c = 0.0) {
  EllipsoidalFrame f;
  f.q = q;
  f.w = w;
  f.b = b;
  f.c = c;
  return f;
}

VecN random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  for (;;) {
    VecN v(n);
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    double norm = v.norm();
    if (norm > 1e-3) return v * (1.0 / norm);
  }
}

}  // namespace

TEST_CASE("frame validation") {
  CHECK_NOTHROW(validate_frame(frame2(MatN::identity(2), VecN{1.0, 1.0})));
  CHECK_NOTHROW(validate_frame(frame2(MatN::rotation2(kPi / 4.0), VecN{1.0, 4.0})));

  MatN shear(2);
  shear(0, 0) = 1;
  shear(0, 1) = 1;
  shear(1, 1) = 1;
  CHECK_THROWS_WITH_AS(validate_frame(frame2(shear, VecN{1.0, 1.0})),
                       doctest::Contains("orthogonal"), Error);
  CHECK_THROWS_AS(validate_frame(frame2(MatN::identity(2), VecN{1.0, -1.0})), Error);

  EllipsoidalFrame f = validate_frame(frame2(MatN::rotation2(0.3), VecN{2.0, 3.0}));
  CHECK(f.det_q == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eval at simple points") {
  SymbolSpec helm = make_power_symbol(3, {-1.0, 1.0});  // |xi|^2 - 1
  CHECK(std::abs(helm.eval(VecN{1.0, 0.0, 0.0})) <= 1e-15);

  SymbolSpec quartic = make_power_symbol(2, {0.0, 0.0, 1.0});  // |xi|^4
  CHECK(quartic.eval(VecN{1.0, 1.0}) == doctest::Approx(4.0));

  SymbolSpec yukawa = make_power_symbol(3, {1.0, 1.0});
  CHECK(yukawa.eval(VecN(3)) == doctest::Approx(1.0));
}

TEST_CASE("chart maps (0, omega) to the common center") {
  EllipsoidalFrame f = frame2(MatN::rotation2(0.7), VecN{1.0, 2.0}, VecN{0.4, -0.3}, 0.0);
  SymbolSpec spec(2, {0.0, 1.0}, f);
  VecN a = spec.chart(0.0, VecN{1.0, 0.0});
  VecN b = spec.chart(0.0, VecN{0.0, 1.0});
  CHECK((a - spec.center()).norm() <= 1e-15);
  CHECK((b - spec.center()).norm() <= 1e-15);

  SymbolSpec iso = make_power_symbol(3, {0.0, 1.0});
  VecN p = iso.chart(2.0, VecN{1.0, 0.0, 0.0});
  CHECK(p[0] == doctest::Approx(2.0));
  CHECK(std::abs(p[1]) + std::abs(p[2]) <= 1e-15);

  EllipsoidalFrame f1;
  f1.q = MatN::identity(1);
  f1.w = VecN{4.0};
  f1.b = VecN{0.0};
  SymbolSpec one(1, {0.0, 1.0}, f1);
  CHECK(one.chart(1.0, VecN{1.0})[0] == doctest::Approx(0.5));
}

TEST_CASE("chart rejects non-unit directions") {
  SymbolSpec spec = make_power_symbol(2, {0.0, 1.0});
  CHECK_THROWS_AS(spec.chart(1.0, VecN{0.5, 0.0}), Error);
}

TEST_CASE("radial profile expansion") {
  SymbolSpec sq = make_power_symbol(3, {0.0, 1.0});
  RadialPolynomial pi = sq.radial_profile();
  REQUIRE(pi.degree() == 2);
  CHECK(std::abs(pi.coeffs[0]) <= 1e-15);
  CHECK(std::abs(pi.coeffs[2] - 1.0) <= 1e-15);

  SymbolSpec biharm = make_power_symbol(2, {4.0, -5.0, 1.0});
  RadialPolynomial pi2 = biharm.radial_profile();
  REQUIRE(pi2.degree() == 4);
  CHECK(std::abs(pi2.coeffs[0] - 4.0) <= 1e-14);
  CHECK(std::abs(pi2.coeffs[2] + 5.0) <= 1e-14);
  CHECK(std::abs(pi2.coeffs[4] - 1.0) <= 1e-14);

  // kappa = -1 via the constant: pi(r) = r^2 - 1
  EllipsoidalFrame f = frame2(MatN::identity(2), VecN{1.0, 1.0}, VecN(2), -1.0);
  SymbolSpec shift(2, {0.0, 1.0}, f);
  RadialPolynomial pi3 = shift.radial_profile();
  CHECK(std::abs(pi3.coeffs[0] + 1.0) <= 1e-15);
}

TEST_CASE("jacobian density") {
  SymbolSpec s3 = make_power_symbol(3, {0.0, 1.0});
  CHECK(s3.jacobian_density(2.0) == doctest::Approx(4.0));

  EllipsoidalFrame f = frame2(MatN::identity(2), VecN{4.0, 4.0});
  SymbolSpec s2(2, {0.0, 1.0}, f);
  CHECK(s2.jacobian_density(1.0) == doctest::Approx(0.25));

  EllipsoidalFrame f1;
  f1.q = MatN::identity(1);
  f1.w = VecN{9.0};
  f1.b = VecN{0.0};
  SymbolSpec s1(1, {0.0, 1.0}, f1);
  CHECK(s1.jacobian_density(7.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("symbol pulled back through the chart is the radial profile") {
  std::mt19937_64 rng(0xF0DD);
  std::uniform_real_distribution<double> ur(0.0, 6.0);

  EllipsoidalFrame f;
  f.q = MatN::rotation2(kPi / 6.0);
  f.w = VecN{1.0, 2.0};
  f.b = VecN{0.3, -0.2};
  f.c = cplx(0.1, 0.05);
  SymbolSpec spec(2, {cplx(0.5, 0.0), cplx(-1.0, 0.2), 1.0}, f);
  RadialPolynomial pi = spec.radial_profile();

  for (int i = 0; i < 1000; ++i) {
    double r = ur(rng);
    VecN omega = random_unit(rng, 2);
    cplx lhs = spec.eval(spec.chart(r, omega));
    cplx rhs = pi.eval(r);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("chart offset length is r |W^{-1/2} omega|") {
  std::mt19937_64 rng(7);
  EllipsoidalFrame f;
  f.q = MatN::rotation2(1.1);
  f.w = VecN{2.0, 5.0};
  f.b = VecN{1.0, 0.5};
  SymbolSpec spec(2, {0.0, 1.0}, f);
  for (int i = 0; i < 50; ++i) {
    VecN omega = random_unit(rng, 2);
    double r = 0.1 + i * 0.07;
    VecN scaled(2);
    for (int j = 0; j < 2; ++j) scaled[j] = omega[j] / std::sqrt(f.w[j]);
    CHECK((spec.chart(r, omega) - spec.center()).norm() ==
          doctest::Approx(r * scaled.norm()).epsilon(1e-13));
  }
}

TEST_CASE("leading coefficient is divided out and recorded") {
  SymbolSpec scaled = make_power_symbol(2, {8.0, -10.0, 2.0});
  CHECK(scaled.scale() == cplx(2.0));
  CHECK(std::abs(scaled.coeffs().back() - 1.0) <= 1e-15);
  CHECK(std::abs(scaled.coeffs()[0] - 4.0) <= 1e-15);
}

TEST_SUITE_END();
