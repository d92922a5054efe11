#include <doctest.h>

#include <cmath>
#include <random>

#include "fsol/quad.hpp"
#include "fsol/testfn.hpp"

using namespace fsol;

TEST_SUITE_BEGIN("testfn");

namespace {

TestFunction unit_gaussian(int n) { return TestFunction(n, make_gaussian(VecN(n), 1.0)); }

VecN random_point(std::mt19937_64& rng, int n, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  VecN v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST_CASE("gaussian transform is self-dual up to (2 pi)^{n/2}") {
  const int n = 3;
  TestFunction f = unit_gaussian(n);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    VecN xi = random_point(rng, n, 2.5);
    cplx expect = std::pow(2.0 * kPi, 1.5) * std::exp(-0.5 * xi.norm2());
    CHECK(std::abs(eval_fourier(f, xi) - expect) <= 1e-12 * std::abs(expect) + 1e-15);
  }
}

TEST_CASE("modulation translates the transform") {
  const int n = 2;
  VecN w{0.8, -0.4};
  TestFunction f(n, make_gaussian(VecN(n), 1.0, w));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    VecN xi = random_point(rng, n, 2.5);
    cplx expect = 2.0 * kPi * std::exp(-0.5 * (xi - w).norm2());
    CHECK(std::abs(eval_fourier(f, xi) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("polynomial factor: F[x e^{-x^2/2}] = -i sqrt(2 pi) xi e^{-xi^2/2}") {
  TestFunction f(1);
  GaussPolyAtom atom = make_gaussian(VecN{0.0}, 1.0, VecN{0.0}, 0.0);
  atom.poly = MultiPoly::monomial(MIdx{1}, 1.0);
  f.atoms.push_back(atom);
  for (double xi : {-1.5, -0.25, 0.0, 0.7, 2.0}) {
    cplx expect = cplx(0.0, -1.0) * std::sqrt(2.0 * kPi) * xi * std::exp(-0.5 * xi * xi);
    CHECK(std::abs(eval_fourier(f, VecN{xi}) - expect) <= 1e-13);
  }
}

TEST_CASE("inverse transform round trip on atom evaluations") {
  std::mt19937_64 rng(3);
  for (int n : {1, 2, 3}) {
    TestFunction f(n, make_gaussian(random_point(rng, n, 0.8), 1.2, random_point(rng, n, 0.9)));
    f.atoms[0].poly.add_term(MIdx{1}, cplx(0.3, -0.2));
    TestFunction round = inv_fourier(fourier(f));
    for (int i = 0; i < 10; ++i) {
      VecN x = random_point(rng, n, 2.0);
      CHECK(std::abs(eval(round, x) - eval(f, x)) <= 1e-12);
    }
  }
}

TEST_CASE("reflection is an involution and translation matches the definition") {
  std::mt19937_64 rng(4);
  const int n = 2;
  TestFunction f(n, make_gaussian(VecN{0.3, -0.1}, 0.9, VecN{0.5, 0.2}));
  f.atoms[0].poly.add_term(MIdx{1, 1}, cplx(0.4, 0.1));

  TestFunction rr = reflect(reflect(f));
  TestFunction ty = translate(f, VecN{0.7, -0.4});
  for (int i = 0; i < 20; ++i) {
    VecN x = random_point(rng, n, 2.0);
    CHECK(std::abs(eval(rr, x) - eval(f, x)) <= 1e-14);
    CHECK(std::abs(eval(reflect(f), x) - eval(f, -x)) <= 1e-14);
    CHECK(std::abs(eval(ty, x) - eval(f, x - VecN{0.7, -0.4})) <= 1e-13);
  }
}

TEST_CASE("derivative of the gaussian") {
  TestFunction f = unit_gaussian(1);
  TestFunction df = derive(f, MIdx{1});
  for (double x : {-2.0, -0.3, 0.0, 1.1}) {
    CHECK(std::abs(eval(df, VecN{x}) - (-x * std::exp(-0.5 * x * x))) <= 1e-14);
  }
}

TEST_CASE("apply_symbol = -laplacian on the unit gaussian, n = 3") {
  SymbolSpec spec = make_power_symbol(3, {0.0, 1.0});
  TestFunction f = unit_gaussian(3);
  TestFunction g = apply_symbol(spec, f);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    VecN x = random_point(rng, 3, 2.0);
    cplx expect = (3.0 - x.norm2()) * std::exp(-0.5 * x.norm2());
    CHECK(std::abs(eval(g, x) - expect) <= 1e-12);
  }
}

TEST_CASE("plane-wave eigenfunction of |xi|^2 - 1 is annihilated to leading order") {
  // psi = e^{i x.e1} g(x) with a wide gaussian: (-lap - 1) psi = O(width^-1)
  const int n = 2;
  const double s = 40.0;
  SymbolSpec spec = make_power_symbol(n, {-1.0, 1.0});
  TestFunction f(n, make_gaussian(VecN(n), s, VecN{1.0, 0.0}));
  TestFunction g = apply_symbol(spec, f);
  CHECK(std::abs(eval(g, VecN(n))) <= 1e-2);  // leading order cancels
  CHECK(std::abs(eval(g, VecN(n))) / std::abs(eval(f, VecN(n))) <= 2.0 / (s * s) + 1e-8);
}

namespace {

// 4th-order central difference for d^beta f along the axes.
cplx fd_derivative(const TestFunction& f, VecN x, MIdx beta, double h) {
  for (int axis = 0; axis < kMaxDim; ++axis) {
    if (beta[axis] == 0) continue;
    MIdx lower = beta;
    lower[axis] -= 1;
    auto shift = [&](double d) {
      VecN y = x;
      y[axis] += d;
      return fd_derivative(f, y, lower, h);
    };
    return (-shift(2 * h) + 8.0 * shift(h) - 8.0 * shift(-h) + shift(-2 * h)) / (12.0 * h);
  }
  return eval(f, x);
}

}  // namespace

TEST_CASE("apply_symbol agrees with finite-difference p(-i d)") {
  std::mt19937_64 rng(6);
  SymbolSpec spec = make_power_symbol(2, {4.0, -5.0, 1.0});
  TestFunction f(2, make_gaussian(VecN{0.2, -0.3}, 1.1, VecN{0.4, 0.1}));
  f.atoms[0].poly.add_term(MIdx{2, 0}, cplx(0.2, 0.1));
  TestFunction g = apply_symbol(spec, f);

  const MultiPoly p = spec.monomials() * spec.scale();
  for (int i = 0; i < 10; ++i) {
    VecN x = random_point(rng, 2, 1.5);
    cplx fd = 0;
    for (const MultiPoly::Term& t : p.terms()) {
      cplx rot = std::pow(cplx(0.0, -1.0), t.alpha.order());
      fd += t.coeff * rot * fd_derivative(f, x, t.alpha, 0.02);
    }
    cplx exact = eval(g, x);
    CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("fourier exchange identities") {
  std::mt19937_64 rng(7);
  const int n = 2;
  TestFunction f(n, make_gaussian(VecN{0.1, 0.4}, 0.8, VecN{-0.3, 0.6}));
  f.atoms[0].poly.add_term(MIdx{0, 2}, cplx(-0.5, 0.2));

  TestFunction fd = fourier(derive(f, MIdx{1, 0}));
  TestFunction ft = fourier(translate(f, VecN{0.9, -0.2}));
  TestFunction fhat = fourier(f);
  for (int i = 0; i < 20; ++i) {
    VecN xi = random_point(rng, n, 2.0);
    cplx base = eval(fhat, xi);
    CHECK(std::abs(eval(fd, xi) - cplx(0.0, xi[0]) * base) <= 1e-12 * (1.0 + std::abs(base)));
    cplx mod = std::exp(cplx(0.0, -(VecN{0.9, -0.2}).dot(xi)));
    CHECK(std::abs(eval(ft, xi) - mod * base) <= 1e-12 * (1.0 + std::abs(base)));
  }
}

TEST_CASE("parseval in one dimension") {
  TestFunction f(1, make_gaussian(VecN{0.4}, 0.9, VecN{1.3}));
  f.atoms[0].poly.add_term(MIdx{1}, cplx(0.5, -0.3));
  TestFunction fhat = fourier(f);
  cplx left = adaptive_integrate([&](double x) { return std::norm(eval(f, VecN{x})); },
                                 -12.0, 12.0, 1e-11);
  cplx right = adaptive_integrate([&](double xi) { return std::norm(eval(fhat, VecN{xi})); },
                                  -16.0, 16.0, 1e-11);
  CHECK(std::abs(left - right / (2.0 * kPi)) <= 1e-8);
}

TEST_CASE("transform matches a discrete riemann sum, n = 2") {
  TestFunction f(2, make_gaussian(VecN{0.2, -0.1}, 0.8, VecN{0.5, 0.0}));
  f.atoms[0].poly.add_term(MIdx{1, 0}, cplx(0.7, 0.0));
  const int grid = 64;
  const double half = 8.0, step = 2.0 * half / grid;
  for (VecN xi : {VecN{0.4, -0.9}, VecN{1.2, 0.3}}) {
    cplx sum = 0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        VecN x{-half + (i + 0.5) * step, -half + (j + 0.5) * step};
        sum += eval(f, x) * std::exp(cplx(0.0, -x.dot(xi)));
      }
    sum *= step * step;
    CHECK(std::abs(sum - eval_fourier(f, xi)) <= 1e-6);
  }
}

TEST_CASE("degree cap raises") {
  MultiPoly big = MultiPoly::monomial(MIdx{20}, 1.0);
  CHECK_THROWS_AS(big * big, Error);
}

TEST_SUITE_END();
