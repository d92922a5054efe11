#pragma once

#include <vector>

#include "fsol/geometry.hpp"
#include "fsol/multipoly.hpp"
#include "fsol/symbol.hpp"

namespace fsol {

// One atom P(x - a) exp(-|x - a|^2 / (2 s^2)) exp(i w . x). The complex
// amplitude lives in the polynomial part, so sums and transforms stay
// atom-for-atom exact.
struct GaussPolyAtom {
  VecN center;     // a
  double width;    // s > 0, isotropic
  VecN freq;       // w
  MultiPoly poly;  // in (x - a)

  cplx eval(const VecN& x) const;
};

GaussPolyAtom make_gaussian(VecN center, double width, VecN freq = {}, cplx amplitude = 1.0);

// Finite sum of atoms; closed under Fourier transform, derivatives,
// translation, reflection, and Op(p) for polynomial symbols.
struct TestFunction {
  int dim = 0;
  std::vector<GaussPolyAtom> atoms;

  TestFunction() = default;
  explicit TestFunction(int n) : dim(n) {}
  TestFunction(int n, GaussPolyAtom atom) : dim(n), atoms{std::move(atom)} {}

  TestFunction operator+(const TestFunction& o) const;
  TestFunction operator*(cplx s) const;
};

// Forward transform Ff(xi) = int e^{-i x.xi} f(x) dx; a Gaussian atom maps
// to a Gaussian atom with width 1/s, center w, frequency -a and scale
// (2 pi)^{n/2} s^n e^{i a.w}; polynomial factors pass through the Hermite
// recursion g_{k+1} = i (g_k' - s^2 eta g_k).
TestFunction fourier(const TestFunction& f);
// Inverse transform with the (2 pi)^{-n} convention.
TestFunction inv_fourier(const TestFunction& f);

TestFunction translate(const TestFunction& f, const VecN& y);
TestFunction reflect(const TestFunction& f);
TestFunction derive(const TestFunction& f, const MIdx& alpha);

// Op(p) f = F^-1 [p . F f], exact for the polynomial symbols of SymbolSpec.
TestFunction apply_symbol(const SymbolSpec& spec, const TestFunction& f);

cplx eval(const TestFunction& f, const VecN& x);
cplx eval_fourier(const TestFunction& f, const VecN& xi);

}  // namespace fsol
