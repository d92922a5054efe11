#include "fsol/testfn.hpp"

#include <cmath>

#include "fsol/errors.hpp"

namespace fsol {

cplx GaussPolyAtom::eval(const VecN& x) const {
  VecN u = x - center;
  double expo = -u.norm2() / (2.0 * width * width);
  cplx phase(0.0, freq.dot(x));
  return poly.eval(u) * std::exp(cplx(expo, 0.0) + phase);
}

GaussPolyAtom make_gaussian(VecN center, double width, VecN freq, cplx amplitude) {
  if (!(width > 0)) fail(ErrorCode::InvalidConfig, "gaussian width must be positive");
  GaussPolyAtom a;
  const int n = center.n;
  a.center = center;
  a.width = width;
  a.freq = freq.n == n ? freq : VecN(n);
  a.poly = MultiPoly::constant(amplitude);
  return a;
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
  TestFunction r = *this;
  if (r.dim == 0) r.dim = o.dim;
  r.atoms.insert(r.atoms.end(), o.atoms.begin(), o.atoms.end());
  return r;
}

TestFunction TestFunction::operator*(cplx s) const {
  TestFunction r = *this;
  for (GaussPolyAtom& a : r.atoms) a.poly = a.poly * s;
  return r;
}

namespace {

// Lift a 1D polynomial (ascending coefficients in t) to a MultiPoly in the
// variable x_axis.
MultiPoly lift_axis(const std::vector<cplx>& c, int axis) {
  MultiPoly p;
  for (size_t t = 0; t < c.size(); ++t) {
    MIdx m;
    m[axis] = static_cast<int>(t);
    p.add_term(m, c[t]);
  }
  return p;
}

GaussPolyAtom fourier_atom(const GaussPolyAtom& a, int n) {
  const double s = a.width;
  const double s2 = s * s;

  int maxdeg = 0;
  for (const MultiPoly::Term& t : a.poly.terms())
    for (int i = 0; i < kMaxDim; ++i) maxdeg = std::max(maxdeg, t.alpha[i]);

  // g_0 = 1, g_{k+1}(eta) = i (g_k' - s^2 eta g_k); these carry the
  // polynomial factors through the transform.
  std::vector<std::vector<cplx>> g(maxdeg + 1);
  g[0] = {cplx(1.0)};
  for (int k = 0; k < maxdeg; ++k) {
    const std::vector<cplx>& cur = g[k];
    std::vector<cplx> next(cur.size() + 1, cplx(0));
    for (size_t t = 1; t < cur.size(); ++t) next[t - 1] += cplx(0, 1) * double(t) * cur[t];
    for (size_t t = 0; t < cur.size(); ++t) next[t + 1] -= cplx(0, 1) * s2 * cur[t];
    g[k + 1] = std::move(next);
  }

  GaussPolyAtom out;
  out.center = a.freq;
  out.width = 1.0 / s;
  out.freq = -a.center;
  const cplx scale = std::pow(2.0 * kPi, 0.5 * n) * std::pow(s, n) *
                     std::exp(cplx(0.0, a.center.dot(a.freq)));
  MultiPoly q;
  for (const MultiPoly::Term& t : a.poly.terms()) {
    MultiPoly f = MultiPoly::constant(t.coeff * scale);
    for (int i = 0; i < n; ++i)
      if (t.alpha[i] > 0) f = f * lift_axis(g[t.alpha[i]], i);
    q = q + f;
  }
  out.poly = q;
  return out;
}

}  // namespace

TestFunction fourier(const TestFunction& f) {
  TestFunction r(f.dim);
  r.atoms.reserve(f.atoms.size());
  for (const GaussPolyAtom& a : f.atoms) r.atoms.push_back(fourier_atom(a, f.dim));
  return r;
}

TestFunction reflect(const TestFunction& f) {
  TestFunction r(f.dim);
  r.atoms.reserve(f.atoms.size());
  for (const GaussPolyAtom& a : f.atoms) {
    GaussPolyAtom b;
    b.center = -a.center;
    b.width = a.width;
    b.freq = -a.freq;
    MultiPoly p;
    for (const MultiPoly::Term& t : a.poly.terms())
      p.add_term(t.alpha, t.alpha.order() % 2 == 0 ? t.coeff : -t.coeff);
    b.poly = p;
    r.atoms.push_back(std::move(b));
  }
  return r;
}

TestFunction inv_fourier(const TestFunction& f) {
  // F^-1 = (2 pi)^{-n} A F
  TestFunction r = reflect(fourier(f));
  const double scale = std::pow(2.0 * kPi, -f.dim);
  return r * scale;
}

TestFunction translate(const TestFunction& f, const VecN& y) {
  TestFunction r(f.dim);
  r.atoms.reserve(f.atoms.size());
  for (const GaussPolyAtom& a : f.atoms) {
    GaussPolyAtom b = a;
    b.center = a.center + y;
    b.poly = a.poly * std::exp(cplx(0.0, -a.freq.dot(y)));
    r.atoms.push_back(std::move(b));
  }
  return r;
}

TestFunction derive(const TestFunction& f, const MIdx& alpha) {
  TestFunction r = f;
  for (int axis = 0; axis < kMaxDim; ++axis) {
    for (int rep = 0; rep < alpha[axis]; ++rep) {
      for (GaussPolyAtom& a : r.atoms) {
        // d_j [P g e^{iwx}] = [P_j - (x_j - a_j)/s^2 P + i w_j P] g e^{iwx}
        MultiPoly p = a.poly.derivative(axis);
        p = p + MultiPoly::variable(axis) * a.poly * cplx(-1.0 / (a.width * a.width));
        p = p + a.poly * cplx(0.0, a.freq[axis]);
        a.poly = p;
      }
    }
  }
  return r;
}

TestFunction apply_symbol(const SymbolSpec& spec, const TestFunction& f) {
  if (spec.dim() != f.dim) fail(ErrorCode::UnsupportedDimension, "dimension mismatch");
  const MultiPoly p = spec.monomials() * spec.scale();
  TestFunction hat = fourier(f);
  for (GaussPolyAtom& a : hat.atoms) {
    // atom polynomial lives in eta = xi - center, so express p there
    a.poly = a.poly * p.shift(a.center);
  }
  return inv_fourier(hat);
}

cplx eval(const TestFunction& f, const VecN& x) {
  cplx s = 0;
  for (const GaussPolyAtom& a : f.atoms) s += a.eval(x);
  return s;
}

cplx eval_fourier(const TestFunction& f, const VecN& xi) {
  return eval(fourier(f), xi);
}

}  // namespace fsol
