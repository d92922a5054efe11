#include "fsol/symbol.hpp"

#include <cmath>

#include "fsol/errors.hpp"

namespace fsol {

EllipsoidalFrame validate_frame(EllipsoidalFrame frame) {
  const int n = frame.q.n;
  if (frame.w.n != n || frame.b.n != n)
    fail(ErrorCode::UnsupportedDimension, "frame fields disagree on dimension");
  double dev = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double g = 0;
      for (int k = 0; k < n; ++k) g += frame.q(k, i) * frame.q(k, j);
      dev = std::max(dev, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  if (dev > 1e-12)
    fail(ErrorCode::NonOrthogonal, "Q is not orthogonal: max |Q^T Q - I| = " + std::to_string(dev));
  for (int i = 0; i < n; ++i)
    if (!(frame.w[i] > 0))
      fail(ErrorCode::NonPositiveWeight, "weights must be positive");
  frame.det_q = std::abs(frame.q.det());
  return frame;
}

SymbolSpec::SymbolSpec(int dim, std::vector<cplx> coeffs, EllipsoidalFrame frame)
    : n_(dim), coeffs_(std::move(coeffs)), frame_(validate_frame(std::move(frame))) {
  if (frame_.dim() != n_) fail(ErrorCode::UnsupportedDimension, "frame dimension mismatch");
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.size() < 2) fail(ErrorCode::InvalidConfig, "symbol needs power degree d >= 1");
  scale_ = coeffs_.back();
  if (scale_ == 0.0) fail(ErrorCode::InvalidConfig, "leading coefficient must be nonzero");
  for (cplx& c : coeffs_) c /= scale_;

  // x0 = -1/2 Q^T W^-1 Q b and kappa = c - 1/4 b . Q^T W^-1 Q b
  VecN qb = frame_.q.mul(frame_.b);
  VecN winv_qb(n_);
  for (int i = 0; i < n_; ++i) winv_qb[i] = qb[i] / frame_.w[i];
  VecN qtwinv_qb = frame_.q.tmul(winv_qb);
  x0_ = qtwinv_qb * -0.5;
  kappa_ = frame_.c - 0.25 * frame_.b.dot(qtwinv_qb);

  double d = 1.0;
  for (int i = 0; i < n_; ++i) d /= std::sqrt(frame_.w[i]);
  root_det_w_inv_ = std::abs(d);
}

cplx SymbolSpec::eval(const VecN& xi) const {
  for (int i = 0; i < n_; ++i)
    if (!std::isfinite(xi[i])) fail(ErrorCode::InvalidConfig, "non-finite evaluation point");
  VecN qxi = frame_.q.mul(xi);
  double quad = 0;
  for (int i = 0; i < n_; ++i) quad += frame_.w[i] * qxi[i] * qxi[i];
  cplx base = quad + frame_.b.dot(xi) + frame_.c;
  cplx acc = 0;
  for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j)
    acc = acc * base + coeffs_[j];
  return acc;
}

VecN SymbolSpec::chart_direction(const VecN& omega) const {
  VecN scaled(n_);
  for (int i = 0; i < n_; ++i) scaled[i] = omega[i] / std::sqrt(frame_.w[i]);
  return frame_.q.tmul(scaled);
}

VecN SymbolSpec::chart(double r, const VecN& omega) const {
  if (std::abs(omega.norm() - 1.0) > 1e-12)
    fail(ErrorCode::NonUnitDirection, "omega must be a unit vector");
  if (r < 0) fail(ErrorCode::InvalidConfig, "radius must be nonnegative");
  return chart_direction(omega) * r + x0_;
}

RadialPolynomial SymbolSpec::radial_profile() const {
  // pi(r) = sum_j c_j (r^2 + kappa)^j
  RadialPolynomial base({kappa_, 0.0, 1.0});
  RadialPolynomial acc = RadialPolynomial::constant(coeffs_.back());
  for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j)
    acc = acc * base + RadialPolynomial::constant(coeffs_[j]);
  return acc;
}

double SymbolSpec::jacobian_density(double r) const {
  if (r < 0) fail(ErrorCode::InvalidConfig, "radius must be nonnegative");
  double p = root_det_w_inv_;
  for (int i = 0; i < n_ - 1; ++i) p *= r;
  return p;
}

MultiPoly SymbolSpec::monomials() const {
  // quadratic base as a polynomial in xi
  MultiPoly base = MultiPoly::constant(frame_.c);
  for (int k = 0; k < n_; ++k) {
    MultiPoly row;
    for (int i = 0; i < n_; ++i) {
      if (frame_.q(k, i) != 0.0) row = row + MultiPoly::variable(i) * cplx(frame_.q(k, i));
    }
    base = base + row * row * cplx(frame_.w[k]);
  }
  for (int i = 0; i < n_; ++i) {
    if (frame_.b[i] != 0.0) base = base + MultiPoly::variable(i) * cplx(frame_.b[i]);
  }
  MultiPoly acc = MultiPoly::constant(coeffs_.back());
  for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j)
    acc = acc * base + MultiPoly::constant(coeffs_[j]);
  return acc;
}

SymbolSpec make_power_symbol(int dim, std::vector<cplx> coeffs) {
  EllipsoidalFrame f;
  f.q = MatN::identity(dim);
  f.w = VecN(dim);
  for (int i = 0; i < dim; ++i) f.w[i] = 1.0;
  f.b = VecN(dim);
  f.c = 0.0;
  return SymbolSpec(dim, std::move(coeffs), std::move(f));
}

}  // namespace fsol
