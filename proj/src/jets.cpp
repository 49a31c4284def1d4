#include "bop/jets.hpp"

namespace bop {

std::string JetFrame::str() const {
  return chart + "/(" + std::to_string(sym.b) + "," + std::to_string(sym.m) + ")/" + convention;
}

void require_same_frame(const JetFrame& a, const JetFrame& b) {
  if (!(a == b)) fail(ErrKind::FrameMismatch, a.str() + " vs " + b.str());
}

JetVec jet_of(const TruncSeries& f, int k, const Scalar& p, const JetFrame& fr) {
  if (f.center() != p) fail(ErrKind::FrameMismatch, "series centered at " + f.center().str() + ", jet at " + p.str());
  if (!f.is_zero() && f.valuation() < 0) fail(ErrKind::PoleAtPoint, "pole at " + p.str());
  JetVec v{k, SVec(k + 1), fr};
  for (int j = 0; j <= k; ++j) v.comps[j] = f.coeff(j) * factorial(j);
  return v;
}

JetVec jet_project(const JetVec& v) {
  if (v.k < 1) fail(ErrKind::Truncation, "cannot project an order-0 jet");
  JetVec r = v;
  r.k -= 1;
  r.comps.pop_back();
  return r;
}

std::pair<JetVec, JetVec> nested_jet(const JetVec& v) {
  if (v.k != 3) fail(ErrKind::Truncation, "nested jet needs order 3");
  return {JetVec{2, {v.comps[0], v.comps[1], v.comps[2]}, v.frame},
          JetVec{2, {v.comps[1], v.comps[2], v.comps[3]}, v.frame}};
}

JetVec add(const JetVec& a, const JetVec& b) {
  require_same_frame(a.frame, b.frame);
  if (a.k != b.k) fail(ErrKind::Truncation, "jet orders differ");
  JetVec r = a;
  for (int j = 0; j <= a.k; ++j) r.comps[j] += b.comps[j];
  return r;
}

namespace {

// g(phi(z)) = f(z) * factor(z); row j holds the coefficients of f^(l) in d^j g / dw^j.
template <class F>
Mat<F> transition(const F& dphi_inv, const F& factor, const F& zero, int k) {
  Mat<F> t(k + 1, k + 1, zero);
  std::vector<F> row(k + 1, zero);
  row[0] = factor;
  for (int j = 0; j <= k; ++j) {
    for (int l = 0; l <= k; ++l) t(j, l) = row[l];
    if (j == k) break;
    std::vector<F> next(k + 1, zero);
    for (int l = 0; l <= j; ++l) {
      next[l] = next[l] + row[l].deriv();
      next[l + 1] = next[l + 1] + row[l];
    }
    for (auto& x : next) x = dphi_inv * x;
    row = std::move(next);
  }
  return t;
}

}  // namespace

Mat<TruncSeries> jet_transition_matrix(const TruncSeries& phi, BundleSymbol L, int k) {
  const Scalar& c = phi.center();
  const int N = phi.order();
  TruncSeries d = phi.deriv();
  if (d.is_zero() || d.valuation() != 0) fail(ErrKind::NonInvertibleChart, "phi' vanishes at " + c.str());
  TruncSeries dinv = d.inverse();
  TruncSeries factor = d.pow(-L.b);
  if (L.m != 0) {
    if (!c.is_zero() || phi.coeff(0) != Scalar(0))
      fail(ErrKind::NonInvertibleChart, "O(S) twist needs the marked point at the center, fixed by phi");
    // phi / z, shifting the valuation down by one.
    std::vector<Scalar> q(phi.coeffs());
    TruncSeries ratio(c, phi.valuation() - 1, q, N - 1);
    factor = factor * ratio.pow(L.m);
  }
  TruncSeries zero(c, 0, {}, N);
  return transition(dinv, factor, zero, k);
}

RMat jet_transition_matrix(const RatFunc& phi, BundleSymbol L, int k) {
  RatFunc d = phi.deriv();
  if (d.is_zero()) fail(ErrKind::NonInvertibleChart, "constant chart map");
  RatFunc factor = d.pow(-L.b);
  if (L.m != 0) {
    if (!phi.eval(0).is_zero()) fail(ErrKind::NonInvertibleChart, "O(S) twist needs phi(0) = 0");
    factor = factor * (phi / RatFunc::z()).pow(L.m);
  }
  return transition(RatFunc(1) / d, factor, RatFunc(), k);
}

TruncSeries det_jet_transition(const TruncSeries& phi) { return det(jet_transition_matrix(phi, kTX, 2)); }

}  // namespace bop
