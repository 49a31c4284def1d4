#include "bop/sl2.hpp"

namespace bop {

Sl2Elt::Sl2Elt(SMat m) : m_(std::move(m)) {
  if (m_.rows() != 2 || m_.cols() != 2) fail(ErrKind::NonTraceless, "sl2 element must be 2x2");
  if (!(m_(0, 0) + m_(1, 1)).is_zero()) fail(ErrKind::NonTraceless, "trace " + (m_(0, 0) + m_(1, 1)).str());
}

Sl2Elt sl2_bracket(const Sl2Elt& a, const Sl2Elt& b) { return Sl2Elt(a.m() * b.m() - b.m() * a.m()); }

Poly sl2_to_vf(const Sl2Elt& x) {
  const SMat& m = x.m();
  return Poly(std::vector<Scalar>{m(0, 1), m(0, 0) - m(1, 1), -m(1, 0)});
}

Poly sl2_to_vf(const SMat& m) { return sl2_to_vf(Sl2Elt(m)); }

Poly vf_bracket(const Poly& u, const Poly& v) { return u * v.deriv() - v * u.deriv(); }

TruncSeries vf_bracket(const TruncSeries& u, const TruncSeries& v) { return u * v.deriv() - v * u.deriv(); }

SVec vf_coords(const Poly& p) {
  if (p.deg() > 2) fail(ErrKind::ConditionViolation, "field of degree > 2 is not global on P^1");
  return {p.coeff(0), p.coeff(1), p.coeff(2)};
}

Poly vf_from_coords(const SVec& c) { return Poly(c); }

SMat vf_ad(const Poly& u) {
  SMat a(3, 3, Scalar(0));
  for (int k = 0; k < 3; ++k) a.set_col(k, vf_coords(vf_bracket(u, Poly::monomial(Scalar(1), k))));
  return a;
}

SMat killing_matrix() {
  SMat k(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k(i, j) = trace(vf_ad(Poly::monomial(Scalar(1), i)) * vf_ad(Poly::monomial(Scalar(1), j)));
  return k;
}

MoebiusMap::MoebiusMap(SMat m) : m_(std::move(m)) {
  if (det(m_).is_zero()) fail(ErrKind::NonInvertibleChart, "Moebius matrix is singular");
  Scalar s = m_(1, 0).is_zero() ? m_(1, 1) : m_(1, 0);
  m_ = (Scalar(1) / s) * m_;
}

MoebiusMap MoebiusMap::identity() { return MoebiusMap(SMat::identity(2)); }

RatFunc MoebiusMap::as_ratfunc() const {
  Poly n(std::vector<Scalar>{m_(0, 1), m_(0, 0)});
  Poly d(std::vector<Scalar>{m_(1, 1), m_(1, 0)});
  return RatFunc(n, d);
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const { return MoebiusMap(m_ * o.m_); }

MoebiusMap MoebiusMap::inverse() const {
  return MoebiusMap(SMat{{m_(1, 1), -m_(0, 1)}, {-m_(1, 0), m_(0, 0)}});
}

std::optional<MoebiusMap> is_moebius(const RatFunc& f) {
  if (f.num().deg() > 1 || f.den().deg() > 1) return std::nullopt;
  SMat m{{f.num().coeff(1), f.num().coeff(0)}, {f.den().coeff(1), f.den().coeff(0)}};
  if (det(m).is_zero()) return std::nullopt;
  return MoebiusMap(m);
}

}  // namespace bop
