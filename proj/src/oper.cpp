#include "bop/oper.hpp"

namespace bop {

namespace {

const std::vector<Scalar>& test_points() {
  static const std::vector<Scalar> pts{Scalar::frac(1, 3),   Scalar::frac(-2, 7), Scalar::frac(5, 11),
                                       Scalar::frac(3, 13),  Scalar::frac(-5, 17), Scalar::frac(7, 19),
                                       Scalar::frac(-11, 23)};
  return pts;
}

bool regular_at(const RMat& A, const Scalar& p) {
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (A(i, j).has_pole_at(p)) return false;
  return true;
}

}  // namespace

Mat<Poly> psi_matrix(int k) {
  Mat<Poly> m(k + 1, 3, Poly());
  for (int j = 0; j < 3; ++j) {
    Poly f = Poly::monomial(1, j);
    for (int i = 0; i <= k; ++i, f = f.deriv()) m(i, j) = f;
  }
  return m;
}

RMat G() { return psi_matrix(2).map([](const Poly& p) { return RatFunc(p); }); }

ThirdOrderOp delta0() { return {RatFunc(), RatFunc(), RatFunc()}; }

RatFunc apply_op(const ThirdOrderOp& op, const RatFunc& f) {
  RatFunc f1 = f.deriv(), f2 = f1.deriv();
  return f2.deriv() + op.a2 * f2 + op.a1 * f1 + op.a0 * f;
}

TruncSeries apply_op(const ThirdOrderOp& op, const TruncSeries& f) {
  const Scalar& c = f.center();
  int N = f.order();
  TruncSeries f1 = f.deriv(), f2 = f1.deriv();
  return f2.deriv() + series_expand(op.a2, c, N) * f2 + series_expand(op.a1, c, N) * f1 +
         series_expand(op.a0, c, N) * f;
}

Scalar apply_op(const ThirdOrderOp& op, const JetVec& v, const Scalar& p) {
  if (v.k != 3) fail(ErrKind::Truncation, "operator needs a 3-jet");
  return v.comps[3] + op.a2.eval(p) * v.comps[2] + op.a1.eval(p) * v.comps[1] + op.a0.eval(p) * v.comps[0];
}

std::vector<SVec> op_series_kernel(const ThirdOrderOp& op, const Scalar& p, int N) {
  const int M = N + 3;
  SMat m(N + 1, M + 1, Scalar(0));
  for (int k = 0; k <= M; ++k) {
    TruncSeries mono(p, k, {Scalar(1)}, M + 3);
    TruncSeries r = apply_op(op, mono);
    for (int e = 0; e <= N; ++e) m(e, k) = r.coeff(e);
  }
  return kernel(m);
}

Connection varpi(const ThirdOrderOp& op) {
  RMat A{{0, -1, 0}, {0, 0, -1}, {op.a0, op.a1, op.a2}};
  return {A, JetFrame{}};
}

Connection D0() { return varpi(delta0()); }

std::optional<ThirdOrderOp> companion_op(const Connection& D) {
  const RMat& A = D.A;
  if (A(0, 0).is_zero() && A(0, 1) == RatFunc(-1) && A(0, 2).is_zero() && A(1, 0).is_zero() && A(1, 1).is_zero() &&
      A(1, 2) == RatFunc(-1))
    return ThirdOrderOp{A(2, 2), A(2, 1), A(2, 0)};
  return std::nullopt;
}

RatFunc sff(const RMat& A, int level) {
  if (level == 1) return -A(1, 2);
  if (level == 2) {
    if (!A(0, 2).is_zero()) fail(ErrKind::NotNested, "D(F1) is not contained in F2 (x) K");
    return -A(0, 1);
  }
  fail(ErrKind::Usage, "sff level must be 1 or 2");
}

RatFunc sff(const Connection& D, int level) { return sff(D.A, level); }

OperConditions oper_conditions(const Connection& D) {
  OperConditions c;
  c.c1 = D.A(0, 2).is_zero();
  c.c2 = sff(D, 1) == RatFunc(1);
  c.c3 = c.c1 && sff(D, 2) == RatFunc(1);
  return c;
}

BilinearTwisted killing_form_B0() {
  RMat gi = inverse(G());
  return {gi.transpose() * to_rat(killing_matrix()) * gi, 0};
}

RMat flatness_defect(const RMat& B, const RMat& A) { return deriv(B) - A.transpose() * B - B * A; }

RMat gauge(const RMat& A, const RMat& g) {
  RMat gi = inverse(g);
  return gi * A * g + gi * deriv(g);
}

bool f_d_is_identity(const Connection& D, int N) {
  int used = 0;
  for (const Scalar& p : test_points()) {
    if (used == 3) break;
    if (!regular_at(D.A, p)) continue;
    ++used;
    for (int j = 0; j < 3; ++j) {
      auto v = solve_flat_sections(D.A, p, filt::e(j), N + 2);
      TruncSeries d1 = v[0].deriv(), d2 = d1.deriv();
      for (int e = 0; e <= N; ++e)
        if (v[1].coeff(e) != d1.coeff(e) || v[2].coeff(e) != d2.coeff(e)) return false;
    }
  }
  if (used < 3) fail(ErrKind::PoleAtBasepoint, "no regular test points");
  return true;
}

bool det_connection_trivial(const Connection& D) { return trace(D.A).is_zero(); }

bool bracket_closure(const ThirdOrderOp& op, int N, const Scalar& p) {
  for (const RatFunc* a : {&op.a2, &op.a1, &op.a0})
    if (a->has_pole_at(p)) fail(ErrKind::PoleAtBasepoint, "operator coefficient has a pole at " + p.str());
  const int M = N + 4;
  Connection D = varpi(op);
  std::vector<TruncSeries> s;
  for (int j = 0; j < 3; ++j) s.push_back(solve_flat_sections(D.A, p, filt::e(j), M)[0]);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      TruncSeries r = apply_op(op, vf_bracket(s[i], s[j]));
      for (int e = 0; e <= N; ++e)
        if (!r.coeff(e).is_zero()) return false;
    }
  return true;
}

bool projective_operator_check(const ThirdOrderOp& op, int N) {
  return det_connection_trivial(varpi(op)) && bracket_closure(op, N);
}

bool is_varpi_image(const Connection& D, int N) {
  if (!oper_conditions(D).all() || !det_connection_trivial(D) || !f_d_is_identity(D, N)) return false;
  auto op = companion_op(D);
  return op && bracket_closure(*op, N);
}

EquivarianceReport equivariance_check(const RatFunc& g) {
  EquivarianceReport r;
  RatFunc gp = g.deriv();
  RMat T = jet_transition_matrix(g, kTX, 2);
  RMat Ti = inverse(T);
  RMat Az = Ti * (gp * D0().A) * T + Ti * deriv(T);
  r.d0 = Az == D0().A;
  RMat B0 = killing_form_B0().B;
  RMat Bg = B0.map([&](const RatFunc& f) { return f.compose(g); });
  r.b0 = T.transpose() * Bg * T == B0;
  // delta0 pulled back: g'^2 * (row 3 of the 3-jet transition) must be (0,0,0,1).
  ThirdOrderOp w = delta0();
  RMat T3 = jet_transition_matrix(g, kTX, 3);
  RVec aw{w.a0.compose(g), w.a1.compose(g), w.a2.compose(g), RatFunc(1)};
  RVec pulled(4, RatFunc());
  for (int l = 0; l < 4; ++l) {
    for (int m = 0; m < 4; ++m) pulled[l] += aw[m] * T3(m, l);
    pulled[l] *= gp * gp;
  }
  r.delta0 = pulled == RVec{w.a0, w.a1, w.a2, RatFunc(1)};
  return r;
}

EquivarianceReport moebius_equivariance_check(const MoebiusMap& g) { return equivariance_check(g.as_ratfunc()); }

}  // namespace bop
