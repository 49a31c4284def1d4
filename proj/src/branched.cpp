#include "bop/branched.hpp"

#include <algorithm>

namespace bop {

namespace {

RatFunc dot(const RVec& a, const RVec& b) {
  RatFunc s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RVec row(const RMat& m, std::size_t i) {
  RVec r(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
  return r;
}

// r A, r a row vector
RVec row_times(const RVec& r, const RMat& A) {
  RVec out(A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out[j] += r[i] * A(i, j);
  return out;
}

RVec deriv(const RVec& v) {
  RVec out;
  for (auto& f : v) out.push_back(f.deriv());
  return out;
}

RVec scaled(const RatFunc& s, const RVec& v) {
  RVec out;
  for (auto& f : v) out.push_back(s * f);
  return out;
}

RVec to_rat(const SVec& v) {
  RVec out;
  for (auto& s : v) out.push_back(RatFunc(s));
  return out;
}

bool parallel(const RVec& a, const RVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  return true;
}

bool parallel(const SVec& a, const SVec& b) { return parallel(to_rat(a), to_rat(b)); }

RatFunc local_param(const Scalar& x) { return RatFunc(Poly(std::vector<Scalar>{-x, Scalar(1)})); }

// Coefficient of (z-x)^k, entrywise.
SVec coeff_vec(const RVec& v, const Scalar& x, int k) {
  SVec out;
  for (auto& f : v) out.push_back(f.is_zero() ? Scalar(0) : series_expand(f, x, k).coeff(k));
  return out;
}

int min_order(const RVec& v, const Scalar& x) {
  int m = kZeroOrder;
  for (auto& f : v) m = std::min(m, f.order_at(x));
  return m;
}

// Fiber at x of the saturation of the span of cols.
std::vector<SVec> saturated_fiber(std::vector<RVec> cols, const Scalar& x) {
  RatFunc t = local_param(x);
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<SVec> vals;
    for (auto& c : cols) {
      int m = min_order(c, x);
      if (m == kZeroOrder) fail(ErrKind::ConditionViolation, "zero section in saturation");
      c = scaled(t.pow(-m), c);
      vals.push_back(coeff_vec(c, x, 0));
    }
    if (rank(from_cols(vals)) == cols.size()) return vals;
    SVec k = kernel(from_cols(vals)).front();
    std::size_t j = 0;
    while (k[j].is_zero()) ++j;
    RVec comb(cols[0].size(), RatFunc());
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t r = 0; r < comb.size(); ++r) comb[r] += RatFunc(k[i]) * cols[i][r];
    cols[j] = comb;
  }
  fail(ErrKind::ConditionViolation, "saturation did not terminate");
}

// Scale a rational vector to a primitive polynomial vector (first nonzero entry monic).
RVec primitive(const RVec& v) {
  Poly l(1);
  for (auto& f : v) l = Poly::divmod(l * f.den(), Poly::gcd(l, f.den())).first;
  RVec w = scaled(RatFunc(l), v);
  Poly g;
  for (auto& f : w)
    if (!f.is_zero()) g = g.is_zero() ? f.num() : Poly::gcd(g, f.num());
  if (g.is_zero()) return w;
  w = scaled(RatFunc(Poly(1), g), w);
  for (auto& f : w)
    if (!f.is_zero()) return scaled(RatFunc(Scalar(1) / f.num().lead()), w);
  return w;
}

struct Eigenframe {
  SVec l2, l1, l0;
  SMat E() const { return from_cols({l2, l1, l0}); }
};

Eigenframe eigenframe_at(const RMat& A, const Scalar& x) {
  EigenData ed = integer_eigendata(residue_matrix(A, x));
  auto one = [&](long l) {
    const auto& s = ed.space(l);
    if (s.size() != 1) fail(ErrKind::ConditionViolation, "eigenspace " + std::to_string(l) + " is not a line");
    return s[0];
  };
  return {one(-2), one(-1), one(0)};
}

void require_conditions(const PairBD& p, const Scalar& x) {
  if (!p.D.divisor.contains(x)) fail(ErrKind::ConditionViolation, x.str() + " is not a branch point");
  if (!pair_conditions(p).all()) fail(ErrKind::ConditionViolation, "pair conditions do not hold");
}

struct TwoStage {
  RMat g;
  LogConnection D;
  std::vector<long> after1, after2;
};

TwoStage two_stages(const LogConnection& D, const Scalar& x, SubspacePolicy pol) {
  SMat R = residue_matrix(D.A, x);
  HeckeResult h1 = hecke_modify(D, x, pipeline_subspace(R, 0, pol), pol);
  SMat R1 = residue_matrix(h1.D.A, x);
  auto M = pipeline_subspace(R1, 0, pol);
  if (M.size() != 2)
    fail(ErrKind::EigenspaceDimensionMismatch, "second stage subspace has dimension " + std::to_string(M.size()));
  HeckeResult h2 = hecke_modify(h1.D, x, M, pol);
  return {h1.frame_map * h2.frame_map, h2.D, integer_eigendata(R1).eigenvalues,
          integer_eigendata(residue_matrix(h2.D.A, x)).eigenvalues};
}

}  // namespace

Sl2Oper build_sl2_model(const Poly& sigma) {
  if (sigma.deg() < 1) fail(ErrKind::ConditionViolation, "sigma must be nonconstant");
  Poly dp = sigma.deriv();
  if (!is_squarefree(dp)) fail(ErrKind::NonReducedDivisor, "sigma' = " + dp.str() + " has a repeated zero");
  Sl2Oper o;
  o.sigma = sigma;
  o.divisor = BranchDivisor(roots_qi(dp));
  o.lead = dp.lead();
  RatFunc s(sigma);
  RatFunc c = RatFunc(Scalar(1) / o.lead);
  o.B_W = RMat{{0, 0, 1}, {0, 2, 0}, {1, 0, 0}};
  o.F1 = {c, -c * s, -c * s * s};
  o.F2 = {RVec{1, 0, s * s}, RVec{0, 1, RatFunc(2) * s}};
  o.D_W = RMat(3, 3, RatFunc());
  return o;
}

RatFunc sl2_sff(const Sl2Oper& o) {
  const RVec& n = o.F1;
  RVec dn = deriv(n);
  RVec an = o.D_W * n;
  for (std::size_t i = 0; i < 3; ++i) dn[i] += an[i];
  // dn = s h + t n with h = (0, 1, 2 sigma)
  if (n[0].is_zero()) fail(ErrKind::ConditionViolation, "F1 generator has no E component");
  RatFunc t = dn[0] / n[0];
  RatFunc s = dn[1] - t * n[1];
  return -s;
}

BranchedOperConditions branched_oper_conditions(const Sl2Oper& o) {
  BranchedOperConditions c;
  const RVec& n = o.F1;
  RVec Bn = o.B_W * n;
  c.isotropic = dot(n, Bn).is_zero();
  bool f2_rank2 = !parallel(o.F2[0], o.F2[1]);
  c.perp = f2_rank2 && dot(o.F2[0], Bn).is_zero() && dot(o.F2[1], Bn).is_zero() && !det(o.B_W).is_zero();
  c.preserves_B = is_zero(flatness_defect(o.B_W, o.D_W));
  c.det_trivial = trace(o.D_W).is_zero();
  RVec dn = deriv(n);
  RVec an = o.D_W * n;
  for (std::size_t i = 0; i < 3; ++i) dn[i] += an[i];
  c.d_f1_in_f2 = dot(dn, Bn).is_zero();
  c.sff_canonical = c.d_f1_in_f2 && !n[0].is_zero() && sl2_sff(o) == RatFunc(o.divisor.poly());
  return c;
}

RMat phi_map_raw(const WData& w) {
  RVec r = row_times(w.n_hat, w.B_W);
  RVec r1 = deriv(r), ra = row_times(r, w.A_W);
  for (std::size_t j = 0; j < 3; ++j) r1[j] -= ra[j];
  RVec r2 = deriv(r1), rb = row_times(r1, w.A_W);
  for (std::size_t j = 0; j < 3; ++j) r2[j] -= rb[j];
  RMat m(3, 3);
  for (std::size_t j = 0; j < 3; ++j) m(0, j) = r[j], m(1, j) = r1[j], m(2, j) = r2[j];
  return m;
}

RMat phi_map(const WData& w) { return inverse(branch_adapted_frame(w.divisor)) * phi_map_raw(w); }

SMat phi_map_at(const WData& w, const Scalar& x0, int N) {
  RVec r = row_times(w.n_hat, w.B_W);
  SMat raw(3, 3);
  for (int j = 0; j < 3; ++j) {
    auto v = solve_flat_sections(w.A_W, x0, filt::e(j), N);
    TruncSeries q = series_expand(r[0], x0, N) * v[0];
    for (int i = 1; i < 3; ++i) q = q + series_expand(r[i], x0, N) * v[i];
    for (int k = 0; k < 3; ++k) raw(k, j) = q.coeff(k) * factorial(k);
  }
  return eval(inverse(branch_adapted_frame(w.divisor)), x0) * raw;
}

PairBD build_pair(const WData& w) {
  RMat Phi = phi_map(w);
  RMat Pi = inverse(Phi);
  RMat A = Phi * w.A_W * Pi - deriv(Phi) * Pi;
  RMat B = Pi.transpose() * w.B_W * Pi;
  PairBD p;
  p.B = {B, 2};
  p.D = make_log_connection(A, w.divisor, JetFrame{"affine", kTT, "branch-adapted"});
  return p;
}

PairBD perturbed_pair(const Sl2Oper& o, const Scalar& c) {
  PairBD p = build_pair(o);
  p.D.A(1, 0) += RatFunc(c);
  p.D.A(2, 1) += RatFunc(c);
  return p;
}

std::vector<FrameDecl> eigenframes(const PairBD& p) {
  std::vector<FrameDecl> out;
  for (auto& x : p.D.divisor.points()) {
    Eigenframe e = eigenframe_at(p.D.A, x);
    out.push_back({x, -2, e.l2});
    out.push_back({x, -1, e.l1});
    out.push_back({x, 0, e.l0});
  }
  return out;
}

PairConditions pair_conditions(const PairBD& p) {
  PairConditions pc;
  const RMat& B = p.B.B;
  const RMat& A = p.D.A;
  const Poly P = p.D.divisor.poly();
  auto note = [&](int k, bool ok, const std::string& why) {
    if (!ok && pc.detail[k].empty()) pc.detail[k] = why;
    return ok;
  };

  {
    bool ok = note(0, B == B.transpose(), "B is not symmetric");
    ok = note(0, !det(B).is_zero(), "B is degenerate") && ok;
    RatFunc Pt = RatFunc(P).pow(p.B.twist);
    RMat Bt = B.map([&](const RatFunc& f) { return Pt * f; });
    bool hol = true;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) hol = hol && Bt(i, j).is_poly();
    ok = note(0, hol, "B has poles beyond the twist") && ok;
    RatFunc d = det(Bt);
    ok = note(0, hol && d.is_const() && !d.is_zero(), "twisted B is degenerate somewhere") && ok;
    ok = note(0, B(2, 2).is_zero(), "F1 is not isotropic") && ok;
    ok = note(0, B(2, 1).is_zero() && !B(2, 0).is_zero(), "F1 orthogonal is not F2") && ok;
    pc.ok[0] = ok;
  }

  pc.ok[1] = note(1, is_zero(flatness_defect(B, A)), "B is not covariantly constant");

  {
    auto v = log_violations(A, p.D.divisor);
    bool ok = note(2, v.empty(), v.empty() ? "" : v.front());
    ok = note(2, A(0, 2).is_zero(), "D(F1) is not contained in F2 (x) K (x) O(S)") && ok;
    for (int level : {1, 2}) {
      RatFunc s = -(level == 1 ? A(1, 2) : A(0, 1));
      bool good = !s.is_zero();
      Poly q = s.num();
      while (good && q.deg() > 0) {
        Poly g = Poly::gcd(q, P);
        if (g.deg() == 0) break;
        q = Poly::divmod(q, g).first;
      }
      good = good && q.deg() <= 0;
      ok = note(2, good, "second fundamental form " + std::to_string(level) + " = " + s.str() +
                             " vanishes off the divisor") &&
           ok;
    }
    pc.ok[2] = ok;
  }

  bool eig_ok = true, space_ok = true;
  for (auto& x : p.D.divisor.points()) {
    EigenData ed;
    try {
      ed = integer_eigendata(residue_matrix(A, x));
    } catch (const Error& e) {
      if (e.kind() == ErrKind::NonIntegerEigenvalue) fail(ErrKind::NonIntegerEigenvalue, "at x = " + x.str() + ": " + e.what());
      throw;
    }
    bool e_ok = ed.eigenvalues == std::vector<long>{-2, -1, 0};
    if (!e_ok) {
      std::string s;
      for (long l : ed.eigenvalues) s += (s.empty() ? "" : ",") + std::to_string(l);
      note(3, false, "residue eigenvalues at " + x.str() + " are {" + s + "}");
      eig_ok = false;
      space_ok = note(4, false, "eigenvalues at " + x.str() + " are not {-2,-1,0}") && space_ok;
      continue;
    }
    bool s_ok = ed.space(-2) == std::vector<SVec>{filt::e(2)};
    for (auto& v : ed.space(-1)) s_ok = s_ok && filt::in_F2(v);
    space_ok = note(4, s_ok, "eigenspaces at " + x.str() + " do not match the filtration") && space_ok;
  }
  pc.ok[3] = eig_ok;
  pc.ok[4] = space_ok;
  return pc;
}

const char* method_name(PhiMethod m) { return m == PhiMethod::Ledger ? "ledger" : "residue"; }

PhiReport phi_obstruction(const PairBD& p, const Scalar& x, PhiMethod method, const RVec* tail) {
  require_conditions(p, x);
  const RMat& A = p.D.A;
  Eigenframe ef = eigenframe_at(A, x);
  RatFunc t = local_param(x);
  if (method == PhiMethod::Ledger) {
    RVec v = scaled(t, to_rat(ef.l1));
    if (tail)
      for (std::size_t i = 0; i < 3; ++i) v[i] += t * t * (*tail)[i];
    RVec dv = deriv(v), av = A * v;
    for (std::size_t i = 0; i < 3; ++i) dv[i] += av[i];
    if (min_order(dv, x) < 1) fail(ErrKind::ConditionViolation, "D(v) does not vanish at " + x.str());
    SVec c = solve(ef.E(), coeff_vec(dv, x, 1));
    return {x, c[0], method};
  }

  TwoStage st = two_stages(p.D, x, SubspacePolicy::Generalized);
  RMat gi = inverse(st.g);
  SMat R2 = residue_matrix(st.D.A, x);
  SVec u2 = saturated_fiber({gi * to_rat(filt::e(2))}, x)[0];
  auto f2 = saturated_fiber({gi * to_rat(filt::e(1)), gi * to_rat(filt::e(2))}, x);

  RVec gu2 = st.g * to_rat(u2);
  SVec c2 = coeff_vec(gu2, x, 2);
  if (min_order(gu2, x) < 2 || !parallel(c2, ef.l2) || std::all_of(c2.begin(), c2.end(), [](auto& s) { return s.is_zero(); }))
    fail(ErrKind::ConditionViolation, "saturated F1 does not lead with the -2 eigenline");
  std::size_t k = 0;
  while (ef.l2[k].is_zero()) ++k;
  Scalar lam = c2[k] / ef.l2[k];
  for (auto& s : u2) s /= lam;

  SMat Ei = inverse(ef.E());
  std::vector<SVec> c0s;
  SVec k1;
  for (auto& b : f2) {
    RVec gb = st.g * to_rat(b);
    c0s.push_back(coeff_vec(gb, x, 0));
    k1.push_back((Ei * coeff_vec(gb, x, 1))[1]);
  }
  auto ker = kernel(from_cols(c0s));
  SVec ab;
  if (ker.size() == 2) {
    ab = !k1[0].is_zero() ? SVec{Scalar(1) / k1[0], 0} : SVec{0, Scalar(1) / k1[1]};
  } else if (ker.size() == 1) {
    Scalar s = ker[0][0] * k1[0] + ker[0][1] * k1[1];
    if (s.is_zero()) fail(ErrKind::ConditionViolation, "no element of F2 leads with the -1 eigenline");
    ab = {ker[0][0] / s, ker[0][1] / s};
  } else {
    fail(ErrKind::ConditionViolation, "saturated F2 does not vanish at " + x.str());
  }
  SVec u1(3);
  for (std::size_t i = 0; i < 3; ++i) u1[i] = ab[0] * f2[0][i] + ab[1] * f2[1][i];
  SVec y = R2 * u1;
  std::size_t j = 0;
  while (u2[j].is_zero()) ++j;
  Scalar phi = y[j] / u2[j];
  for (std::size_t i = 0; i < 3; ++i)
    if (y[i] != phi * u2[i]) fail(ErrKind::ConditionViolation, "residue does not map F2 into F1 at " + x.str());
  return {x, phi, method};
}

CriterionResult oper_criterion(const PairBD& p) {
  CriterionResult r;
  r.conditions = pair_conditions(p);
  if (!r.conditions.all()) {
    r.reason = "conditions";
    return r;
  }
  bool zero = true;
  for (auto& x : p.D.divisor.points())
    for (PhiMethod m : {PhiMethod::Ledger, PhiMethod::Residue}) {
      r.phi.push_back(phi_obstruction(p, x, m));
      zero = zero && r.phi.back().value.is_zero();
    }
  r.is_branched_oper = zero;
  if (!zero) r.reason = "phi";
  return r;
}

bool monodromy_trivial(const PairBD& p) {
  for (auto& x : p.D.divisor.points()) {
    require_conditions(p, x);
    if (!is_zero(residue_matrix(two_stages(p.D, x, SubspacePolicy::Generalized).D.A, x))) return false;
  }
  return true;
}

Reconstruction reconstruct_oper(const PairBD& p) {
  CriterionResult cr = oper_criterion(p);
  if (!cr.is_branched_oper) fail(ErrKind::NotAnOper, "criterion fails (" + cr.reason + ")");
  Reconstruction r;
  r.frame = RMat::identity(3);
  LogConnection D = p.D;
  for (auto& x : p.D.divisor.points()) {
    std::vector<long> before = integer_eigendata(residue_matrix(D.A, x)).eigenvalues;
    TwoStage st = two_stages(D, x, SubspacePolicy::Exact);
    r.spectra.push_back({x, before, st.after1, st.after2});
    r.frame = r.frame * st.g;
    D = st.D;
  }
  for (auto& x : p.D.divisor.points())
    if (!is_regular_at(D, x)) fail(ErrKind::ConditionViolation, "reconstructed connection is singular at " + x.str());
  r.A = D.A;
  r.B = r.frame.transpose() * p.B.B * r.frame;
  r.F1 = primitive(inverse(r.frame) * to_rat(filt::e(2)));
  r.F2_normal = primitive(row(r.frame, 0));
  return r;
}

WData Reconstruction::wdata() const {
  RVec q0 = row(frame, 0);
  return {A, B, inverse(B) * q0, BranchDivisor(
                                      [&] {
                                        std::vector<Scalar> pts;
                                        for (auto& s : spectra) pts.push_back(s.point);
                                        return pts;
                                      }())};
}

RoundTrip compare_with_model(const WData& model, const Reconstruction& r) {
  RoundTrip rt;
  rt.C = inverse(phi_map(model)) * r.frame;
  bool hol = true;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) hol = hol && rt.C(i, j).is_poly();
  rt.checks.push_back({"frame holomorphic", hol});
  RatFunc d = det(rt.C);
  rt.checks.push_back({"frame determinant constant", d.is_const() && !d.is_zero()});
  rt.checks.push_back({"connection matches", hol && r.A == gauge(model.A_W, rt.C)});
  rt.checks.push_back({"form matches", r.B == rt.C.transpose() * model.B_W * rt.C});
  rt.checks.push_back({"F1 matches", parallel(rt.C * r.F1, model.n_hat)});
  rt.checks.push_back({"F2 matches", parallel(r.F2_normal, row_times(row_times(model.n_hat, model.B_W), rt.C))});
  rt.ok = std::all_of(rt.checks.begin(), rt.checks.end(), [](auto& c) { return c.second; });
  if (hol) rt.K0 = eval(rt.C, 0);
  return rt;
}

bool same_pair(const PairBD& a, const PairBD& b) {
  return a.B.B == b.B.B && a.B.twist == b.B.twist && a.D.A == b.D.A && a.D.divisor == b.D.divisor;
}

}  // namespace bop
