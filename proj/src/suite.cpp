#include "bop/suite.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

namespace bop {

namespace {

std::string str(const std::vector<long>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "}";
}

std::string str(const SVec& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].str();
  return s + ")";
}

std::string str(const SMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SVec r;
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    s += (i ? "," : "") + str(r);
  }
  return s + "]";
}

// Witness form: constant denominators dropped.
std::string show(const RatFunc& f, const std::string& var = "z") {
  return f.is_poly() ? f.num().str(var) : f.str(var);
}

std::string str(const RMat& m, const std::string& var = "z") {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + show(m(i, j), var);
    s += "]";
  }
  return s + "]";
}

const char* tf(bool b) { return b ? "T" : "F"; }

Outcome verdict(bool ok, std::string w) { return {ok ? Status::Pass : Status::Fail, std::move(w)}; }

const char* status_name(Status s) { return s == Status::Pass ? "pass" : s == Status::Fail ? "fail" : "info"; }

// Fixed sample points for pointwise checks.
const std::vector<Scalar>& samples() {
  static const std::vector<Scalar> s{Scalar::frac(1, 3), Scalar::frac(-2, 5), Scalar::frac(7, 4), Scalar(3),
                                     Scalar::frac(-9, 7)};
  return s;
}

RatFunc R(const char* s) { return parse_ratfunc(s); }

std::string sff_witness(const Connection& d) {
  auto c = oper_conditions(d);
  std::string s = std::string("c1=") + tf(c.c1) + " c2=" + tf(c.c2) + " c3=" + tf(c.c3) + " sff1=" + show(sff(d, 1));
  if (c.c1) s += " sff2=" + show(sff(d, 2));
  return s;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  os << "suite " << suite;
  for (auto& [k, v] : params) os << " " << k << "=" << v;
  os << "\n";
  int pass = 0, fail = 0, info = 0;
  for (auto& c : checks) {
    const char* tag = c.status == Status::Pass ? "PASS" : c.status == Status::Fail ? "FAIL" : "INFO";
    (c.status == Status::Pass ? pass : c.status == Status::Fail ? fail : info)++;
    os << tag << "  " << c.id << "  [" << c.anchor << "]  " << c.witness << "\n";
  }
  os << (fail ? "FAILED" : "OK") << ": " << pass << " passed, " << fail << " failed, " << info << " informational";
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1f ms)\n", wall_ms);
  os << buf;
  return os.str();
}

std::string SuiteReport::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["status"] = passed() ? "pass" : "fail";
  j["checks"] = nlohmann::ordered_json::array();
  for (auto& c : checks)
    j["checks"].push_back({{"id", c.id}, {"anchor", c.anchor}, {"status", status_name(c.status)}, {"witness", c.witness}});
  return j.dump(2) + "\n";
}

SuiteReport run_suite(const std::string& name, std::vector<std::pair<std::string, std::string>> params,
                      const std::vector<CheckSpec>& checks, const SuiteOptions& o) {
  static const std::map<std::string, std::string> alias{{"sff", "d0.sff"}};
  std::string target = o.mutate;
  if (auto it = alias.find(target); it != alias.end()) target = it->second;
  if (!target.empty() &&
      std::none_of(checks.begin(), checks.end(), [&](const CheckSpec& c) { return c.id == target; })) {
    std::string ids;
    for (auto& c : checks) ids += " " + c.id;
    fail(ErrKind::Usage, "unknown mutation '" + o.mutate + "' for suite " + name + "; known:" + ids);
  }
  SuiteReport r;
  r.suite = name;
  r.params = std::move(params);
  r.params.push_back({"order", std::to_string(o.order)});
  if (!o.mutate.empty()) r.params.push_back({"mutate", target});
  auto t0 = std::chrono::steady_clock::now();
  for (auto& c : checks) {
    CheckResult cr{c.id, c.anchor, Status::Fail, "", 0};
    auto t1 = std::chrono::steady_clock::now();
    try {
      Outcome out = c.run(c.id == target);
      cr.status = out.status;
      cr.witness = out.witness;
    } catch (const std::exception& e) {
      cr.status = Status::Fail;
      cr.witness = e.what();
    }
    cr.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t1).count();
    r.checks.push_back(cr);
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::sort(r.checks.begin(), r.checks.end(), [](auto& a, auto& b) { return a.id < b.id; });
  return r;
}

// ---- canonical (unbranched) suite

std::vector<CheckSpec> canon_checks(const SuiteOptions& o) {
  const int N = o.order;
  std::vector<CheckSpec> v;

  v.push_back({"psi.det", "jet map of global fields is an isomorphism", [](bool m) {
                 Mat<Poly> g = psi_matrix(2);
                 if (m) g(2, 2) = Poly(1);
                 Poly d = det(g);
                 return verdict(d == Poly(2), "det psi_2 = " + d.str());
               }});
  v.push_back({"psi.injective", "jet map of global fields is fiberwise injective", [](bool m) {
                 std::string w;
                 bool ok = true;
                 for (auto& p : samples()) {
                   SMat g = eval(G(), p);
                   if (m)
                     for (int j = 0; j < 3; ++j) g(2, j) = g(1, j);
                   ok = ok && rank(g) == 3;
                   w += (w.empty() ? "rank at " : ", ") + p.str() + ": " + std::to_string(rank(g));
                 }
                 return verdict(ok, w);
               }});
  v.push_back({"delta0.splitting", "delta_0 splits the jet sequence", [](bool m) {
                 bool ok = true;
                 for (auto& c : samples()) {
                   JetVec j{3, m ? SVec{0, 0, c, 0} : SVec{0, 0, 0, c}, {}};
                   ok = ok && apply_op(delta0(), j, Scalar::frac(1, 2)) == c;
                 }
                 return verdict(ok, std::string("delta_0(0,0,0,c) = c: ") + tf(ok));
               }});
  v.push_back({"delta0.kernel", "kernel of delta_0 is spanned by 1, z, z^2", [N](bool m) {
                 ThirdOrderOp op = m ? ThirdOrderOp{0, 0, 1} : delta0();
                 auto k = op_series_kernel(op, 0, N);
                 bool ok = k.size() == 3;
                 for (std::size_t j = 0; ok && j < 3; ++j) {
                   SVec e(k[j].size(), Scalar(0));
                   e[j] = 1;
                   ok = k[j] == e;
                 }
                 return verdict(ok, "kernel dimension " + std::to_string(k.size()) + " through order " + std::to_string(N));
               }});
  v.push_back({"d0.varpi", "D_0 = varpi(delta_0) has flat frame psi_2", [](bool m) {
                 RMat A = varpi(delta0()).A;
                 if (m) A(2, 0) = RatFunc(1);
                 RMat oracle = -(deriv(G()) * inverse(G()));
                 return verdict(A == oracle, "A = " + str(A));
               }});
  v.push_back({"d0.flat_sections", "flat sections of D_0 are the psi_2 columns", [N](bool m) {
                 bool ok = true;
                 Scalar p = Scalar::frac(2, 5);
                 for (int j = 0; j < 3; ++j) {
                   SVec init = eval(G(), p).col(j);
                   if (m && j == 2) init[2] = Scalar(3);
                   auto s = solve_flat_sections(D0().A, p, init, N);
                   for (int i = 0; i < 3; ++i) ok = ok && s[i] == series_expand(G()(i, j), p, N);
                 }
                 return verdict(ok, std::string("columns reproduced: ") + tf(ok));
               }});
  v.push_back({"d0.oper_conditions", "D_0 is an oper connection", [](bool m) {
                 Connection d = D0();
                 if (m) d.A(0, 2) = RatFunc(1);
                 auto c = oper_conditions(d);
                 return verdict(c.all(), std::string("c1=") + tf(c.c1) + " c2=" + tf(c.c2) + " c3=" + tf(c.c3));
               }});
  v.push_back({"d0.sff", "second fundamental forms of D_0 are 1", [](bool m) {
                 Connection d = D0();
                 if (m) d.A(1, 2) = d.A(1, 2) * RatFunc(2);
                 bool ok = oper_conditions(d).all() && sff(d, 1) == RatFunc(1) && sff(d, 2) == RatFunc(1);
                 return verdict(ok, sff_witness(d));
               }});
  v.push_back({"killing.matrix", "Killing form in the global field basis", [](bool m) {
                 SMat k = killing_matrix();
                 // trace(ad x ad y) in 2x2 matrices, fields d, z d, z^2 d = E, H/2, -F
                 std::vector<SMat> b{SMat{{0, 1}, {0, 0}}, SMat{{Scalar::frac(1, 2), 0}, {0, Scalar::frac(-1, 2)}},
                                     SMat{{0, 0}, {-1, 0}}};
                 if (m) std::swap(b[0], b[1]);
                 auto coords = [](const SMat& x) { return SVec{x(0, 1), x(0, 0) * Scalar(2), -x(1, 0)}; };
                 SMat oracle(3, 3);
                 for (int i = 0; i < 3; ++i)
                   for (int j = 0; j < 3; ++j) {
                     SMat ai(3, 3), aj(3, 3);
                     for (int c = 0; c < 3; ++c) {
                       ai.set_col(c, coords(b[i] * b[c] - b[c] * b[i]));
                       aj.set_col(c, coords(b[j] * b[c] - b[c] * b[j]));
                     }
                     oracle(i, j) = trace(ai * aj);
                   }
                 SMat expect{{0, 0, -4}, {0, 2, 0}, {-4, 0, 0}};
                 return verdict(k == expect && oracle == expect, "kappa = " + str(k) + ", oracle = " + str(oracle));
               }});
  v.push_back({"b0.isotropy", "F1 is isotropic and its orthogonal is F2", [](bool m) {
                 RMat B = killing_form_B0().B;
                 if (m) B(2, 1) = B(1, 2) = RatFunc(1);
                 bool ok = B(2, 2).is_zero() && B(2, 1).is_zero() && !B(2, 0).is_zero();
                 return verdict(ok, "B(e2,e2) = " + show(B(2, 2)) + ", B(e2,e1) = " + show(B(2, 1)) + ", B(e2,e0) = " + show(B(2, 0)));
               }});
  v.push_back({"b0.flat", "D_0 preserves B_0", [](bool m) {
                 RMat A = D0().A;
                 if (m) A(1, 2) = RatFunc(-2);
                 RMat d = flatness_defect(killing_form_B0().B, A);
                 return verdict(is_zero(d), "dB - A^T B - B A = " + str(d));
               }});
  v.push_back({"b0.nondegenerate", "B_0 is fiberwise nondegenerate", [](bool m) {
                 RMat B = killing_form_B0().B;
                 if (m)
                   for (int j = 0; j < 3; ++j) B(0, j) = B(j, 0) = RatFunc();
                 RatFunc d = det(B);
                 return verdict(d.is_const() && !d.is_zero(), "det B_0 = " + show(d));
               }});
  v.push_back({"det.trivial", "D_0 induces the trivial connection on the determinant", [](bool m) {
                 Connection d = m ? varpi({1, 0, 0}) : D0();
                 bool neg = !det_connection_trivial(varpi({1, 0, 0}));
                 bool ok = det_connection_trivial(d) && neg;
                 return verdict(ok, "trace A = " + show(trace(d.A)));
               }});
  v.push_back({"jets.det_transition", "determinant of the 2-jet transition is 1", [N](bool m) {
                 std::mt19937 g(7);
                 std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
                 bool ok = true;
                 int count = 0;
                 while (count < 20) {
                   std::vector<Scalar> c;
                   for (int k = 0; k <= N + 2; ++k) c.push_back(Scalar::frac(num(g), den(g)));
                   if (c[1].is_zero()) continue;
                   Scalar center = Scalar::frac(num(g), den(g));
                   TruncSeries phi(center, 0, c, N + 2);
                   TruncSeries d = det(jet_transition_matrix(phi, m ? kK : kTX, 2));
                   ok = ok && d == TruncSeries::constant(1, center, d.order());
                   ++count;
                 }
                 return verdict(ok, std::string("20 random charts, det = 1: ") + tf(ok));
               }});
  v.push_back({"projective.instances", "projective operators: determinant and bracket closure", [N](bool m) {
                 ThirdOrderOp good = m ? ThirdOrderOp{0, R("4*z"), 1} : ThirdOrderOp{0, R("4*z"), 2};
                 bool a = projective_operator_check(good, N);
                 bool b = bracket_closure({0, 0, 1}, N);
                 bool c = bracket_closure({0, R("4*z"), 0}, N);
                 bool d = projective_operator_check(delta0(), N);
                 return verdict(a && !b && !c && d, std::string("(0,4z,2)=") + tf(a) + " (0,0,1)=" + tf(b) +
                                                        " (0,4z,0)=" + tf(c) + " delta_0=" + tf(d));
               }});
  v.push_back({"fd.identity", "F_D is the identity exactly for companion connections", [N](bool m) {
                 Connection bad{RMat{{0, -2, 0}, {0, 0, -1}, {0, 0, 0}}, {}};
                 Connection good = m ? bad : varpi({0, R("4*z"), 2});
                 bool a = f_d_is_identity(good, N), b = f_d_is_identity(D0(), N), c = f_d_is_identity(bad, N);
                 return verdict(a && b && !c, std::string("companion=") + tf(a) + " D_0=" + tf(b) + " counterexample=" + tf(c));
               }});
  v.push_back({"varpi.conjunction", "oper connections with trivial determinant and closed brackets are varpi(op)",
               [N](bool m) {
                 bool ok = true;
                 for (auto op : {ThirdOrderOp{0, R("4*z"), 2}, ThirdOrderOp{0, R("4*(z^2+1)"), R("4*z")}}) {
                   if (m) op.a0 = RatFunc();
                   Connection d = varpi(op);
                   ok = ok && is_varpi_image(d, N) && companion_op(d).value() == op;
                 }
                 bool neg = !is_varpi_image(varpi({0, R("4*z"), 0}), N);
                 return verdict(ok && neg, std::string("family passes: ") + tf(ok) + ", (0,4z,0) rejected: " + tf(neg));
               }});
  for (auto [id, g] : {std::pair{"moebius.translate", "z+1"}, {"moebius.scale", "2*z"}, {"moebius.inversion", "z/(1-z)"}}) {
    std::string gs = g;
    v.push_back({id, "Moebius equivariance of delta_0, D_0, B_0", [gs](bool m) {
                   auto e = m ? equivariance_check(R("z+z^2")) : moebius_equivariance_check(*is_moebius(R(gs.c_str())));
                   return verdict(e.all(), "g = " + (m ? std::string("z+z^2") : gs) + ": delta0=" + tf(e.delta0) +
                                               " D0=" + tf(e.d0) + " B0=" + tf(e.b0));
                 }});
  }
  return v;
}

SuiteReport run_canon(const SuiteOptions& o) { return run_suite("canon", {}, canon_checks(o), o); }

// ---- branched model

std::vector<CheckSpec> branch_checks(int n, const SuiteOptions&) {
  if (n < 1) fail(ErrKind::Usage, "--n must be >= 1");
  std::vector<CheckSpec> v;
  const bool judged = n == 1;
  auto st = [judged](bool ok) { return judged ? (ok ? Status::Pass : Status::Fail) : Status::Info; };
  auto model = [n](bool m) {
    LogConnection d = branched_model_connection(n);
    if (m) d.A(0, 0) += RatFunc(Poly(-1), Poly::z());
    return d;
  };
  v.push_back({"branch.residue", "residue eigenvalues of the branched model", [=](bool m) {
                 ResidueReport r = residue(model(m), 0);
                 bool ok = r.eigenvalues == std::vector<long>{-2, -1, 0};
                 return Outcome{st(ok), "Res = " + str(r.matrix) + ", eigenvalues " + str(r.eigenvalues)};
               }});
  v.push_back({"branch.eigenspace_m2", "eigenline of -2 is the F1 fiber", [=](bool m) {
                 LogConnection d = branched_model_connection(n);
                 if (m) d.A = gauge(d.A, RMat{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}});
                 ResidueReport r = residue(d, 0);
                 auto s = r.space(-2 * n);
                 bool ok = s == std::vector<SVec>{filt::e(2)};
                 return Outcome{st(ok), "eigenspace(" + std::to_string(-2 * n) + ") = " + (s.empty() ? "0" : str(s[0]))};
               }});
  v.push_back({"branch.eigenspace_m1", "eigenspace of -1 lies in the F2 fiber", [=](bool m) {
                 LogConnection d = branched_model_connection(n);
                 if (m) d.A = gauge(d.A, RMat{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
                 ResidueReport r = residue(d, 0);
                 auto s = r.space(-n);
                 bool ok = !s.empty();
                 for (auto& x : s) ok = ok && filt::in_F2(x);
                 return Outcome{st(ok), "eigenspace(" + std::to_string(-n) + ") = " + (s.empty() ? "0" : str(s[0]))};
               }});
  v.push_back({"branch.sff", "twisted second fundamental forms are the canonical section 1", [=](bool m) {
                 LogConnection d = branched_model_connection(n);
                 if (m) d.A(1, 2) = d.A(1, 2) * RatFunc::z();
                 RatFunc a = sff_log(d, 1), b = sff_log(d, 2);
                 return Outcome{st(a == RatFunc(1) && b == RatFunc(1)), "sff1 = " + show(a) + ", sff2 = " + show(b)};
               }});
  v.push_back({"branch.oper_off_divisor", "the model is an oper connection off the divisor", [=](bool m) {
                 LogConnection d = branched_model_connection(n);
                 if (m) d.A(0, 2) = RatFunc(1);
                 auto c = oper_conditions(Connection{d.A, d.frame});
                 bool ok = c.all() && !is_regular_at(d, 0) && is_regular_at(d, 1);
                 return Outcome{st(ok), std::string("c1=") + tf(c.c1) + " c2=" + tf(c.c2) + " c3=" + tf(c.c3)};
               }});
  v.push_back({"branch.hecke", "two modifications make the model regular", [=](bool m) {
                 LogConnection d = model(m);
                 SMat R0 = residue(d, 0).matrix;
                 HeckeResult h1 = hecke_modify(d, 0, pipeline_subspace(R0, 0, SubspacePolicy::Exact));
                 auto e1 = residue(h1.D, 0).eigenvalues;
                 HeckeResult h2 = hecke_modify(h1.D, 0, pipeline_subspace(residue(h1.D, 0).matrix, 0, SubspacePolicy::Exact));
                 auto e2 = residue(h2.D, 0).eigenvalues;
                 bool ok = residue(d, 0).eigenvalues == std::vector<long>{-2, -1, 0} &&
                           e1 == std::vector<long>{-1, 0, 0} && e2 == std::vector<long>{0, 0, 0} && is_regular_at(h2.D, 0);
                 return Outcome{st(ok), "spectra " + str(residue(d, 0).eigenvalues) + " -> " + str(e1) + " -> " + str(e2)};
               }});
  return v;
}

SuiteReport run_branch(int n, const SuiteOptions& o) {
  return run_suite("branch", {{"n", std::to_string(n)}}, branch_checks(n, o), o);
}

// ---- pair files

std::vector<CheckSpec> pair_checks(const PairBD& p0, const SuiteOptions&) {
  std::vector<CheckSpec> v;
  static const char* anchors[5] = {"filtration is isotropic with F1 orthogonal = F2", "B is covariantly constant",
                                   "D moves F1 into F2 and F2 onto J, up to K(S)",
                                   "residue eigenvalues are -2, -1, 0",
                                   "eigenline of -2 is F1, eigenspace of -1 lies in F2"};
  auto mutated = [p0](int k) {
    PairBD p = p0;
    RatFunc inv(Poly(1), p.D.divisor.poly());
    switch (k) {
      case 0: p.B.B(2, 2) += RatFunc(1); break;
      case 1: p.B.B = p.B.B.map([](const RatFunc& f) { return f * RatFunc(Poly::z() + Poly(3)); }); break;
      case 2: p.D.A(0, 2) += RatFunc(1); break;
      case 3: p.D.A(0, 0) += RatFunc(-1) * (p.D.divisor.degree() ? inv : RatFunc(Poly(1), Poly::z())); break;
      case 4: p.D.A = gauge(p.D.A, RMat{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}); break;
    }
    if (k == 3 && p.D.divisor.degree() == 0) p.D.divisor = BranchDivisor({Scalar(0)});
    return p;
  };
  for (int k = 0; k < 5; ++k)
    v.push_back({"pair.condition" + std::to_string(k + 1), anchors[k], [=](bool m) {
                   auto c = pair_conditions(m ? mutated(k) : p0);
                   return verdict(c.ok[k], c.ok[k] ? "holds" : c.detail[k]);
                 }});
  v.push_back({"pair.frames", "declared eigenframes", [p0](bool m) {
                 if (p0.frames.empty() && !m) return Outcome{Status::Info, "none declared"};
                 std::vector<FrameDecl> decl = p0.frames;
                 if (m) {
                   if (decl.empty()) decl.push_back({Scalar(0), -2, {1, 1, 1}});
                   for (auto& s : decl[0].vec) s = s * Scalar(2) + Scalar(1);
                 }
                 bool ok = true;
                 std::string bad;
                 for (auto& d : decl) {
                   if (!p0.D.divisor.contains(d.point)) {
                     ok = false;
                     bad = d.point.str() + " is not a branch point";
                     continue;
                   }
                   auto sp = residue(p0.D, d.point).space(d.eigenvalue);
                   if (sp.size() != 1 || sp[0] != d.vec) {
                     ok = false;
                     bad = "frame " + d.point.str() + " " + std::to_string(d.eigenvalue) + " " + str(d.vec) + " does not match";
                   }
                 }
                 return verdict(ok, ok ? std::to_string(decl.size()) + " frames match" : bad);
               }});
  // phi, verdict and monodromy need the conditions
  auto conds_ok = [p0] { return pair_conditions(p0).all(); };
  v.push_back({"pair.phi", "phi obstruction, ledger and residue methods agree", [=](bool m) {
                 if (!conds_ok()) return Outcome{Status::Info, "not computed: conditions fail"};
                 if (p0.D.divisor.degree() == 0) return Outcome{Status::Pass, "no branch points"};
                 std::string w;
                 bool agree = true;
                 PairBD shifted = p0;
                 shifted.D.A(1, 0) += RatFunc(1);
                 shifted.D.A(2, 1) += RatFunc(1);
                 for (auto& x : p0.D.divisor.points()) {
                   Scalar a = phi_obstruction(m ? shifted : p0, x, PhiMethod::Ledger).value;
                   Scalar b = phi_obstruction(p0, x, PhiMethod::Residue).value;
                   agree = agree && a == b;
                   w += (w.empty() ? "" : "; ") + std::string("x=") + x.str() + " ledger=" + a.str() + " residue=" + b.str();
                 }
                 return verdict(agree, w);
               }});
  v.push_back({"pair.verdict", "a pair is a branched oper iff every phi vanishes", [=](bool) {
                 auto cr = oper_criterion(p0);
                 return Outcome{Status::Info, cr.is_branched_oper ? "oper" : "non-oper (" + cr.reason + ")"};
               }});
  v.push_back({"pair.monodromy", "vanishing phi forces trivial local monodromy", [=](bool m) {
                 if (!conds_ok()) return Outcome{Status::Info, "not computed: conditions fail"};
                 bool zero = true;
                 for (auto& x : p0.D.divisor.points())
                   zero = zero && phi_obstruction(p0, x, PhiMethod::Residue).value.is_zero();
                 // the mutation pairs a vanishing phi with perturbed monodromy
                 if (m) zero = true;
                 PairBD q = p0;
                 if (m && q.D.divisor.degree()) {
                   q.D.A(1, 0) += RatFunc(1);
                   q.D.A(2, 1) += RatFunc(1);
                 }
                 bool mono = monodromy_trivial(q);
                 return verdict(!zero || mono, std::string("phi zero: ") + tf(zero) + ", monodromy trivial: " + tf(mono));
               }});
  return v;
}

SuiteReport run_pair_check(const PairBD& p, const std::string& source, const SuiteOptions& o) {
  return run_suite("pair-check", {{"file", source}}, pair_checks(p, o), o);
}

// ---- round trip from a developing map

std::vector<CheckSpec> roundtrip_checks(const Sl2Oper& o0, const SuiteOptions&) {
  std::vector<CheckSpec> v;
  const WData w = o0.wdata();
  const BranchDivisor S = o0.divisor;
  v.push_back({"rt.model", "the sl2 model is a branched oper", [o0](bool m) {
                 Sl2Oper o = o0;
                 if (m) o.F2 = {RVec{1, 0, 0}, RVec{0, 1, 0}};
                 auto c = branched_oper_conditions(o);
                 return verdict(c.all(), std::string("isotropic=") + tf(c.isotropic) + " perp=" + tf(c.perp) +
                                             " B-flat=" + tf(c.preserves_B) + " det=" + tf(c.det_trivial) +
                                             " D(F1)<F2=" + tf(c.d_f1_in_f2) + " sff=" + tf(c.sff_canonical));
               }});
  v.push_back({"rt.phi_map", "Phi maps the W filtration into the jet filtration", [o0, w](bool m) {
                 RMat Phi = m ? phi_map_raw(w) : phi_map(w);
                 if (m && o0.divisor.degree() == 0) Phi(1, 2) += RatFunc(1);
                 RVec f1 = Phi * o0.F1;
                 bool ok = f1[0].is_zero() && f1[1].is_zero();
                 for (auto& f : o0.F2) ok = ok && (Phi * f)[0].is_zero();
                 bool flat = true;
                 for (Scalar x0 : {Scalar::frac(1, 3), Scalar::frac(-5, 7)})
                   if (!o0.divisor.contains(x0)) flat = flat && phi_map_at(w, x0) == eval(Phi, x0);
                 std::string orders;
                 RatFunc d = det(Phi);
                 for (auto& x : o0.divisor.points()) orders += " ord_" + x.str() + "=" + std::to_string(d.order_at(x));
                 return verdict(ok && flat, std::string("flags kept: ") + tf(ok) + ", matches flat sections: " + tf(flat) +
                                                ", det Phi = " + show(d) + orders);
               }});
  v.push_back({"rt.pair_conditions", "the built pair satisfies the five conditions", [w](bool m) {
                 PairBD p = build_pair(w);
                 if (m) p.B.B(2, 2) += RatFunc(1);
                 auto c = pair_conditions(p);
                 std::string s;
                 for (int k = 0; k < 5; ++k) s += std::string(k ? " " : "") + tf(c.ok[k]);
                 return verdict(c.all(), s);
               }});
  v.push_back({"rt.sff", "twisted second fundamental forms of the pair are the canonical section 1", [w](bool m) {
                 PairBD p = build_pair(w);
                 if (m) p.D.A(0, 1) = p.D.A(0, 1) * RatFunc(Scalar(3));
                 RatFunc a = sff_log(p.D, 1), b = sff_log(p.D, 2);
                 bool incl = p.D.A(0, 2).is_zero() && log_violations(p.D.A, p.D.divisor).empty();
                 return verdict(incl && a == RatFunc(1) && b == RatFunc(1),
                                std::string("inclusion ") + tf(incl) + ", sff1 = " + show(a) + ", sff2 = " + show(b));
               }});
  v.push_back({"rt.form", "B_J is covariantly constant, F1 isotropic, F1 orthogonal = F2", [w](bool m) {
                 PairBD p = build_pair(w);
                 if (m) p.B.B = p.B.B.map([](const RatFunc& f) { return f * RatFunc(Poly::z() + Poly(2)); });
                 bool flat = is_zero(flatness_defect(p.B.B, p.D.A));
                 bool iso = p.B.B(2, 2).is_zero() && p.B.B(2, 1).is_zero() && !p.B.B(2, 0).is_zero();
                 return verdict(flat && iso, std::string("flat ") + tf(flat) + ", isotropy " + tf(iso));
               }});
  v.push_back({"rt.criterion", "the built pair has vanishing phi at every branch point", [w](bool m) {
                 PairBD p = build_pair(w);
                 if (m && p.D.divisor.degree()) p.D.A(1, 0) += RatFunc(1), p.D.A(2, 1) += RatFunc(1);
                 if (m && p.D.divisor.degree() == 0) p.D.A(0, 2) = RatFunc(1);
                 auto cr = oper_criterion(p);
                 std::string s = cr.is_branched_oper ? "oper" : "non-oper (" + cr.reason + ")";
                 for (auto& r : cr.phi) s += "; x=" + r.point.str() + " " + method_name(r.method) + "=" + r.value.str();
                 return verdict(cr.is_branched_oper, s);
               }});
  v.push_back({"rt.spectra", "residue spectra along the two modifications", [w](bool m) {
                 PairBD p = build_pair(w);
                 if (m && p.D.divisor.degree()) p.D.A(1, 0) += RatFunc(1), p.D.A(2, 1) += RatFunc(1);
                 if (p.D.divisor.degree() == 0) {
                   if (m) return Outcome{Status::Fail, "mutated"};
                   return Outcome{Status::Pass, "no branch points; D is regular"};
                 }
                 Reconstruction r = reconstruct_oper(p);
                 bool ok = true;
                 std::string s;
                 for (auto& st : r.spectra) {
                   ok = ok && st.before == std::vector<long>{-2, -1, 0} && st.after1 == std::vector<long>{-1, 0, 0} &&
                        st.after2 == std::vector<long>{0, 0, 0};
                   s += (s.empty() ? "" : "; ") + st.point.str() + ": " + str(st.before) + " -> " + str(st.after1) +
                        " -> " + str(st.after2);
                 }
                 return verdict(ok, s + ", final connection regular");
               }});
  v.push_back({"rt.roundtrip", "reconstruction recovers the oper up to a frame isomorphism", [w](bool m) {
                 PairBD p = build_pair(w);
                 Reconstruction r = reconstruct_oper(p);
                 if (m) r.frame = r.frame * RMat{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}};
                 RoundTrip rt = compare_with_model(w, r);
                 PairBD again = build_pair(r.wdata());
                 bool same = same_pair(again, p);
                 std::string s;
                 for (auto& c : rt.checks)
                   if (!c.second) s += (s.empty() ? "failed: " : ", ") + c.first;
                 if (s.empty()) s = "frame C = " + str(rt.C) + ", K0 = C(0) = " + str(rt.K0);
                 s += std::string("; rebuilt pair identical (constant frame I): ") + tf(same);
                 return verdict(rt.ok && same, s);
               }});
  v.push_back({"rt.perturbed", "a pair with nonzero phi is not an oper", [o0](bool m) {
                 if (o0.divisor.degree() == 0) return Outcome{Status::Info, "no branch points"};
                 Scalar c = m ? Scalar(0) : Scalar(1);
                 PairBD q = perturbed_pair(o0, c);
                 bool conds = pair_conditions(q).all();
                 bool nonzero = true, agree = true;
                 std::string s;
                 for (auto& x : q.D.divisor.points()) {
                   Scalar a = phi_obstruction(q, x, PhiMethod::Ledger).value;
                   Scalar b = phi_obstruction(q, x, PhiMethod::Residue).value;
                   nonzero = nonzero && !a.is_zero();
                   agree = agree && a == b;
                   s += "; x=" + x.str() + " ledger=" + a.str() + " residue=" + b.str();
                 }
                 bool crit = oper_criterion(q).is_branched_oper;
                 bool mono = monodromy_trivial(q);
                 bool ok = conds && nonzero && agree && !crit && !mono;
                 return verdict(ok, std::string("conditions ") + tf(conds) + ", criterion " + tf(crit) + ", monodromy trivial " +
                                        tf(mono) + s);
               }});
  v.push_back({"rt.monodromy", "vanishing phi implies trivial local monodromy", [o0, w](bool m) {
                 std::vector<PairBD> pairs{build_pair(w)};
                 if (o0.divisor.degree()) pairs.push_back(perturbed_pair(o0, 1));
                 bool ok = true;
                 for (auto& p : pairs) {
                   bool zero = true;
                   for (auto& x : p.D.divisor.points())
                     zero = zero && phi_obstruction(p, x, PhiMethod::Residue).value.is_zero();
                   PairBD q = p;
                   if (m && q.D.divisor.degree()) q.D.A(1, 0) += RatFunc(1), q.D.A(2, 1) += RatFunc(1);
                   if (m && q.D.divisor.degree() == 0) return Outcome{Status::Fail, "mutated"};
                   ok = ok && (!zero || monodromy_trivial(q));
                 }
                 return verdict(ok, std::to_string(pairs.size()) + " pairs checked");
               }});
  (void)S;
  return v;
}

SuiteReport run_roundtrip(const std::string& sigma, const SuiteOptions& o) {
  RatFunc s = parse_ratfunc(sigma);
  if (!s.is_poly()) fail(ErrKind::Usage, "sigma must be a polynomial");
  Sl2Oper m = build_sl2_model(s.num());
  return run_suite("roundtrip", {{"sigma", s.num().str()}}, roundtrip_checks(m, o), o);
}

}  // namespace bop
