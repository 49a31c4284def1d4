#include "bop/logconn.hpp"

#include <algorithm>

namespace bop {

BranchDivisor::BranchDivisor(std::vector<Scalar> pts) : pts_(std::move(pts)) {
  std::sort(pts_.begin(), pts_.end());
  for (std::size_t k = 1; k < pts_.size(); ++k)
    if (pts_[k] == pts_[k - 1]) fail(ErrKind::NonReducedDivisor, "repeated point " + pts_[k].str());
}

bool BranchDivisor::contains(const Scalar& p) const { return std::find(pts_.begin(), pts_.end(), p) != pts_.end(); }

Poly BranchDivisor::poly() const {
  Poly r(1);
  for (auto& p : pts_) r = r * Poly(std::vector<Scalar>{-p, Scalar(1)});
  return r;
}

std::vector<std::string> log_violations(const RMat& A, const BranchDivisor& S) {
  std::vector<std::string> out;
  Poly P = S.poly();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const RatFunc& a = A(i, j);
      // den must divide P
      if (!Poly::divmod(P, a.den()).second.is_zero())
        out.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + a.str() +
                      " has a pole of order > 1 or off the divisor");
    }
  return out;
}

LogConnection make_log_connection(RMat A, BranchDivisor S, JetFrame frame) {
  auto v = log_violations(A, S);
  if (!v.empty()) fail(ErrKind::NotLogarithmic, v.front());
  return {std::move(A), std::move(S), std::move(frame)};
}

SMat residue_matrix(const RMat& A, const Scalar& p) { return A.map([&](const RatFunc& f) { return residue_at(f, p); }); }

std::vector<SVec> ResidueReport::space(long lambda) const {
  for (auto& [l, v] : eigenspaces)
    if (l == lambda) return v;
  return {};
}

ResidueReport residue(const LogConnection& D, const Scalar& p) {
  ResidueReport r;
  r.point = p;
  r.matrix = D.divisor.contains(p) ? residue_matrix(D.A, p) : SMat(3, 3, Scalar(0));
  EigenData ed = integer_eigendata(r.matrix);
  r.eigenvalues = ed.eigenvalues;
  r.eigenspaces = ed.spaces;
  std::size_t geo = 0;
  for (auto& s : ed.spaces) geo += s.second.size();
  r.nilpotent_part_zero = geo == r.matrix.rows();
  return r;
}

RMat branch_adapted_frame(const BranchDivisor& S, int n) {
  Poly P = S.poly();
  RMat T = RMat::identity(3);
  T(2, 1) = RatFunc(Poly(n) * P.deriv(), P);
  return T;
}

RMat branched_model_raw_frame(int n) {
  if (n < 1) fail(ErrKind::Usage, "branching order must be >= 1");
  // u(w) d/dw with w = x^(n+1) becomes u(x^(n+1)) / ((n+1) x^n) d/dx; times x^n in the twisted frame.
  RMat g(3, 3, RatFunc());
  for (int j = 0; j < 3; ++j) {
    RatFunc f(Poly::monomial(Scalar::frac(1, n + 1), (n + 1) * j));
    for (int i = 0; i < 3; ++i, f = f.deriv()) g(i, j) = f;
  }
  return g;
}

LogConnection branched_model_connection(int n) {
  BranchDivisor S({Scalar(0)});
  RMat T = branch_adapted_frame(S, n);
  RMat Y = inverse(T) * branched_model_raw_frame(n);
  RMat A = -(deriv(Y) * inverse(Y));
  return make_log_connection(A, S, JetFrame{"model", BundleSymbol{-1, n}, "branch-adapted"});
}

RatFunc sff_log(const LogConnection& D, int level) { return sff(D.A, level); }

std::vector<SVec> pipeline_subspace(const SMat& R, long lambda, SubspacePolicy policy) {
  const std::size_t n = R.rows();
  SMat M = R - Scalar(lambda) * SMat::identity(n);
  if (policy == SubspacePolicy::Exact) {
    EigenData ed = integer_eigendata(R);
    auto k = kernel(M);
    if ((long)k.size() != ed.algebraic(lambda))
      fail(ErrKind::EigenspaceDimensionMismatch, "eigenvalue " + std::to_string(lambda) + ": geometric " +
                                                     std::to_string(k.size()) + " vs algebraic " +
                                                     std::to_string(ed.algebraic(lambda)));
    return k;
  }
  SMat Mn = SMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) Mn = Mn * M;
  return kernel(Mn);
}

namespace {

// Coordinates of R l_i in the basis L (L must be R-stable).
SMat restrict_to(const SMat& R, const std::vector<SVec>& L) {
  const std::size_t r = L.size();
  SMat basis = from_cols(L);
  // r independent rows of the basis
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < basis.rows() && rows.size() < r; ++i) {
    rows.push_back(i);
    SMat sub(rows.size(), r);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < r; ++b) sub(a, b) = basis(rows[a], b);
    if (rank(sub) < rows.size()) rows.pop_back();
  }
  SMat sq(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) sq(a, b) = basis(rows[a], b);
  SMat out(r, r, Scalar(0));
  for (std::size_t i = 0; i < r; ++i) {
    SVec w = R * L[i], rhs(r);
    for (std::size_t a = 0; a < r; ++a) rhs[a] = w[rows[a]];
    SVec c = solve(sq, rhs);
    for (std::size_t k = 0; k < r; ++k) out(k, i) = c[k];
  }
  return out;
}

bool preserves(const SMat& R, const std::vector<SVec>& L) {
  std::vector<SVec> cols = L;
  for (auto& l : L) cols.push_back(R * l);
  return rank(from_cols(cols)) == L.size();
}

}  // namespace

std::vector<long> predicted_spectrum(const SMat& R, const std::vector<SVec>& L) {
  std::vector<long> all = integer_eigendata(R).eigenvalues, on;
  if (!L.empty()) on = integer_eigendata(restrict_to(R, L)).eigenvalues;
  std::vector<long> out = on;
  for (long x : on) all.erase(std::find(all.begin(), all.end(), x));
  for (long x : all) out.push_back(x + 1);
  std::sort(out.begin(), out.end());
  return out;
}

HeckeResult hecke_modify(const LogConnection& D, const Scalar& p, const std::vector<SVec>& L,
                         SubspacePolicy policy) {
  const std::size_t n = D.A.rows();
  if (!L.empty() && rank(from_cols(L)) != L.size()) fail(ErrKind::EigenspaceDimensionMismatch, "L is not independent");
  if (L.size() == n) return {D, RMat::identity(n)};
  SMat R = residue_matrix(D.A, p);
  if (!preserves(R, L)) fail(ErrKind::ResidueDoesNotPreserve, "residue at " + p.str() + " does not preserve L");
  if (policy == SubspacePolicy::Exact && !L.empty()) {
    SMat RL = restrict_to(R, L);
    EigenData ed = integer_eigendata(RL);
    std::size_t geo = 0;
    for (auto& s : ed.spaces) geo += s.second.size();
    if (geo != L.size()) fail(ErrKind::EigenspaceDimensionMismatch, "L is not spanned by residue eigenvectors");
  }
  std::vector<SVec> comp;
  std::vector<SVec> acc = L;
  for (std::size_t j = 0; j < n && acc.size() < n; ++j) {
    acc.push_back(filt::e((int)j));
    if (rank(from_cols(acc)) == acc.size())
      comp.push_back(filt::e((int)j));
    else
      acc.pop_back();
  }
  RatFunc t(Poly(std::vector<Scalar>{-p, Scalar(1)}));
  RMat g(n, n, RatFunc());
  std::size_t c = 0;
  for (auto& v : comp) {
    for (std::size_t i = 0; i < n; ++i) g(i, c) = t * RatFunc(v[i]);
    ++c;
  }
  for (auto& v : L) {
    for (std::size_t i = 0; i < n; ++i) g(i, c) = RatFunc(v[i]);
    ++c;
  }
  JetFrame fr = D.frame;
  fr.convention += "+hecke";
  return {make_log_connection(gauge(D.A, g), D.divisor, fr), g};
}

bool is_regular_at(const LogConnection& D, const Scalar& p) {
  for (std::size_t i = 0; i < D.A.rows(); ++i)
    for (std::size_t j = 0; j < D.A.cols(); ++j)
      if (D.A(i, j).has_pole_at(p)) return false;
  return true;
}

}  // namespace bop
