#include "bop/exact.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace bop {

const char* kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::PoleAtBasepoint: return "PoleAtBasepoint";
    case ErrKind::PoleAtPoint: return "PoleAtPoint";
    case ErrKind::NonIntegerEigenvalue: return "NonIntegerEigenvalue";
    case ErrKind::NonTraceless: return "NonTraceless";
    case ErrKind::NonInvertibleChart: return "NonInvertibleChart";
    case ErrKind::NotNested: return "NotNested";
    case ErrKind::NotLogarithmic: return "NotLogarithmic";
    case ErrKind::ResidueDoesNotPreserve: return "ResidueDoesNotPreserve";
    case ErrKind::EigenspaceDimensionMismatch: return "EigenspaceDimensionMismatch";
    case ErrKind::NonReducedDivisor: return "NonReducedDivisor";
    case ErrKind::UnsupportedDivisor: return "UnsupportedDivisor";
    case ErrKind::ConditionViolation: return "ConditionViolation";
    case ErrKind::NotAnOper: return "NotAnOper";
    case ErrKind::FrameMismatch: return "FrameMismatch";
    case ErrKind::Truncation: return "Truncation";
    case ErrKind::DivisionByZero: return "DivisionByZero";
    case ErrKind::Parse: return "ParseError";
    case ErrKind::Usage: return "UsageError";
  }
  return "Error";
}

// ---- Scalar

Scalar::Scalar(Q re, Q im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::frac(long n, long d) {
  if (d == 0) fail(ErrKind::DivisionByZero, "zero denominator");
  return Scalar(Q(n, d));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Q r = re_ * o.re_ - im_ * o.im_;
  Q i = re_ * o.im_ + im_ * o.re_;
  re_ = r;
  im_ = i;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) fail(ErrKind::DivisionByZero, "scalar division by zero");
  Q n = o.re_ * o.re_ + o.im_ * o.im_;
  Q r = (re_ * o.re_ + im_ * o.im_) / n;
  Q i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = r;
  im_ = i;
  return *this;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  Q a = abs(im_);
  std::string ims = a.get_str() + "*i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + ims;
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + ims;
}

Scalar factorial(int n) {
  Scalar r(1);
  for (int k = 2; k <= n; ++k) r *= Scalar(k);
  return r;
}

// ---- Poly

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

Poly Poly::monomial(const Scalar& c, int k) {
  std::vector<Scalar> v(k + 1, Scalar(0));
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Poly Poly::deriv() const {
  std::vector<Scalar> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Scalar((long)k));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Scalar l = lead();
  std::vector<Scalar> v = c_;
  for (auto& x : v) x /= l;
  return Poly(std::move(v));
}

Poly Poly::shifted(const Scalar& p) const {
  Poly lin(std::vector<Scalar>{p, Scalar(1)});
  Poly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Poly(*it);
  return r;
}

int Poly::order_at(const Scalar& p) const {
  if (is_zero()) return kZeroOrder;
  Poly s = shifted(p);
  int k = 0;
  while (s.coeffs()[k].is_zero()) ++k;
  return k;
}

Poly Poly::pow(int e) const {
  Poly r(1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::operator-() const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x = -x;
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()), Scalar(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrKind::DivisionByZero, "polynomial division by zero");
  std::vector<Scalar> r = a.c_;
  int db = b.deg();
  if (a.deg() < db) return {Poly(), a};
  std::vector<Scalar> q(a.deg() - db + 1, Scalar(0));
  Scalar lb = b.lead();
  for (int k = a.deg(); k >= db; --k) {
    Scalar c = r[k] / lb;
    q[k - db] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= c * b.c_[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Scalar& c = c_[k];
    if (c.is_zero()) continue;
    std::string t;
    if (k == 0) {
      t = c.str();
    } else {
      if (c == Scalar(1)) {
      } else if (c == Scalar(-1)) {
        t = "-";
      } else if (c.is_real() || sgn(c.re()) == 0) {
        t = c.str() + "*";
      } else {
        t = "(" + c.str() + ")*";
      }
      t += var;
      if (k > 1) t += "^" + std::to_string(k);
    }
    if (!out.empty() && t[0] != '-') out += "+";
    out += t;
  }
  return out;
}

// ---- RatFunc

RatFunc::RatFunc(const Poly& n, const Poly& d) {
  if (d.is_zero()) fail(ErrKind::DivisionByZero, "rational function with zero denominator");
  if (n.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(n, d);
  Poly nn = Poly::divmod(n, g).first;
  Poly dd = Poly::divmod(d, g).first;
  Scalar l = dd.lead();
  num_ = Poly(Scalar(1) / l) * nn;
  den_ = dd.monic();
}

Scalar RatFunc::eval(const Scalar& x) const {
  Scalar d = den_.eval(x);
  if (d.is_zero()) fail(ErrKind::PoleAtPoint, "pole at " + x.str());
  return num_.eval(x) / d;
}

int RatFunc::order_at(const Scalar& p) const {
  if (is_zero()) return kZeroOrder;
  return num_.order_at(p) - den_.order_at(p);
}

RatFunc RatFunc::deriv() const {
  return RatFunc(num_.deriv() * den_ - num_ * den_.deriv(), den_ * den_);
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  auto horner = [&](const Poly& p) {
    RatFunc r;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * g + RatFunc(*it);
    return r;
  };
  return horner(num_) / horner(den_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(1) / pow(-e);
  return RatFunc(num_.pow(e), den_.pow(e));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) fail(ErrKind::DivisionByZero, "rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::str(const std::string& var) const {
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

// ---- TruncSeries

TruncSeries::TruncSeries(Scalar center, int val, std::vector<Scalar> coeffs, int order)
    : center_(std::move(center)), val_(val), coeffs_(std::move(coeffs)), order_(order) {
  int n = order_ - val_ + 1;
  if (n < 0) n = 0;
  coeffs_.resize(n, Scalar(0));
  normalize();
}

TruncSeries TruncSeries::constant(const Scalar& c, const Scalar& center, int order) {
  return TruncSeries(center, 0, {c}, order);
}

TruncSeries TruncSeries::variable(const Scalar& center, int order) {
  return TruncSeries(center, 0, {center, Scalar(1)}, order);
}

void TruncSeries::normalize() {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k].is_zero()) ++k;
  if (k == coeffs_.size()) {
    coeffs_.clear();
    val_ = order_ + 1;
    return;
  }
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + k);
  val_ += (int)k;
}

Scalar TruncSeries::coeff(int e) const {
  if (e > order_) fail(ErrKind::Truncation, "coefficient " + std::to_string(e) + " beyond order " + std::to_string(order_));
  if (e < val_) return Scalar(0);
  std::size_t k = e - val_;
  return k < coeffs_.size() ? coeffs_[k] : Scalar(0);
}

TruncSeries TruncSeries::truncate(int order) const {
  if (order >= order_) return *this;
  std::vector<Scalar> c;
  for (int e = val_; e <= order; ++e) c.push_back(coeff(e));
  return TruncSeries(center_, std::min(val_, order + 1), c, order);
}

TruncSeries TruncSeries::deriv() const {
  std::vector<Scalar> c;
  int v = val_ - 1;
  for (int e = val_; e <= order_; ++e) c.push_back(coeff(e) * Scalar(e));
  return TruncSeries(center_, v, c, order_ - 1);
}

TruncSeries TruncSeries::inverse() const {
  if (is_zero()) fail(ErrKind::DivisionByZero, "inverse of a zero series");
  int len = order_ - val_;
  std::vector<Scalar> b(len + 1);
  Scalar u0 = coeffs_[0];
  b[0] = Scalar(1) / u0;
  for (int n = 1; n <= len; ++n) {
    Scalar s(0);
    for (int k = 1; k <= n; ++k) s += coeff(val_ + k) * b[n - k];
    b[n] = -s / u0;
  }
  return TruncSeries(center_, -val_, b, order_ - 2 * val_);
}

TruncSeries TruncSeries::operator-() const {
  std::vector<Scalar> c = coeffs_;
  for (auto& x : c) x = -x;
  return TruncSeries(center_, val_, c, order_);
}

static void same_center(const TruncSeries& a, const TruncSeries& b) {
  if (a.center() != b.center()) fail(ErrKind::FrameMismatch, "series centers differ");
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  same_center(a, b);
  int order = std::min(a.order_, b.order_);
  int v = std::min(a.val_, b.val_);
  std::vector<Scalar> c;
  for (int e = v; e <= order; ++e) c.push_back(a.coeff(e) + b.coeff(e));
  return TruncSeries(a.center_, v, c, order);
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  same_center(a, b);
  int order = std::min(a.order_ + b.val_, b.order_ + a.val_);
  int v = a.val_ + b.val_;
  std::vector<Scalar> c;
  for (int e = v; e <= order; ++e) {
    Scalar s(0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      int j = e - (a.val_ + (int)i) - b.val_;
      if (j < 0) break;
      if (j < (int)b.coeffs_.size()) s += a.coeffs_[i] * b.coeffs_[j];
    }
    c.push_back(s);
  }
  return TruncSeries(a.center_, v, c, order);
}

TruncSeries operator*(const Scalar& s, const TruncSeries& a) {
  std::vector<Scalar> c = a.coeffs_;
  for (auto& x : c) x = s * x;
  return TruncSeries(a.center_, a.val_, c, a.order_);
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (a.center_ != b.center_) return false;
  int order = std::min(a.order_, b.order_);
  for (int e = std::min(a.val_, b.val_); e <= order; ++e)
    if (a.coeff(e) != b.coeff(e)) return false;
  return true;
}

TruncSeries TruncSeries::compose(const TruncSeries& g) const {
  if (val_ < 0) fail(ErrKind::PoleAtPoint, "compose: outer series has a pole");
  if (g.valuation() < 0 || g.coeff(0) != center_)
    fail(ErrKind::NonInvertibleChart, "compose: inner series does not hit the outer center");
  TruncSeries h = g - TruncSeries::constant(center_, g.center(), g.order());
  int order = std::min(g.order(), order_);
  TruncSeries r = TruncSeries::constant(coeff(order), g.center(), order);
  for (int k = order - 1; k >= 0; --k)
    r = (r * h + TruncSeries::constant(coeff(k), g.center(), order)).truncate(order);
  return r;
}

TruncSeries TruncSeries::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  TruncSeries r = TruncSeries::constant(Scalar(1), center_, order_ - (val_ < 0 ? e * val_ : 0));
  for (int k = 0; k < e; ++k) r = r * *this;
  return r;
}

std::string TruncSeries::str() const {
  std::ostringstream os;
  os << "[" << center_.str() << "; ";
  for (int e = val_; e <= order_; ++e) os << coeff(e).str() << "@" << e << " ";
  os << "+O(" << order_ + 1 << ")]";
  return os.str();
}

TruncSeries series_expand(const RatFunc& f, const Scalar& center, int order) {
  if (f.is_zero()) return TruncSeries(center, order + 1, {}, order);
  Poly n = f.num().shifted(center), d = f.den().shifted(center);
  int vn = 0, vd = 0;
  while (n.coeffs()[vn].is_zero()) ++vn;
  while (d.coeffs()[vd].is_zero()) ++vd;
  int v = vn - vd;
  int len = order - v;
  if (len < 0) return TruncSeries(center, order + 1, {}, order);
  std::vector<Scalar> q(len + 1);
  Scalar w0 = d.coeff(vd);
  for (int k = 0; k <= len; ++k) {
    Scalar s = n.coeff(vn + k);
    for (int j = 1; j <= k; ++j) s -= d.coeff(vd + j) * q[k - j];
    q[k] = s / w0;
  }
  return TruncSeries(center, v, q, order);
}

Scalar residue_at(const RatFunc& w, const Scalar& p) { return series_expand(w, p, -1).coeff(-1); }

// ---- matrices

RMat inverse(const RMat& m) {
  const std::size_t n = m.rows();
  RatFunc d = det(m);
  if (d.is_zero()) fail(ErrKind::DivisionByZero, "singular matrix");
  if (n == 1) return RMat{{RatFunc(1) / d}};
  RMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RMat minor(n - 1, n - 1);
      for (std::size_t a = 0, aa = 0; a < n; ++a) {
        if (a == i) continue;
        for (std::size_t b = 0, bb = 0; b < n; ++b)
          if (b != j) minor(aa, bb++) = m(a, b);
        ++aa;
      }
      RatFunc c = det(minor);
      if ((i + j) % 2) c = -c;
      inv(j, i) = c / d;
    }
  return inv;
}

namespace {
// Row-reduces in place, returns pivot columns.
std::vector<std::size_t> rref(SMat& a) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    Scalar inv = Scalar(1) / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}
}  // namespace

SMat inverse(const SMat& m) {
  const std::size_t n = m.rows();
  SMat a(n, 2 * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = Scalar(1);
  }
  auto piv = rref(a);
  if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrKind::DivisionByZero, "singular matrix");
  SMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

RMat deriv(const RMat& m) {
  return m.map([](const RatFunc& f) { return f.deriv(); });
}

SMat eval(const RMat& m, const Scalar& p) {
  return m.map([&](const RatFunc& f) { return f.eval(p); });
}

RMat to_rat(const SMat& m) {
  return m.map([](const Scalar& s) { return RatFunc(s); });
}

bool is_zero(const RMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool is_zero(const SMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

std::size_t rank(const SMat& m) {
  SMat a = m;
  return rref(a).size();
}

SVec normalize_first_nonzero(SVec v) {
  for (auto& x : v)
    if (!x.is_zero()) {
      Scalar s = x;
      for (auto& y : v) y /= s;
      break;
    }
  return v;
}

std::vector<SVec> kernel(const SMat& m) {
  SMat a = m;
  auto piv = rref(a);
  std::vector<SVec> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    SVec v(a.cols(), Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, f);
    out.push_back(normalize_first_nonzero(v));
  }
  return out;
}

SMat from_cols(const std::vector<SVec>& cols) {
  SMat m(cols.empty() ? 0 : cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

SVec solve(const SMat& m, const SVec& b) { return inverse(m) * b; }

SMat laurent_coeff(const RMat& m, const Scalar& p, int e) {
  return m.map([&](const RatFunc& f) { return series_expand(f, p, e).coeff(e); });
}

int min_order_at(const RMat& m, const Scalar& p) {
  int o = kZeroOrder;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) o = std::min(o, m(i, j).order_at(p));
  return o;
}

std::vector<TruncSeries> solve_flat_sections(const RMat& A, const Scalar& p, const SVec& init, int order) {
  const std::size_t n = A.rows();
  std::vector<std::vector<std::vector<Scalar>>> a(n, std::vector<std::vector<Scalar>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (A(i, j).has_pole_at(p)) fail(ErrKind::PoleAtBasepoint, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has a pole at " + p.str());
      TruncSeries s = series_expand(A(i, j), p, order);
      for (int k = 0; k <= order; ++k) a[i][j].push_back(s.coeff(k));
    }
  std::vector<std::vector<Scalar>> v(n, std::vector<Scalar>(order + 1, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) v[i][0] = init[i];
  for (int k = 0; k < order; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      Scalar s(0);
      for (std::size_t j = 0; j < n; ++j)
        for (int l = 0; l <= k; ++l) s += a[i][j][l] * v[j][k - l];
      v[i][k + 1] = -s / Scalar(k + 1);
    }
  std::vector<TruncSeries> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(p, 0, v[i], order);
  return out;
}

// ---- eigendata

Poly char_poly(const SMat& m) {
  const std::size_t n = m.rows();
  Poly t = Poly::z();
  Mat<Poly> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? t : Poly()) - Poly(m(i, j));
  return det(a);
}

const std::vector<SVec>& EigenData::space(long lambda) const {
  for (auto& s : spaces)
    if (s.first == lambda) return s.second;
  static const std::vector<SVec> empty;
  return empty;
}

long EigenData::algebraic(long lambda) const {
  return std::count(eigenvalues.begin(), eigenvalues.end(), lambda);
}

EigenData integer_eigendata(const SMat& m) {
  Poly p = char_poly(m);
  for (auto& c : p.coeffs())
    if (!c.is_integer())
      fail(ErrKind::NonIntegerEigenvalue, "characteristic polynomial " + p.str("t") + " has non-integer coefficients");
  EigenData out;
  while (p.deg() > 0) {
    mpz_class c0 = p.coeff(0).re().get_num();
    std::optional<long> root;
    if (c0 == 0) {
      root = 0;
    } else {
      mpz_class a = abs(c0);
      for (mpz_class d = 1; d * d <= a && !root; ++d) {
        if (a % d != 0) continue;
        for (mpz_class cand : {d, mpz_class(-d), mpz_class(a / d), mpz_class(-(a / d))})
          if (cand.fits_slong_p() && p.eval(Scalar(cand.get_si())).is_zero()) {
            root = cand.get_si();
            break;
          }
      }
    }
    if (!root) fail(ErrKind::NonIntegerEigenvalue, "factor " + p.str("t") + " has no integer root");
    out.eigenvalues.push_back(*root);
    p = Poly::divmod(p, Poly(std::vector<Scalar>{Scalar(-*root), Scalar(1)})).first;
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  for (long l : out.eigenvalues) {
    if (!out.spaces.empty() && out.spaces.back().first == l) continue;
    SMat s = m;
    for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) -= Scalar(l);
    out.spaces.emplace_back(l, kernel(s));
  }
  return out;
}

// ---- roots in Q(i)

namespace {

std::optional<Q> rational_sqrt(const Q& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  return Q(sqrt(n), sqrt(d));
}

std::optional<Scalar> gaussian_sqrt(const Scalar& w) {
  auto m = rational_sqrt(w.re() * w.re() + w.im() * w.im());
  if (!m) return std::nullopt;
  auto x = rational_sqrt((w.re() + *m) / 2);
  if (!x) return std::nullopt;
  if (sgn(*x) != 0) return Scalar(*x, w.im() / (2 * *x));
  auto y = rational_sqrt((*m - w.re()) / 2);
  if (!y) return std::nullopt;
  return Scalar(Q(0), *y);
}

std::vector<mpz_class> divisors(mpz_class a) {
  a = abs(a);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= a; ++d)
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  return out;
}

}  // namespace

std::vector<Scalar> roots_qi(const Poly& p0) {
  std::vector<Scalar> roots;
  Poly p = p0.monic();
  auto deflate = [&](const Scalar& r) { p = Poly::divmod(p, Poly(std::vector<Scalar>{-r, Scalar(1)})).first; };
  bool real = std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Scalar& c) { return c.is_real(); });
  if (real) {
    while (p.deg() > 0 && p.coeff(0).is_zero()) {
      roots.push_back(Scalar(0));
      deflate(Scalar(0));
    }
    bool found = true;
    while (p.deg() > 2 && found) {
      found = false;
      mpz_class l = 1;
      for (auto& c : p.coeffs()) l = lcm(l, c.re().get_den());
      mpz_class a0 = Q(p.coeff(0).re() * l).get_num();
      mpz_class an = Q(p.lead().re() * l).get_num();
      for (auto& num : divisors(a0)) {
        for (auto& den : divisors(an)) {
          for (int s : {1, -1}) {
            Scalar c(Q(mpz_class(s * num), den));
            if (p.eval(c).is_zero()) {
              roots.push_back(c);
              deflate(c);
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (found) break;
      }
    }
  }
  if (p.deg() == 1) {
    roots.push_back(-p.coeff(0) / p.coeff(1));
  } else if (p.deg() == 2) {
    Scalar b = p.coeff(1), c = p.coeff(0);
    auto s = gaussian_sqrt(b * b - Scalar(4) * c);
    if (!s) fail(ErrKind::UnsupportedDivisor, "roots of " + p.str() + " are not in Q(i)");
    roots.push_back((-b + *s) / Scalar(2));
    roots.push_back((-b - *s) / Scalar(2));
  } else if (p.deg() > 2) {
    fail(ErrKind::UnsupportedDivisor, "cannot split " + p.str() + " over Q(i)");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_squarefree(const Poly& p) { return Poly::gcd(p, p.deriv()).deg() <= 0; }

// ---- parser

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::string& var, int line, int col0)
      : s_(s), var_(var), line_(line), col0_(col0) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) { throw ParseError(line_, col0_ + (int)pos_, msg); }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*')) {
        r = r * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        RatFunc d = unary();
        if (d.is_zero()) {
          pos_ = at;
          error("division by zero");
        }
        r = r / d;
      } else {
        return r;
      }
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc b = atom();
    if (!eat('^')) return b;
    skip();
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
    if (start == pos_) error("expected integer exponent");
    if (pos_ - start > 3) error("exponent too large");
    int e = std::stoi(s_.substr(start, pos_ - start));
    if (neg && b.is_zero()) error("zero to a negative power");
    return b.pow(neg ? -e : e);
  }
  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit((unsigned char)c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      return RatFunc(Scalar(Q(mpz_class(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "i") return RatFunc(Scalar::I());
      if (!var_.empty() && id == var_) return RatFunc::z();
      pos_ = start;
      error("unknown identifier '" + id + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::string var_;
  int line_, col0_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(const std::string& s, const std::string& var, int line, int col0) {
  return Parser(s, var, line, col0).parse();
}

Scalar parse_scalar(const std::string& s, int line, int col0) {
  RatFunc r = Parser(s, "", line, col0).parse();
  return r.const_value();
}

}  // namespace bop
