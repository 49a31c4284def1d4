#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bop/error.hpp"

namespace bop {

using Q = mpq_class;

// Gaussian rational re + im*i.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}
  Scalar(int v) : re_(v), im_(0) {}
  Scalar(Q re, Q im = 0);

  static Scalar frac(long n, long d);
  static Scalar I() { return Scalar(Q(0), Q(1)); }

  const Q& re() const { return re_; }
  const Q& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const { return is_real() && re_.get_den() == 1; }
  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // Total order (re, then im); only used for canonical sorting.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    return a.re_ < b.re_ || (a.re_ == b.re_ && a.im_ < b.im_);
  }

  Scalar pow(long e) const;
  // "a/b+c/d*i" style; real values print without the imaginary part.
  std::string str() const;

 private:
  Q re_, im_;
};

Scalar factorial(int n);

// Coefficients ascending, trailing zeros stripped.
class Poly {
 public:
  Poly() = default;
  Poly(const Scalar& c);
  Poly(long c) : Poly(Scalar(c)) {}
  Poly(int c) : Poly(Scalar(c)) {}
  explicit Poly(std::vector<Scalar> c);
  static Poly z() { return Poly(std::vector<Scalar>{Scalar(0), Scalar(1)}); }
  static Poly monomial(const Scalar& c, int k);

  const std::vector<Scalar>& coeffs() const { return c_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int k) const { return k >= 0 && k < (int)c_.size() ? c_[k] : Scalar(0); }
  Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }

  Scalar eval(const Scalar& x) const;
  Poly deriv() const;
  Poly monic() const;
  // q(t) = f(p + t).
  Poly shifted(const Scalar& p) const;
  int order_at(const Scalar& p) const;
  Poly pow(int e) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  static Poly gcd(Poly a, Poly b);

  std::string str(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

// num/den with gcd 1 and monic den.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(long c) : RatFunc(Poly(c)) {}
  RatFunc(int c) : RatFunc(Poly(c)) {}
  RatFunc(const Scalar& c) : RatFunc(Poly(c)) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}
  RatFunc(const Poly& n, const Poly& d);
  static RatFunc z() { return RatFunc(Poly::z()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_const() const { return num_.deg() <= 0 && den_.deg() == 0; }
  bool is_poly() const { return den_.deg() == 0; }
  Scalar const_value() const { return num_.coeff(0); }

  Scalar eval(const Scalar& x) const;
  // Valuation at p; large positive sentinel for zero.
  int order_at(const Scalar& p) const;
  bool has_pole_at(const Scalar& p) const { return den_.eval(p).is_zero(); }
  RatFunc deriv() const;
  RatFunc compose(const RatFunc& g) const;
  RatFunc pow(int e) const;

  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // "(num)/(den)"
  std::string str(const std::string& var = "z") const;

 private:
  RatFunc(Poly n, Poly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
  Poly num_, den_;
};

constexpr int kZeroOrder = 1 << 28;

// Sum_{e=val}^{order} c[e-val] (z-center)^e + O((z-center)^(order+1)).
class TruncSeries {
 public:
  TruncSeries() : center_(0), val_(1), order_(0) {}
  TruncSeries(Scalar center, int val, std::vector<Scalar> coeffs, int order);
  static TruncSeries constant(const Scalar& c, const Scalar& center, int order);
  static TruncSeries variable(const Scalar& center, int order);  // z itself

  const Scalar& center() const { return center_; }
  int valuation() const { return val_; }
  int order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(int e) const;

  TruncSeries deriv() const;
  TruncSeries inverse() const;
  TruncSeries truncate(int order) const;
  // this(g(z)); this centered at g(center), g Taylor.
  TruncSeries compose(const TruncSeries& g) const;
  TruncSeries pow(int e) const;

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const Scalar& s, const TruncSeries& a);
  // Equal on all retained coefficients (up to the smaller order).
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  std::string str() const;

 private:
  void normalize();
  Scalar center_;
  int val_;
  std::vector<Scalar> coeffs_;
  int order_;
};

TruncSeries series_expand(const RatFunc& f, const Scalar& center, int order);
Scalar residue_at(const RatFunc& w, const Scalar& p);

// Small dense matrices.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t r, std::size_t c, const T& fill = T()) : r_(r), c_(c), a_(r * c, fill) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (auto& row : rows) a_.insert(a_.end(), row.begin(), row.end());
  }
  static Mat identity(std::size_t n) {
    Mat m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Mat transpose() const {
    Mat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }
  template <class F>
  auto map(F f) const -> Mat<decltype(f(std::declval<T>()))> {
    Mat<decltype(f(std::declval<T>()))> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
  }
  Mat operator-() const {
    Mat m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < b.c_; ++j) {
        T s = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.c_; ++k) s = s + a(i, k) * b(k, j);
        m(i, j) = s;
      }
    return m;
  }
  friend Mat operator*(const T& s, const Mat& a) {
    Mat m = a;
    for (auto& x : m.a_) x = s * x;
    return m;
  }
  friend std::vector<T> operator*(const Mat& a, const std::vector<T>& v) {
    std::vector<T> out(a.r_);
    for (std::size_t i = 0; i < a.r_; ++i) {
      T s = a(i, 0) * v[0];
      for (std::size_t k = 1; k < a.c_; ++k) s = s + a(i, k) * v[k];
      out[i] = s;
    }
    return out;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using SMat = Mat<Scalar>;
using RMat = Mat<RatFunc>;
using SVec = std::vector<Scalar>;
using RVec = std::vector<RatFunc>;

// Laplace expansion; fine for the sizes used here (n <= 4).
template <class T>
T det(const Mat<T>& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T acc;
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    Mat<T> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    T term = m(0, j) * det(minor);
    if (first) {
      acc = (j % 2 == 0) ? term : -term;
      first = false;
    } else {
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
  }
  return acc;
}

template <class T>
T trace(const Mat<T>& m) {
  T s = m(0, 0);
  for (std::size_t i = 1; i < m.rows(); ++i) s = s + m(i, i);
  return s;
}

RMat inverse(const RMat& m);
SMat inverse(const SMat& m);
RMat deriv(const RMat& m);
SMat eval(const RMat& m, const Scalar& p);
RMat to_rat(const SMat& m);
bool is_zero(const RMat& m);
bool is_zero(const SMat& m);
std::size_t rank(const SMat& m);
// Basis of the kernel, each vector scaled so its first nonzero entry is 1.
std::vector<SVec> kernel(const SMat& m);
SVec normalize_first_nonzero(SVec v);
SMat from_cols(const std::vector<SVec>& cols);
// Solves m x = b; throws if singular.
SVec solve(const SMat& m, const SVec& b);
// Coefficient matrix of (z-p)^e in the Laurent expansion.
SMat laurent_coeff(const RMat& m, const Scalar& p, int e);
int min_order_at(const RMat& m, const Scalar& p);

std::vector<TruncSeries> solve_flat_sections(const RMat& A, const Scalar& p, const SVec& init, int order);

struct EigenData {
  std::vector<long> eigenvalues;  // ascending, with multiplicity
  std::vector<std::pair<long, std::vector<SVec>>> spaces;  // one entry per distinct eigenvalue
  const std::vector<SVec>& space(long lambda) const;
  long algebraic(long lambda) const;
};
EigenData integer_eigendata(const SMat& m);
Poly char_poly(const SMat& m);

// Exact roots in Q(i); throws UnsupportedDivisor when some root lies outside.
std::vector<Scalar> roots_qi(const Poly& p);
bool is_squarefree(const Poly& p);

// Expression parser: + - * / ^ parentheses, integers, i, one variable.
RatFunc parse_ratfunc(const std::string& s, const std::string& var = "z", int line = 1, int col0 = 1);
Scalar parse_scalar(const std::string& s, int line = 1, int col0 = 1);

}  // namespace bop
