#pragma once

#include <optional>

#include "bop/jets.hpp"
#include "bop/sl2.hpp"

namespace bop {

// f d/dz -> (f''' + a2 f'' + a1 f' + a0 f) dz^2
struct ThirdOrderOp {
  RatFunc a2, a1, a0;
  friend bool operator==(const ThirdOrderOp&, const ThirdOrderOp&) = default;
};

// Flat sections satisfy v' + A v = 0.
struct Connection {
  RMat A;
  JetFrame frame;
};

struct BilinearTwisted {
  RMat B;
  int twist = 0;
};

struct OperConditions {
  bool c1 = false, c2 = false, c3 = false;
  bool all() const { return c1 && c2 && c3; }
};

struct EquivarianceReport {
  bool delta0 = false, d0 = false, b0 = false;
  bool all() const { return delta0 && d0 && b0; }
};

Mat<Poly> psi_matrix(int k);
RMat G();

ThirdOrderOp delta0();
RatFunc apply_op(const ThirdOrderOp& op, const RatFunc& f);
TruncSeries apply_op(const ThirdOrderOp& op, const TruncSeries& f);
// Value of the operator on a 3-jet at p.
Scalar apply_op(const ThirdOrderOp& op, const JetVec& v, const Scalar& p);
// Polynomial solutions of op at p modulo z^(N+1): kernel of the truncated operator on
// coefficients 0..N+3, as coefficient vectors.
std::vector<SVec> op_series_kernel(const ThirdOrderOp& op, const Scalar& p, int N);

Connection varpi(const ThirdOrderOp& op);
Connection D0();
std::optional<ThirdOrderOp> companion_op(const Connection& D);

OperConditions oper_conditions(const Connection& D);
// level 1: F1 -> F2/F1, level 2: F2/F1 -> J/F2; sign fixed so that D0 gives 1.
RatFunc sff(const RMat& A, int level);
RatFunc sff(const Connection& D, int level);

BilinearTwisted killing_form_B0();
// B' - A^T B - B A
RMat flatness_defect(const RMat& B, const RMat& A);
// g^{-1} A g + g^{-1} g'
RMat gauge(const RMat& A, const RMat& g);

bool f_d_is_identity(const Connection& D, int N);
bool det_connection_trivial(const Connection& D);
bool bracket_closure(const ThirdOrderOp& op, int N, const Scalar& p = Scalar::frac(1, 3));
bool projective_operator_check(const ThirdOrderOp& op, int N = 8);
bool is_varpi_image(const Connection& D, int N);

EquivarianceReport moebius_equivariance_check(const MoebiusMap& g);
// Same pullbacks for an arbitrary rational chart map.
EquivarianceReport equivariance_check(const RatFunc& g);

}  // namespace bop
