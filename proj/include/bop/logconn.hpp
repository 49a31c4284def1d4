#pragma once

#include <string>
#include <vector>

#include "bop/oper.hpp"

namespace bop {

class BranchDivisor {
 public:
  BranchDivisor() = default;
  // Rejects repeated points; stores them sorted.
  explicit BranchDivisor(std::vector<Scalar> pts);
  const std::vector<Scalar>& points() const { return pts_; }
  std::size_t degree() const { return pts_.size(); }
  bool contains(const Scalar& p) const;
  // Monic polynomial with simple roots at the points.
  Poly poly() const;
  friend bool operator==(const BranchDivisor&, const BranchDivisor&) = default;

 private:
  std::vector<Scalar> pts_;
};

struct LogConnection {
  RMat A;
  BranchDivisor divisor;
  JetFrame frame;
};

// Reasons A fails to be logarithmic along the divisor (empty when it is).
std::vector<std::string> log_violations(const RMat& A, const BranchDivisor& S);
LogConnection make_log_connection(RMat A, BranchDivisor S, JetFrame frame);

struct ResidueReport {
  Scalar point;
  SMat matrix;
  std::vector<long> eigenvalues;
  std::vector<std::pair<long, std::vector<SVec>>> eigenspaces;
  bool nilpotent_part_zero = true;
  // Empty when lambda is not an eigenvalue.
  std::vector<SVec> space(long lambda) const;
};

ResidueReport residue(const LogConnection& D, const Scalar& p);
SMat residue_matrix(const RMat& A, const Scalar& p);

// Frame adapted to the branch point: T = I + (n P'/P) E_21 on raw jets.
RMat branch_adapted_frame(const BranchDivisor& S, int n = 1);
// Raw 2-jets of the pulled-back global fields, in the (TX)(nS) frame.
RMat branched_model_raw_frame(int n);
LogConnection branched_model_connection(int n);

RatFunc sff_log(const LogConnection& D, int level);

enum class SubspacePolicy { Exact, Generalized };

// Eigenspace (Exact, requires geometric = algebraic multiplicity) or generalized eigenspace.
std::vector<SVec> pipeline_subspace(const SMat& R, long lambda, SubspacePolicy policy);

struct HeckeResult {
  LogConnection D;
  RMat frame_map;
};

HeckeResult hecke_modify(const LogConnection& D, const Scalar& p, const std::vector<SVec>& L,
                         SubspacePolicy policy = SubspacePolicy::Exact);
// Spectrum predicted by the transfer law: eigenvalues on L kept, the others shifted by +1.
std::vector<long> predicted_spectrum(const SMat& R, const std::vector<SVec>& L);

bool is_regular_at(const LogConnection& D, const Scalar& p);

}  // namespace bop
