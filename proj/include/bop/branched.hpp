#pragma once

#include <array>
#include <string>
#include <vector>

#include "bop/logconn.hpp"

namespace bop {

// Flat rank-3 data with a form and the generator of the first filtration step.
struct WData {
  RMat A_W;
  RMat B_W;
  RVec n_hat;
  BranchDivisor divisor;
};

struct Sl2Oper {
  Poly sigma;
  BranchDivisor divisor;
  Scalar lead;  // sigma' = lead * divisor.poly()
  RMat B_W;     // trace form in the basis (E, H, F)
  RVec F1;
  std::array<RVec, 2> F2;
  RMat D_W;
  WData wdata() const { return {D_W, B_W, F1, divisor}; }
};

Sl2Oper build_sl2_model(const Poly& sigma);

struct BranchedOperConditions {
  bool isotropic = false, perp = false, preserves_B = false, det_trivial = false, d_f1_in_f2 = false,
       sff_canonical = false;
  bool all() const { return isotropic && perp && preserves_B && det_trivial && d_f1_in_f2 && sff_canonical; }
};

BranchedOperConditions branched_oper_conditions(const Sl2Oper& o);
// Scalar form of D(F1) -> F2/F1 in the frames (F1, (0,1,2 sigma)), sign fixed as for D0.
RatFunc sl2_sff(const Sl2Oper& o);

// Rows: q0 and its first two derivatives along flat extensions, in raw jets.
RMat phi_map_raw(const WData& w);
// Same, in the branch-adapted jet frame.
RMat phi_map(const WData& w);
// Value of phi_map at x0 computed from formal flat sections.
SMat phi_map_at(const WData& w, const Scalar& x0, int N = 3);

struct FrameDecl {
  Scalar point;
  long eigenvalue;
  SVec vec;
  friend bool operator==(const FrameDecl&, const FrameDecl&) = default;
};

struct PairBD {
  BilinearTwisted B;
  LogConnection D;
  std::vector<FrameDecl> frames;
  std::string var = "z";
};

PairBD build_pair(const WData& w);
inline PairBD build_pair(const Sl2Oper& o) { return build_pair(o.wdata()); }
// Adds c (E_10 + E_21) to the connection matrix; keeps conditions (1)-(5), phi = c.
PairBD perturbed_pair(const Sl2Oper& o, const Scalar& c);
// Normalized residue eigenvectors at each branch point, for eigenvalues -2, -1, 0.
std::vector<FrameDecl> eigenframes(const PairBD& p);

struct PairConditions {
  std::array<bool, 5> ok{};
  std::array<std::string, 5> detail;
  bool all() const { return ok[0] && ok[1] && ok[2] && ok[3] && ok[4]; }
};

PairConditions pair_conditions(const PairBD& p);

enum class PhiMethod { Ledger, Residue };

struct PhiReport {
  Scalar point;
  Scalar value;
  PhiMethod method;
};

const char* method_name(PhiMethod m);
// tail: optional extra O(t^2) term of the extension, to test independence of the choice.
PhiReport phi_obstruction(const PairBD& p, const Scalar& x, PhiMethod method, const RVec* tail = nullptr);

struct CriterionResult {
  bool is_branched_oper = false;
  PairConditions conditions;
  std::vector<PhiReport> phi;
  std::string reason;
};

CriterionResult oper_criterion(const PairBD& p);
bool monodromy_trivial(const PairBD& p);

struct StageSpectra {
  Scalar point;
  std::vector<long> before, after1, after2;
};

struct Reconstruction {
  RMat frame;  // lattice frame in jet coordinates
  RMat A;
  RMat B;
  RVec F1;         // generator, primitive polynomial vector
  RVec F2_normal;  // F2 = kernel of this covector
  std::vector<StageSpectra> spectra;
  WData wdata() const;
};

Reconstruction reconstruct_oper(const PairBD& p);

struct RoundTrip {
  bool ok = false;
  RMat C;   // reconstructed frame in model coordinates
  SMat K0;  // C at the base point
  std::vector<std::pair<std::string, bool>> checks;
};

RoundTrip compare_with_model(const WData& model, const Reconstruction& r);
bool same_pair(const PairBD& a, const PairBD& b);

}  // namespace bop
