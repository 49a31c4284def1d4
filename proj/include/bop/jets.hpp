#pragma once

#include <string>
#include <utility>

#include "bop/exact.hpp"

namespace bop {

// K^b (x) O(S)^m; TX is b = -1.
struct BundleSymbol {
  int b = -1;
  int m = 0;
  friend BundleSymbol operator*(BundleSymbol x, BundleSymbol y) { return {x.b + y.b, x.m + y.m}; }
  friend bool operator==(const BundleSymbol&, const BundleSymbol&) = default;
};

inline constexpr BundleSymbol kTX{-1, 0};
inline constexpr BundleSymbol kTT{-1, 1};  // TX (x) O(S)
inline constexpr BundleSymbol kK{1, 0};

struct JetFrame {
  std::string chart = "affine";
  BundleSymbol sym = kTX;
  std::string convention = "raw-derivative";
  friend bool operator==(const JetFrame&, const JetFrame&) = default;
  std::string str() const;
};

void require_same_frame(const JetFrame& a, const JetFrame& b);

struct JetVec {
  int k = 0;
  SVec comps;
  JetFrame frame;
  friend bool operator==(const JetVec&, const JetVec&) = default;
};

JetVec jet_of(const TruncSeries& f, int k, const Scalar& p, const JetFrame& fr = {});
JetVec jet_project(const JetVec& v);
std::pair<JetVec, JetVec> nested_jet(const JetVec& v);
JetVec add(const JetVec& a, const JetVec& b);

// Maps z-jets of a section to w-jets under w = phi(z), for the bundle L.
Mat<TruncSeries> jet_transition_matrix(const TruncSeries& phi, BundleSymbol L, int k);
RMat jet_transition_matrix(const RatFunc& phi, BundleSymbol L, int k);
TruncSeries det_jet_transition(const TruncSeries& phi);

// F1 = {v0 = v1 = 0}, F2 = {v0 = 0} in order-2 jet coordinates.
namespace filt {
inline bool in_F1(const SVec& v) { return v[0].is_zero() && v[1].is_zero(); }
inline bool in_F2(const SVec& v) { return v[0].is_zero(); }
inline SVec e(int i) {
  SVec v(3, Scalar(0));
  v[i] = Scalar(1);
  return v;
}
}  // namespace filt

}  // namespace bop
