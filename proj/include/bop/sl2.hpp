#pragma once

#include <optional>

#include "bop/exact.hpp"

namespace bop {

// Trace-free 2x2; construction rejects nonzero trace.
class Sl2Elt {
 public:
  explicit Sl2Elt(SMat m);
  const SMat& m() const { return m_; }

 private:
  SMat m_;
};

Sl2Elt sl2_bracket(const Sl2Elt& a, const Sl2Elt& b);

// (a,b;c,d) -> (b + (a-d)z - c z^2) d/dz
Poly sl2_to_vf(const Sl2Elt& x);
Poly sl2_to_vf(const SMat& m);

// [u d, v d] = (u v' - v u') d
Poly vf_bracket(const Poly& u, const Poly& v);
TruncSeries vf_bracket(const TruncSeries& u, const TruncSeries& v);

// Coordinates of a field of degree <= 2 in the basis (d, z d, z^2 d).
SVec vf_coords(const Poly& p);
Poly vf_from_coords(const SVec& c);
// ad(u) in the basis (d, z d, z^2 d).
SMat vf_ad(const Poly& u);

// kappa_jk = trace(ad(u_j) ad(u_k)) for the basis (d, z d, z^2 d).
SMat killing_matrix();

class MoebiusMap {
 public:
  // Scaled so the denominator c z + d is monic; equality is projective.
  explicit MoebiusMap(SMat m);
  static MoebiusMap identity();
  const SMat& m() const { return m_; }
  RatFunc as_ratfunc() const;
  RatFunc apply(const RatFunc& f) const { return as_ratfunc().compose(f); }
  MoebiusMap compose(const MoebiusMap& o) const;  // this after o
  MoebiusMap inverse() const;
  friend bool operator==(const MoebiusMap& a, const MoebiusMap& b) { return a.m_ == b.m_; }

 private:
  SMat m_;
};

std::optional<MoebiusMap> is_moebius(const RatFunc& f);

}  // namespace bop
