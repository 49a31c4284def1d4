#pragma once

#include <random>

#include "bop/exact.hpp"

namespace testh {

using namespace bop;

inline std::mt19937& rng() {
  static std::mt19937 g(20261019);
  return g;
}

inline Scalar rand_q(int lo = -9, int hi = 9, int dmax = 7) {
  std::uniform_int_distribution<int> n(lo, hi), d(1, dmax);
  return Scalar::frac(n(rng()), d(rng()));
}

inline Scalar rand_nonzero(int lo = -9, int hi = 9) {
  for (;;) {
    Scalar s = rand_q(lo, hi);
    if (!s.is_zero()) return s;
  }
}

inline Poly rand_poly(int deg) {
  std::vector<Scalar> c;
  for (int k = 0; k <= deg; ++k) c.push_back(rand_q());
  return Poly(c);
}

inline Poly lin(const Scalar& root) { return Poly(std::vector<Scalar>{-root, Scalar(1)}); }

inline RatFunc rf(const char* s) { return parse_ratfunc(s); }

}  // namespace testh
