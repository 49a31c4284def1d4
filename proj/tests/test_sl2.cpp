#include "bop/sl2.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bop;
using namespace testh;

namespace {

SMat basis2(int k) {
  // E, H, F
  if (k == 0) return SMat{{0, 1}, {0, 0}};
  if (k == 1) return SMat{{1, 0}, {0, -1}};
  return SMat{{0, 0}, {1, 0}};
}

}  // namespace

TEST_CASE("sl2_to_vf examples") {
  CHECK(sl2_to_vf(SMat{{0, 1}, {0, 0}}) == Poly(1));
  CHECK(sl2_to_vf(SMat{{1, 0}, {0, -1}}) == Poly(2) * Poly::z());
  CHECK(sl2_to_vf(SMat{{0, 0}, {0, 0}}).is_zero());
  CHECK_THROWS_AS(sl2_to_vf(SMat{{1, 0}, {0, 0}}), Error);
}

TEST_CASE("sl2_to_vf reverses the bracket") {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Sl2Elt a(basis2(i)), b(basis2(j));
      CHECK(sl2_to_vf(sl2_bracket(a, b)) == -vf_bracket(sl2_to_vf(a), sl2_to_vf(b)));
      CHECK(sl2_to_vf(sl2_bracket(b, a)) == vf_bracket(sl2_to_vf(a), sl2_to_vf(b)));
    }
}

TEST_CASE("vf_bracket") {
  Poly one(1), z = Poly::z(), z2 = z * z;
  CHECK(vf_bracket(one, z) == one);
  CHECK(vf_bracket(z, z2) == z2);
  CHECK(vf_bracket(z2, z2).is_zero());
  for (int t = 0; t < 10; ++t) {
    Poly u = rand_poly(2), v = rand_poly(2), w = rand_poly(2);
    CHECK(vf_bracket(u, v) == -vf_bracket(v, u));
    CHECK((vf_bracket(u, vf_bracket(v, w)) + vf_bracket(v, vf_bracket(w, u)) + vf_bracket(w, vf_bracket(u, v))).is_zero());
    CHECK(vf_bracket(u, v).deg() <= 2);
  }
  TruncSeries a = series_expand(rf("1/(1-z)"), 0, 6), b = series_expand(rf("z^2"), 0, 6);
  CHECK(vf_bracket(a, b) == series_expand(rf("2*z/(1-z) - z^2/(1-z)^2"), 0, 5));
}

TEST_CASE("killing matrix against trace-of-ad^2 in 2x2 matrices") {
  // The vector fields d, z d, z^2 d correspond to E, H/2, -F.
  std::vector<SMat> m{basis2(0), Scalar::frac(1, 2) * basis2(1), Scalar(-1) * basis2(2)};
  auto coords = [&](const SMat& x) { return SVec{x(0, 1), x(0, 0) * Scalar(2), -x(1, 0)}; };
  auto ad = [&](const SMat& x) {
    SMat a(3, 3);
    for (int k = 0; k < 3; ++k) a.set_col(k, coords(x * m[k] - m[k] * x));
    return a;
  };
  SMat oracle(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) oracle(i, j) = trace(ad(m[i]) * ad(m[j]));
  SMat k = killing_matrix();
  CHECK(k == oracle);
  CHECK(k == SMat{{0, 0, -4}, {0, 2, 0}, {-4, 0, 0}});
  CHECK(k(1, 1) == Scalar(2));
  CHECK(k(0, 2) == Scalar(-4));
  CHECK(k(0, 1) == Scalar(0));
  CHECK(k == k.transpose());
  CHECK_FALSE(det(k).is_zero());
}

TEST_CASE("killing form is ad-invariant") {
  SMat k = killing_matrix();
  for (int x = 0; x < 3; ++x) {
    SMat ax = vf_ad(Poly::monomial(1, x));
    CHECK(ax.transpose() * k + k * ax == SMat(3, 3, Scalar(0)));
  }
}

TEST_CASE("killing form: Borel picture") {
  SMat k = killing_matrix();
  CHECK(k(2, 2) == Scalar(0));
  // orthogonal of span(z^2 d) = span(z d, z^2 d)
  SMat row(1, 3);
  for (int j = 0; j < 3; ++j) row(0, j) = k(2, j);
  auto perp = kernel(row);
  CHECK(perp.size() == 2);
  for (auto& v : perp) CHECK(v[0] == Scalar(0));
}

TEST_CASE("Moebius maps") {
  CHECK(is_moebius(RatFunc::z()).value() == MoebiusMap::identity());
  auto g = is_moebius(rf("(2*z+1)/(z+1)"));
  REQUIRE(g);
  CHECK(g->m() == SMat{{2, 1}, {1, 1}});
  // cross-multiplication: (2z+1) * 1 = (z+1) * 2z+1 with the normalized matrix
  CHECK(g->as_ratfunc() == rf("(2*z+1)/(z+1)"));
  CHECK_FALSE(is_moebius(rf("z^2")));
  CHECK_FALSE(is_moebius(rf("(2*z+2)/(z+1)")));
  CHECK(MoebiusMap(SMat{{4, 2}, {2, 2}}) == *g);
  for (int t = 0; t < 10; ++t) {
    SMat m{{rand_q(), rand_q()}, {rand_q(), rand_q()}};
    if (det(m).is_zero()) continue;
    MoebiusMap h(m);
    CHECK(h.compose(h.inverse()) == MoebiusMap::identity());
    CHECK(h.apply(h.inverse().as_ratfunc()) == RatFunc::z());
    MoebiusMap k2 = h.compose(*g);
    CHECK(k2.as_ratfunc() == h.apply(g->as_ratfunc()));
  }
}
