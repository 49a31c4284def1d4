#include "bop/jets.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bop;
using namespace testh;

namespace {

TruncSeries rand_chart(const Scalar& c, int order) {
  // phi(c) arbitrary, phi'(c) nonzero.
  std::vector<Scalar> co{rand_q(), rand_nonzero()};
  for (int k = 2; k <= order; ++k) co.push_back(rand_q());
  return TruncSeries(c, 0, co, order);
}

SVec at_center(const Mat<TruncSeries>& t, const SVec& v) {
  SVec out(t.rows(), Scalar(0));
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) out[i] += t(i, j).coeff(0) * v[j];
  return out;
}

}  // namespace

TEST_CASE("jet_of examples") {
  CHECK(jet_of(series_expand(rf("z^2"), 0, 5), 2, 0).comps == SVec{0, 0, 2});
  CHECK(jet_of(series_expand(rf("1+z"), 1, 5), 1, 1).comps == SVec{2, 1});
  CHECK(jet_of(series_expand(rf("z^3"), 0, 5), 3, 0).comps == SVec{0, 0, 0, 6});
  CHECK_THROWS_AS(jet_of(series_expand(rf("1/z"), 0, 5), 2, 0), Error);
}

TEST_CASE("jet_project and nested_jet") {
  JetVec v{2, {0, 0, 2}, {}};
  CHECK(jet_project(v).comps == SVec{0, 0});
  JetVec a{2, {5, 6, 7}, {}};
  CHECK(jet_project(jet_project(a)).comps == SVec{5});
  CHECK(jet_project(JetVec{2, {0, 0, 9}, {}}).comps == SVec{0, 0});
  auto [p0, p1] = nested_jet(JetVec{3, {0, 0, 0, 6}, {}});
  CHECK(p0.comps == SVec{0, 0, 0});
  CHECK(p1.comps == SVec{0, 0, 6});
  auto [q0, q1] = nested_jet(JetVec{3, {1, 0, 0, 0}, {}});
  CHECK(q0.comps == SVec{1, 0, 0});
  CHECK(q1.comps == SVec{0, 0, 0});
  // injectivity on a basis
  for (int i = 0; i < 4; ++i) {
    SVec e(4, Scalar(0));
    e[i] = 1;
    auto [x, y] = nested_jet(JetVec{3, e, {}});
    CHECK_FALSE((filt::in_F1(x.comps) && x.comps[2].is_zero() && filt::in_F1(y.comps) && y.comps[2].is_zero()));
  }
}

TEST_CASE("mixed frames are rejected") {
  JetVec a{2, {1, 0, 0}, {}}, b{2, {1, 0, 0}, JetFrame{"other", kTX, "raw-derivative"}};
  CHECK_THROWS_AS(add(a, b), Error);
  CHECK(add(a, a).comps == SVec{2, 0, 0});
}

TEST_CASE("jet_transition_matrix examples") {
  TruncSeries id = TruncSeries::variable(0, 6);
  for (BundleSymbol L : {kTX, kK, BundleSymbol{2, 0}, kTT}) {
    auto t = jet_transition_matrix(id, L, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(t(i, j) == TruncSeries::constant(i == j ? 1 : 0, 0, 3));
  }
  auto tr = jet_transition_matrix(series_expand(rf("z+5/3"), 0, 6), kTX, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(tr(i, j) == TruncSeries::constant(i == j ? 1 : 0, 0, 3));
  Scalar a = Scalar::frac(-3, 2);
  auto ts = jet_transition_matrix(series_expand(RatFunc(a) * RatFunc::z(), 0, 6), kTX, 2);
  SVec diag{a, 1, Scalar(1) / a};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(ts(i, j) == TruncSeries::constant(i == j ? diag[i] : 0, 0, 3));
  CHECK_THROWS_AS(jet_transition_matrix(series_expand(rf("z^2"), 0, 6), kTX, 2), Error);
}

TEST_CASE("naturality: jets of transformed sections") {
  for (int trial = 0; trial < 6; ++trial) {
    Scalar c = rand_q();
    TruncSeries phi = rand_chart(c, 9);
    Poly g = rand_poly(4);
    for (BundleSymbol L : {kTX, kK, BundleSymbol{2, 0}}) {
      // f(z) = g(phi(z)) / phi'(z)^(-b)
      TruncSeries gw = series_expand(RatFunc(g), phi.coeff(0), 9);
      TruncSeries f = gw.compose(phi) * phi.deriv().pow(-L.b).inverse();
      auto t = jet_transition_matrix(phi, L, 3);
      CHECK(jet_of(gw, 3, phi.coeff(0)).comps == at_center(t, jet_of(f, 3, c).comps));
    }
  }
  // twisted bundle, marked point at the center
  for (int trial = 0; trial < 4; ++trial) {
    TruncSeries phi(0, 1, {rand_nonzero(), rand_q(), rand_q(), rand_q(), rand_q(), rand_q(), rand_q(), rand_q(), rand_q()}, 9);
    TruncSeries gw = series_expand(RatFunc(rand_poly(4)), 0, 9);
    TruncSeries ratio(0, 0, phi.coeffs(), 8);
    TruncSeries f = gw.compose(phi) * (phi.deriv() * ratio).inverse();
    auto t = jet_transition_matrix(phi, kTT, 2);
    CHECK(jet_of(gw, 2, 0).comps == at_center(t, jet_of(f, 2, 0).comps));
  }
}

TEST_CASE("transition preserves the standard flag") {
  for (int trial = 0; trial < 5; ++trial) {
    auto t = jet_transition_matrix(rand_chart(rand_q(), 8), kTX, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) CHECK(t(i, j).is_zero());
  }
}

TEST_CASE("exact sequence dimensions") {
  JetVec top{3, {0, 0, 0, 1}, {}};
  auto p = jet_project(top);
  CHECK(std::all_of(p.comps.begin(), p.comps.end(), [](const Scalar& s) { return s.is_zero(); }));
  CHECK(p.comps.size() + 1 == top.comps.size());
}

TEST_CASE("det_jet_transition is identically 1") {
  CHECK(det_jet_transition(series_expand(RatFunc(Scalar(7)) * RatFunc::z(), 0, 8)) == TruncSeries::constant(1, 0, 6));
  CHECK(det_jet_transition(series_expand(rf("z/(1-z)"), 0, 8)) == TruncSeries::constant(1, 0, 6));
  CHECK(det_jet_transition(series_expand(rf("z+z^2"), 0, 8)) == TruncSeries::constant(1, 0, 6));
  for (int trial = 0; trial < 20; ++trial) {
    Scalar c = rand_q();
    TruncSeries d = det_jet_transition(rand_chart(c, 10));
    CHECK(d == TruncSeries::constant(1, c, d.order()));
    CHECK(d.order() >= 6);
  }
}

TEST_CASE("rational transition is functorial") {
  RatFunc phi = rf("(2*z+1)/(z+3)"), psi = rf("z+z^3");
  for (BundleSymbol L : {kTX, kK}) {
    RMat lhs = jet_transition_matrix(phi.compose(psi), L, 3);
    RMat tphi = jet_transition_matrix(phi, L, 3).map([&](const RatFunc& f) { return f.compose(psi); });
    CHECK(lhs == tphi * jet_transition_matrix(psi, L, 3));
  }
  CHECK(det(jet_transition_matrix(rf("z+z^2"), kTX, 2)) == RatFunc(1));
}
