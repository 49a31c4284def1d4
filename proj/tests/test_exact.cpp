#include "doctest.h"
#include "helpers.hpp"

using namespace bop;
using namespace testh;

TEST_CASE("scalar arithmetic is exact") {
  for (int k = 0; k < 50; ++k) {
    Scalar a = rand_q() + Scalar::I() * rand_q(), b = rand_q() + Scalar::I() * rand_q();
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
  CHECK(Scalar::frac(2, 4) == Scalar::frac(1, 2));
  CHECK(Scalar::frac(-1, 2).str() == "-1/2");
  CHECK((Scalar::frac(1, 2) - Scalar::I() * Scalar(3)).str() == "1/2-3*i");
  CHECK((-Scalar::I() / Scalar(2)).str() == "-1/2*i");
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
}

TEST_CASE("poly basics") {
  Poly a = rand_poly(3), b = rand_poly(2);
  CHECK((a * b).deg() == a.deg() + b.deg());
  auto [q, r] = Poly::divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.deg() < b.deg());
  CHECK(Poly().is_zero());
  CHECK(Poly(std::vector<Scalar>{0, 0, 0}).is_zero());
  CHECK(parse_ratfunc("1/2+3*z-z^2").num().str() == "1/2+3*z-z^2");
  CHECK(Poly::gcd(lin(1) * lin(2), lin(2) * lin(3)) == lin(2));
}

TEST_CASE("ratfunc canonical form") {
  RatFunc f(lin(1) * lin(2), Poly(2) * lin(1) * lin(3));
  CHECK(f.den() == lin(3));
  CHECK(f.num() == Poly(Scalar::frac(1, 2)) * lin(2));
  RatFunc g = rf("(z^2-1)/(z-1)");
  CHECK(g == rf("z+1"));
  CHECK(g.str() == "(1+z)/(1)");
  for (int k = 0; k < 20; ++k) {
    RatFunc a(rand_poly(2), rand_poly(2) + Poly(Scalar(11))), b(rand_poly(1), rand_poly(2) + Poly(Scalar(13)));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK((a * b).deriv() == a.deriv() * b + a * b.deriv());
  }
}

TEST_CASE("series_expand examples") {
  TruncSeries s = series_expand(rf("1/(1-z)"), 0, 3);
  CHECK(s.valuation() == 0);
  CHECK(s.coeffs() == std::vector<Scalar>{1, 1, 1, 1});
  TruncSeries t = series_expand(rf("1/z"), 0, 2);
  CHECK(t.valuation() == -1);
  for (int e = -1; e <= 2; ++e) CHECK(t.coeff(e) == Scalar(e == -1 ? 1 : 0));
  TruncSeries u = series_expand(rf("(2*z+1)/(z+1)"), 0, 2);
  CHECK(u.coeff(0) == Scalar(1));
  CHECK(u.coeff(1) == Scalar(1));
  CHECK(u.coeff(2) == Scalar(-1));
  CHECK_THROWS_AS(u.coeff(3), Error);
}

TEST_CASE("series_expand against long division oracle") {
  // Ascending long division: num = den * sum c_k t^k with t = z - p.
  for (int trial = 0; trial < 10; ++trial) {
    Scalar p = rand_q();
    Poly num = rand_poly(3), den = rand_poly(2) + Poly(Scalar(20));
    if (den.eval(p).is_zero()) continue;
    Poly n = num.shifted(p), d = den.shifted(p);
    std::vector<Scalar> rem(8, Scalar(0));
    for (int k = 0; k < 8; ++k) rem[k] = n.coeff(k);
    TruncSeries s = series_expand(RatFunc(num, den), p, 7);
    for (int k = 0; k < 8; ++k) {
      Scalar c = rem[k] / d.coeff(0);
      CHECK(s.coeff(k) == c);
      for (int j = 0; j + k < 8; ++j) rem[k + j] -= c * d.coeff(j);
    }
  }
}

TEST_CASE("series re-summation against evaluation") {
  // Polynomial f: the expansion at p is finite, so evaluation at sample points is exact.
  for (int trial = 0; trial < 5; ++trial) {
    Poly f = rand_poly(4);
    Scalar p = rand_q();
    TruncSeries s = series_expand(RatFunc(f), p, 6);
    for (int k = 0; k < 7; ++k) {
      Scalar x = rand_q();
      Scalar acc(0);
      for (int e = 0; e <= 6; ++e) acc += s.coeff(e) * (x - p).pow(e);
      CHECK(acc == f.eval(x));
    }
  }
}

TEST_CASE("residue_at") {
  CHECK(residue_at(rf("1/z"), 0) == Scalar(1));
  CHECK(residue_at(rf("1/z^2"), 0) == Scalar(0));
  CHECK(residue_at(RatFunc(Poly(3), lin(Scalar::I())), Scalar::I()) == Scalar(3));
  for (int k = -2; k <= 2; ++k) {
    Scalar p = rand_q();
    Poly g = rand_poly(2) + Poly(Scalar(17));
    if (g.eval(p).is_zero()) continue;
    RatFunc f = RatFunc(g) * RatFunc(lin(p)).pow(k);
    CHECK(residue_at(f.deriv() / f, p) == Scalar(k));
  }
}

TEST_CASE("solve_flat_sections") {
  RMat A0(3, 3, RatFunc());
  auto v = solve_flat_sections(A0, 0, {0, 1, 0}, 5);
  CHECK(v[1] == TruncSeries::constant(1, 0, 5));
  CHECK(v[0].is_zero());
  RMat D{{0, -1, 0}, {0, 0, -1}, {0, 0, 0}};
  auto w = solve_flat_sections(D, 0, {0, 0, 2}, 6);
  CHECK(w[0] == series_expand(rf("z^2"), 0, 6));
  CHECK(w[1] == series_expand(rf("2*z"), 0, 6));
  CHECK(w[2] == series_expand(rf("2"), 0, 6));
  RMat one{{1}};
  auto e = solve_flat_sections(one, 0, {1}, 6);
  for (int k = 0; k <= 6; ++k) CHECK(e[0].coeff(k) == Scalar(k % 2 ? -1 : 1) / factorial(k));
  RMat pole{{rf("1/z")}};
  CHECK_THROWS_AS(solve_flat_sections(pole, 0, {1}, 3), Error);
}

TEST_CASE("solve_flat_sections is linear") {
  RMat A{{rf("z"), 1, 0}, {0, rf("1/(z-3)"), rf("z^2")}, {1, 0, rf("2*z")}};
  SVec a{1, 2, -1}, b{0, Scalar::frac(1, 3), 5}, ab{1, Scalar::frac(7, 3), 4};
  auto va = solve_flat_sections(A, 1, a, 6), vb = solve_flat_sections(A, 1, b, 6), vab = solve_flat_sections(A, 1, ab, 6);
  for (int i = 0; i < 3; ++i) CHECK(va[i] + vb[i] == vab[i]);
  // v' + A v = 0 through order N-1.
  for (int i = 0; i < 3; ++i) {
    TruncSeries r = va[i].deriv();
    for (int j = 0; j < 3; ++j) r = r + series_expand(A(i, j), 1, 6) * va[j];
    for (int k = 0; k <= 5; ++k) CHECK(r.coeff(k) == Scalar(0));
  }
}

TEST_CASE("integer_eigendata") {
  SMat d{{-2, 0, 0}, {0, -1, 0}, {0, 0, 0}};
  EigenData ed = integer_eigendata(d);
  CHECK(ed.eigenvalues == std::vector<long>{-2, -1, 0});
  CHECK(ed.space(-2) == std::vector<SVec>{{1, 0, 0}});
  CHECK(ed.space(0) == std::vector<SVec>{{0, 0, 1}});
  SMat n{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  EigenData en = integer_eigendata(n);
  CHECK(en.eigenvalues == std::vector<long>{0, 0, 0});
  CHECK(en.space(0).size() == 1);
  CHECK(en.algebraic(0) == 3);
  // companion of t^3 - t^2 + t - 1 = (t-1)(t^2+1)
  SMat c{{0, 0, 1}, {1, 0, -1}, {0, 1, 1}};
  CHECK(char_poly(c) == lin(1) * (Poly::z() * Poly::z() + Poly(1)));
  try {
    integer_eigendata(c);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::NonIntegerEigenvalue);
  }
}

TEST_CASE("integer_eigendata trace and det") {
  for (int trial = 0; trial < 20; ++trial) {
    SMat D(3, 3, Scalar(0));
    for (int i = 0; i < 3; ++i) D(i, i) = Scalar(std::uniform_int_distribution<int>(-4, 4)(rng()));
    D(0, 1) = rand_q();
    SMat P{{1, rand_q(), 0}, {0, 1, rand_q()}, {rand_q(), 0, 1}};
    if (det(P).is_zero()) continue;
    SMat M = inverse(P) * D * P;
    EigenData ed = integer_eigendata(M);
    Scalar s(0), p(1);
    for (long l : ed.eigenvalues) s += Scalar(l), p *= Scalar(l);
    CHECK(s == trace(M));
    CHECK(p == det(M));
    for (auto& [l, vs] : ed.spaces)
      for (auto& v : vs) CHECK(M * v == Scalar(l) * SMat::identity(3) * v);
  }
}

TEST_CASE("roots_qi") {
  auto r = roots_qi(lin(Scalar::frac(1, 2)) * lin(-3) * lin(Scalar::frac(2, 3)));
  std::sort(r.begin(), r.end());
  CHECK(r == std::vector<Scalar>{-3, Scalar::frac(1, 2), Scalar::frac(2, 3)});
  auto c = roots_qi(Poly::z() * Poly::z() + Poly(1));
  CHECK(c.size() == 2);
  for (auto& x : c) CHECK((x * x + Scalar(1)).is_zero());
  CHECK_THROWS_AS(roots_qi(Poly::z() * Poly::z() - Poly(2)), Error);
  CHECK(is_squarefree(Poly::z() * lin(1)));
  CHECK_FALSE(is_squarefree(Poly::z() * Poly::z()));
}

TEST_CASE("linear algebra helpers") {
  SMat m{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(rank(m) == 2);
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(m * k[0] == SVec{0, 0, 0});
  CHECK(k[0][0] == Scalar(1));
  SMat a{{2, 1, 0}, {0, 1, 3}, {1, 0, 1}};
  CHECK(a * inverse(a) == SMat::identity(3));
  RMat r{{rf("z"), 1, 0}, {0, 1, rf("1/z")}, {1, 0, 1}};
  CHECK(r * inverse(r) == RMat::identity(3));
  CHECK(laurent_coeff(r, 0, -1) == SMat{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(min_order_at(r, 0) == -1);
}

TEST_CASE("parser") {
  CHECK(parse_ratfunc("(z+1)^2") == rf("z^2+2*z+1"));
  CHECK(parse_ratfunc("-1/2*z") == RatFunc(Poly(Scalar::frac(-1, 2)) * Poly::z()));
  CHECK(parse_scalar("3/4-1/2*i") == Scalar(Q(3, 4), Q(-1, 2)));
  CHECK(parse_ratfunc("x^2", "x") == RatFunc(Poly::z() * Poly::z()));
  try {
    parse_ratfunc("1+*z", "z", 7, 3);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.col() >= 3);
  }
  CHECK_THROWS_AS(parse_ratfunc("1/0"), Error);
  CHECK_THROWS_AS(parse_ratfunc("w"), ParseError);
}
