#include "bop/pairfile.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bop;
using namespace testh;

namespace {

PairBD sample(const char* s, const Scalar& c) {
  Sl2Oper o = build_sl2_model(rf(s).num());
  PairBD p = c.is_zero() ? build_pair(o) : perturbed_pair(o, c);
  p.frames = eigenframes(p);
  return p;
}

void expect_parse_error(const std::string& text, int line, int col) {
  try {
    parse_pair(text);
    CHECK_MESSAGE(false, "no error for:\n" << text);
  } catch (const ParseError& e) {
    CHECK_MESSAGE(e.line() == line, e.what());
    if (col > 0) CHECK_MESSAGE(e.col() == col, e.what());
  }
}

const std::string kGood =
    "pairbd 1\n"
    "variable z\n"
    "divisor 0\n"
    "B twist 2\n"
    "0 ; 0 ; -1/(2*z^2)\n"
    "0 ; 1/(2*z^2) ; 0\n"
    "-1/(2*z^2) ; 0 ; 0\n"
    "D\n"
    "0 ; -1 ; 0\n"
    "0 ; -1/z ; -1\n"
    "0 ; 0 ; -2/z\n";

}  // namespace

TEST_CASE("pair files round-trip byte-stably") {
  for (auto s : {"z", "z^2", "z^2+z^3"})
    for (Scalar c : {Scalar(0), Scalar(1), Scalar::frac(2, 3) - Scalar::I()}) {
      if (std::string(s) == "z" && !c.is_zero()) continue;
      PairBD p = sample(s, c);
      std::string w = write_pair(p);
      PairBD q = parse_pair(w);
      CHECK(same_pair(p, q));
      CHECK(q.frames == p.frames);
      CHECK(write_pair(q) == w);
    }
}

TEST_CASE("hand-written file") {
  PairBD p = parse_pair(kGood);
  CHECK(same_pair(p, build_pair(build_sl2_model(rf("z^2").num()))));
  std::string canon = write_pair(p);
  CHECK(canon.find("(-1/2)/(z^2)") != std::string::npos);
  CHECK(write_pair(parse_pair(canon)) == canon);
  // comments, blank lines and another variable name
  std::string alt = "# comment\n\n" + kGood;
  for (std::size_t k; (k = alt.find('z')) != std::string::npos;) alt[k] = 'x';
  alt.replace(alt.find("variable x"), 10, "variable x   # trailing");
  PairBD q = parse_pair(alt);
  CHECK(q.var == "x");
  CHECK(q.D.A == p.D.A);
  CHECK(write_pair(q).find("variable x\n") != std::string::npos);
}

TEST_CASE("parse errors carry line and column") {
  std::string bad = kGood;
  bad.replace(bad.find("0 ; -1/z ; -1"), 13, "0 ; -1/z ; -1+");
  expect_parse_error(bad, 10, 0);
  std::string bad2 = kGood;
  bad2.replace(bad2.find("0 ; -1/z ; -1"), 13, "0 ; 1/w ; -1");
  expect_parse_error(bad2, 10, 7);
  expect_parse_error("pairbd 2\n", 1, 8);
  expect_parse_error("hello\n", 1, 1);
  std::string two = kGood;
  two.replace(two.find("0 ; 0 ; -2/z"), 12, "0 ; -2/z");
  expect_parse_error(two, 11, 1);
  expect_parse_error(kGood + "D\n", 12, 0);
  expect_parse_error(kGood + "bogus\n", 12, 1);
  std::string nodiv = kGood;
  nodiv.erase(nodiv.find("divisor 0\n"), 10);
  expect_parse_error(nodiv, 11, 1);
  expect_parse_error(kGood + "frames\nframe 0 -2 : 0 ; 0\nend\n", 13, 0);
  std::string twist = kGood;
  twist.replace(twist.find("twist 2"), 7, "twist two");
  expect_parse_error(twist, 4, 9);
  std::string dup = kGood;
  dup.replace(dup.find("divisor 0"), 9, "divisor 0 0");
  expect_parse_error(dup, 12, 1);
}

TEST_CASE("parser keeps non-logarithmic D for the checker") {
  std::string s = kGood;
  s.replace(s.find("0 ; 0 ; -2/z"), 12, "0 ; 0 ; -2/z^2");
  PairBD p = parse_pair(s);
  auto c = pair_conditions(p);
  CHECK_FALSE(c.ok[2]);
}
