#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <set>

#include "carpet/error.hpp"
#include "carpet/ifs.hpp"
#include "carpet/log_monomial.hpp"
#include "carpet/rational.hpp"
#include "carpet/word.hpp"

using namespace carpet;

TEST_CASE("validate_ifs accepts the cross and corner systems") {
  const GridIFS v = vicsek_ifs();
  CHECK(v.base() == 3);
  CHECK(v.size() == 5);
  CHECK(v.contains(1, 1));
  CHECK_FALSE(v.contains(1, 0));
  const GridIFS c = corner_ifs();
  CHECK(c.size() == 3);
  CHECK(c.row_count(0) == 2);
  CHECK(c.row_count(1) == 0);
  CHECK(c.row_count(2) == 1);
}

TEST_CASE("validate_ifs rejects malformed systems") {
  const std::vector<DigitPair> full{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK_THROWS_AS(validate_ifs(2, full), Error);
  try {
    validate_ifs(2, full);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotProperSubset);
  }
  const std::vector<DigitPair> one{{0, 0}};
  CHECK_THROWS_AS(validate_ifs(3, one), Error);
  const std::vector<DigitPair> dup{{0, 0}, {0, 0}};
  CHECK_THROWS_AS(validate_ifs(3, dup), Error);
  const std::vector<DigitPair> range{{0, 0}, {3, 0}};
  CHECK_THROWS_AS(validate_ifs(3, range), Error);
  CHECK_THROWS_AS(validate_ifs(1, std::vector<DigitPair>{{0, 0}, {0, 1}}), Error);
}

TEST_CASE("row and column sets partition J") {
  const GridIFS v = vicsek_ifs();
  CHECK(row_set(v, 0) == std::vector<DigitPair>{{0, 0}, {2, 0}});
  CHECK(row_set(v, 1) == std::vector<DigitPair>{{1, 1}});
  for (const GridIFS& g : {vicsek_ifs(), corner_ifs()}) {
    int rows = 0, cols = 0;
    std::vector<DigitPair> joined;
    for (int a = 0; a < g.base(); ++a) {
      rows += g.row_count(a);
      cols += g.column_count(a);
      for (auto p : row_set(g, a)) joined.push_back(p);
      CHECK(static_cast<int>(column_set(g, a).size()) == g.column_count(a));
    }
    CHECK(rows == g.size());
    CHECK(cols == g.size());
    std::sort(joined.begin(), joined.end());
    std::vector<DigitPair> all(g.digits().begin(), g.digits().end());
    std::sort(all.begin(), all.end());
    CHECK(joined == all);
  }
}

TEST_CASE("attractor dimension") {
  CHECK(attractor_dimension(vicsek_ifs()) == doctest::Approx(std::log(5.0) / std::log(3.0)).epsilon(1e-14));
  CHECK(attractor_dimension(corner_ifs()) == doctest::Approx(1.0));
  const std::vector<DigitPair> row{{0, 1}, {1, 1}, {2, 1}};
  CHECK(attractor_dimension(validate_ifs(3, row)) == doctest::Approx(1.0));
}

TEST_CASE("project_prefix") {
  const GridIFS v = vicsek_ifs();
  const std::vector<DigitPair> one{{0, 0}};
  auto box = project_prefix(v, one);
  CHECK(box.level == 1);
  CHECK(box.corner_x() == 0);
  const std::vector<DigitPair> two{{1, 1}, {2, 2}};
  box = project_prefix(v, two);
  CHECK(box.level == 2);
  CHECK(box.corner_x() == Rational(5, 9));
  CHECK(box.corner_y() == Rational(5, 9));
  box = project_prefix(v, std::vector<DigitPair>{});
  CHECK(box.level == 0);
  CHECK(box.side() == 1);
  CHECK_THROWS_AS(project_prefix(v, std::vector<DigitPair>{{1, 0}}), Error);
}

TEST_CASE("sibling prefix boxes have disjoint interiors") {
  const GridIFS v = vicsek_ifs();
  std::set<std::pair<Integer, Integer>> seen;
  for (auto a : v.digits()) {
    for (auto b : v.digits()) {
      const std::vector<DigitPair> p{a, b};
      const auto box = project_prefix(v, p);
      CHECK(seen.insert({box.kx, box.ky}).second);
    }
  }
}

TEST_CASE("shift on words") {
  const auto zero = DigitWord::constant({0, 0});
  CHECK(apply_shift(zero, 17) == zero);
  const auto w = DigitWord::periodic({{1, 1}}, {{0, 0}});
  CHECK(apply_shift(w, 1) == zero);
  CHECK(apply_shift(w, 0) == w);
  const auto t = DigitWord::truncated({{0, 0}, {2, 2}, {1, 1}});
  CHECK(apply_shift(t, 2).available_depth() == 1);
  CHECK(apply_shift(t, 2).at(0) == DigitPair{1, 1});
  CHECK_THROWS_AS(t.at(3), Error);
}

TEST_CASE("periodic words are stored minimally") {
  const auto a = DigitWord::periodic({{0, 0}, {2, 2}}, {{0, 0}, {2, 2}});
  CHECK(a.preperiod().empty());
  CHECK(a.period().size() == 2);
  const auto b = DigitWord::periodic({{2, 2}}, {{0, 0}, {2, 2}});
  CHECK(b == DigitWord::periodic({}, {{2, 2}, {0, 0}}));
}

// T^n of pi(w) equals b^n pi(w) minus the integer carried by the first n
// digits; computed here without project_word's shift handling.
TEST_CASE("shift is conjugate to the carpet map up to depth 30") {
  const GridIFS v = vicsek_ifs();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, v.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<DigitPair> pre, per;
    const int lp = trial % 4, lq = 1 + trial % 3;
    for (int i = 0; i < lp; ++i) pre.push_back(v.digits()[pick(rng)]);
    for (int i = 0; i < lq; ++i) per.push_back(v.digits()[pick(rng)]);
    const auto w = DigitWord::periodic(pre, per);
    const ExactPoint p = project_word(3, w);
    Integer ix = 0, iy = 0;
    for (std::size_t n = 0; n <= 30; ++n) {
      const ExactPoint s = project_word(3, apply_shift(w, n));
      const Rational scale = power_of(3, static_cast<long>(n));
      CHECK(s.x == scale * p.x - Rational(ix));
      CHECK(s.y == scale * p.y - Rational(iy));
      ix = ix * 3 + w.at(n).u;
      iy = iy * 3 + w.at(n).v;
      // The square of the first n digits contains the point.
      const auto box = project_prefix(v, w.prefix(n));
      CHECK(box.corner_x() <= p.x);
      CHECK(p.x <= box.corner_x() + box.side());
    }
  }
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-2") == -2);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(power_of(3, -2) == Rational(1, 9));
  CHECK(floor_of(Rational(-1, 2)) == -1);
  CHECK(ceil_of(Rational(-1, 2)) == 0);
  CHECK(log_of(power(3, 2000)) == doctest::Approx(2000 * std::log(3.0)));
  CHECK(to_string(make_rational(2, 4)) == "1/2");
  CHECK(parse_rational("010") == 10);
}

TEST_CASE("log monomials decide signs exactly") {
  const auto l2 = LogMonomial::log_of(2), l4 = LogMonomial::log_of(4), l3 = LogMonomial::log_of(3);
  CHECK(compare(l2 * 2, l4) == 0);
  CHECK((l2 * 2 - l4).is_zero());
  CHECK(compare(l3, l2) == 1);
  // 2^19 = 524288 < 3^12 = 531441.
  CHECK(compare(l2 * 19, l3 * 12) == -1);
  // 2^84 vs 3^53: differ by under 0.2%.
  CHECK((l2 * 84 - l3 * 53).sign() == (std::pow(2.0, 84) > std::pow(3.0, 53) ? 1 : -1));
  // log4/2 == log2/1
  CHECK(compare_ratio(l4, 2, l2, 1) == 0);
  CHECK(compare_ratio(l3, 2, l2, 1) == -1);
  CHECK(LogMonomial::log_of(1).is_zero());
  CHECK(l4.value() == doctest::Approx(std::log(4.0)));
}

TEST_CASE("row weights") {
  const GridIFS v = vicsek_ifs();
  CHECK(row_weight(v, {2, 3, 1}) == LogMonomial::log_of(2, 3));
  CHECK_THROWS_AS(row_weight(corner_ifs(), {0, 1, 0}), Error);
}
