#include <doctest.h>

#include <set>

#include "carpet/error.hpp"
#include "carpet/samples.hpp"
#include "carpet/verification.hpp"

using namespace carpet;

namespace {

DigitWord continuation(const TargetSpec& t, long n, DigitPair filler) {
  std::vector<DigitPair> pre(static_cast<std::size_t>(n), filler);
  pre.insert(pre.end(), t.word.preperiod().begin(), t.word.preperiod().end());
  return DigitWord::periodic(pre, t.word.period());
}

}  // namespace

TEST_CASE("rectangles") {
  const Rect r = target_rectangle(3, {Rational(1, 2), Rational(1, 2)}, 1, 2);
  CHECK(r.x_lo == Rational(1, 6));
  CHECK(r.y_hi == Rational(1, 2) + Rational(1, 9));
  CHECK(r.contains(ExactPoint{Rational(1, 6), Rational(1, 2)}));
  CHECK_FALSE(r.contains(ExactPoint{Rational(1, 7), Rational(1, 2)}));
  const Rect inner{Rational(1, 3), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  CHECK(r.contains(inner));
}

TEST_CASE("containment on hand-made words") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec origin = target_from_point(v, 0, 0);
  const auto lin = RateSchedule::linear(1, 2);
  const long n = 4;
  const std::vector<DigitWord> exact{continuation(origin, n, {1, 1})};
  auto f = check_containment_forward(v, origin, lin, n, exact);
  CHECK(f.premise_hits == 1);
  CHECK(f.passed());
  auto b = check_containment_backward(v, origin, lin, n, exact);
  CHECK(b.premise_hits == 1);
  CHECK(b.passed());
  // +2 in the first horizontal window position: outside both.
  std::vector<DigitPair> pre(static_cast<std::size_t>(n), DigitPair{1, 1});
  pre.push_back({2, 0});
  const std::vector<DigitWord> off{DigitWord::periodic(pre, {{0, 0}})};
  CHECK(check_containment_forward(v, origin, lin, n, off).premise_hits == 0);
  CHECK(check_containment_backward(v, origin, lin, n, off).premise_hits == 0);
  CHECK_FALSE(mn_membership(v, origin, lin, n, off[0]));
}

TEST_CASE("a deviation word sits in the enlarged rectangle but not the small one") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec origin = target_from_point(v, 0, 0);
  const auto lin = RateSchedule::linear(1, 2);
  const long n = 3;
  // Vertical +1 at xi-1 = 5.
  std::vector<DigitPair> pre(static_cast<std::size_t>(n), DigitPair{0, 0});
  for (int i = 0; i < 4; ++i) pre.push_back({0, 0});
  pre.push_back({1, 1});
  const DigitWord w = DigitWord::periodic(pre, {{0, 0}});
  REQUIRE(mn_membership(v, origin, lin, n, w));
  const std::vector<DigitWord> one{w};
  CHECK(check_containment_forward(v, origin, lin, n, one).premise_hits == 0);
  const auto back = check_containment_backward(v, origin, lin, n, one);
  CHECK(back.premise_hits == 1);
  CHECK(back.passed());
}

TEST_CASE("exhaustive containment on the corner system") {
  const GridIFS c = corner_ifs();
  const auto lin = RateSchedule::linear(1, 2);
  const TargetSpec t = target_from_word(c, DigitWord::periodic({}, {{0, 2}, {2, 0}}));
  const auto words = all_truncations(c, 10);
  REQUIRE(words.size() == 59049);
  for (long n = 1; n <= 3; ++n) {
    const auto f = check_containment_forward(c, t, lin, n, words);
    const auto b = check_containment_backward(c, t, lin, n, words);
    CHECK(f.passed());
    CHECK(b.passed());
    CHECK(f.premise_hits > 0);
    CHECK(b.premise_hits >= f.premise_hits);
  }
}

TEST_CASE("set relation on an interior point") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec t = target_from_point(v, Rational(4, 9), Rational(4, 9));
  const auto lin = RateSchedule::linear(1, 2);
  CHECK(interior_depth(3, Rational(4, 9)) == 1);
  CHECK(interior_depth(3, Rational(1, 27)) == 4);
  CHECK(interior_depth(3, 0) == 0);
  const long n = 2, depth = 5;
  const std::vector<DigitWord> tails{apply_shift(t.word, depth - n), DigitWord::constant({0, 0}),
                                     DigitWord::constant({2, 2})};
  const auto samples = prefixed_periodic(v, depth, tails);
  const auto rep = check_set_relation(v, t, lin, n, samples);
  CHECK_FALSE(rep.boundary);
  CHECK(rep.rectangle_hits > 0);
  CHECK(rep.passed());
  CHECK_THROWS_AS(check_set_relation(v, t, lin, 1, samples), Error);
}

TEST_CASE("set relation on the boundary uses the nine-rectangle union") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec t = target_from_point(v, 0, 0);
  const auto lin = RateSchedule::linear(1, 2);
  const std::vector<DigitWord> tails{DigitWord::constant({0, 0}), DigitWord::constant({2, 2}),
                                     DigitWord::periodic({}, {{2, 0}, {0, 2}})};
  const auto samples = prefixed_periodic(v, 5, tails);
  const auto rep = check_set_relation(v, t, lin, 2, samples);
  CHECK(rep.boundary);
  CHECK(rep.w_hits > rep.rectangle_hits);
  CHECK(rep.rsum_violations == 0);
  CHECK(rep.passed());
}

TEST_CASE("cover family") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec origin = target_from_point(v, 0, 0);
  const auto lin = RateSchedule::linear(1, 2);
  const auto cover = build_cover(v, origin, lin, 2, 3);
  CHECK(cover.n == 2);
  CHECK(Integer(cover.boxes.size()) <= cover.bound);
  // 9 * 25 * max prod |J2| over positions 2..3 = 9 * 25 * 4.
  CHECK(cover.bound == 900);
  const auto full = build_cover(v, origin, lin, 1, 2);
  CHECK(cover_within_enlarged(v, origin, lin, full));
  std::set<DyadicBox> unique(cover.boxes.begin(), cover.boxes.end());
  CHECK(unique.size() == cover.boxes.size());
  CHECK_THROWS_AS(build_cover(v, origin, lin, 2, 5), Error);
}

TEST_CASE("pattern windows equal brute force") {
  const GridIFS v = vicsek_ifs();
  const auto lin = RateSchedule::linear(1, 2);
  for (const auto& [z, w] : std::vector<std::pair<Rational, Rational>>{
           {0, 0}, {Rational(1, 2), Rational(1, 2)}, {Rational(2, 9), Rational(2, 9)}, {1, 1}}) {
    const TargetSpec t = target_from_point(v, z, w);
    for (long n = 1; n <= 3; ++n) {
      const auto cmp = compare_with_oracle(v, t, lin, n);
      CHECK_MESSAGE(cmp.passed(), cmp.detail);
      const auto brute = brute_force_mn(v, t, lin, n);
      // The target's own window is present.
      std::vector<DigitPair> own;
      for (long i = 0; i < lin.xi(n); ++i) own.push_back(t.word.at(static_cast<std::size_t>(i)));
      CHECK(brute.count(own) == 1);
    }
  }
}

TEST_CASE("the corrupted predicate is caught by the oracle") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec t = target_from_point(v, Rational(2, 9), Rational(2, 9));
  const auto lin = RateSchedule::linear(1, 2);
  bool caught = false;
  for (long n = 1; n <= 3; ++n) caught = caught || !compare_with_oracle(v, t, lin, n, corrupted_mn_membership).passed();
  CHECK(caught);
}

TEST_CASE("sample generators") {
  const GridIFS v = vicsek_ifs();
  CHECK(all_truncations(v, 3).size() == 125);
  CHECK(all_truncations(v, 0).size() == 1);
  CHECK_THROWS_AS(all_truncations(v, 20), Error);
  const TargetSpec origin = target_from_point(v, 0, 0);
  const auto lin = RateSchedule::linear(1, 2);
  const auto s = biased_samples(v, origin, lin, 4, 15, 100, 3);
  CHECK(s.size() == 100);
  for (const auto& w : s) CHECK(w.available_depth() == 15);
  CHECK(s == biased_samples(v, origin, lin, 4, 15, 100, 3));
  long members = 0;
  for (const auto& w : s) members += mn_membership(v, origin, lin, 4, w);
  CHECK(members >= 25);
}
