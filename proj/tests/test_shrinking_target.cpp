#include <doctest.h>

#include <cmath>

#include "carpet/config.hpp"
#include "carpet/error.hpp"
#include "carpet/shrinking_target.hpp"

using namespace carpet;

namespace {

const double kGamma = std::log(5.0) / std::log(3.0);
const double kCantor = std::log(2.0) / std::log(3.0);

double formula(double g, double g2, double l, double x) {
  return std::min(g / (1 + l), (g + (x - l) * g2) / (1 + x));
}

}  // namespace

TEST_CASE("closed form examples") {
  auto c = closed_form_dimension(kGamma, kCantor, 1, 2);
  CHECK(c.value == doctest::Approx((kGamma + kCantor) / 3).epsilon(1e-14));
  CHECK(c.value == doctest::Approx(0.69863).epsilon(1e-5));
  CHECK(c.branch == Branch::Xi);
  c = closed_form_dimension(kGamma, kCantor, 2, 2);
  CHECK(c.value == doctest::Approx(kGamma / 3));
  CHECK(c.branch == Branch::Both);
  c = closed_form_dimension(kGamma, 0, 1, 2);
  CHECK(c.value == doctest::Approx(kGamma / 3));
  CHECK(c.value == doctest::Approx(0.48832).epsilon(1e-5));
  c = closed_form_dimension(kGamma, 1.4, 1, 2);
  CHECK(c.branch == Branch::Lambda);
  CHECK_THROWS_AS(closed_form_dimension(kGamma, kCantor, 2, 1), Error);
  CHECK_THROWS_AS(closed_form_dimension(kGamma, kCantor, 0, 1), Error);
}

TEST_CASE("closed form is monotone in gamma2 and continuous at xi = lambda") {
  double prev = -1;
  for (double g2 = 0; g2 <= 1.0; g2 += 0.05) {
    const double v = closed_form_dimension(kGamma, g2, 1, 2).value;
    CHECK(v >= prev);
    CHECK(v == doctest::Approx(formula(kGamma, g2, 1, 2)));
    prev = v;
  }
  const double at = closed_form_dimension(kGamma, 0.5, Rational(3, 2), Rational(3, 2)).value;
  const double near = closed_form_dimension(kGamma, 0.5, Rational(3, 2), Rational(3001, 2000)).value;
  CHECK(at == doctest::Approx(kGamma / 2.5));
  CHECK(std::abs(at - near) < 1e-3);
}

TEST_CASE("special rows") {
  const GridIFS v = vicsek_ifs();
  CHECK(special_case_dimension(v, SpecialRow::Zero, 1, 2).value ==
        doctest::Approx(closed_form_dimension(kGamma, kCantor, 1, 2).value));
  CHECK(special_case_dimension(v, SpecialRow::Top, 1, 2).value ==
        doctest::Approx(closed_form_dimension(kGamma, kCantor, 1, 2).value));
  const GridIFS c = corner_ifs();
  CHECK(special_case_dimension(c, SpecialRow::Top, 1, 2).value == doctest::Approx(formula(1.0, 0.0, 1, 2)));
  CHECK(special_case_dimension(c, SpecialRow::Zero, 1, 2).value == doctest::Approx(formula(1.0, kCantor, 1, 2)));
  // A system whose zero row has a single map.
  const GridIFS g = validate_ifs(3, std::vector<DigitPair>{{1, 0}, {0, 1}, {2, 1}, {1, 2}});
  CHECK(special_case_dimension(g, SpecialRow::Zero, 1, 2).value ==
        doctest::Approx(std::min(attractor_dimension(g) / 2, attractor_dimension(g) / 3)));
}

TEST_CASE("ergodic closed form") {
  const GridIFS v = vicsek_ifs();
  const std::vector<Rational> bern{Rational(2, 5), Rational(1, 5), Rational(2, 5)};
  CHECK(ergodic_dimension(v, bern, 1, 2).value == doctest::Approx(formula(kGamma, 0.8 * kCantor, 1, 2)));
  const std::vector<Rational> zero{1, 0, 0};
  CHECK(ergodic_dimension(v, zero, 1, 2).value ==
        doctest::Approx(special_case_dimension(v, SpecialRow::Zero, 1, 2).value));
  const std::vector<Rational> mid{0, 1, 0};
  CHECK(ergodic_dimension(v, mid, 1, 2).value == doctest::Approx(kGamma / 3));
  const std::vector<Rational> bad{Rational(1, 2), Rational(1, 3), 0};
  CHECK_THROWS_AS(ergodic_dimension(v, bad, 1, 2), Error);
}

TEST_CASE("s_n examples") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec origin = target_from_point(v, 0, 0);
  const auto lin = RateSchedule::linear(1, 2);
  const auto r = s_n(v, origin, lin, 60);
  CHECK(std::abs(r.s_n - 0.69863) <= 0.02);
  CHECK(r.lambda == 60);
  CHECK(r.xi == 120);
  // Degenerate schedule: one j.
  const auto same = RateSchedule::linear(1, 1);
  const auto d = s_n(v, origin, same, 7);
  CHECK(d.argmin_j == 7);
  CHECK(d.s_n == doctest::Approx((7 * std::log(5.0) + std::log(2.0)) / (14 * std::log(3.0))));
}

TEST_CASE("s_n stays within its bounds and the argmin is the exact minimum") {
  const GridIFS v = vicsek_ifs();
  const auto lin = RateSchedule::linear(Rational(2, 3), Rational(3, 2));
  for (const auto& [z, w] : std::vector<std::pair<Rational, Rational>>{
           {0, 0}, {Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}, {Rational(2, 9), Rational(2, 9)}}) {
    const TargetSpec t = target_from_point(v, z, w);
    for (long n = 1; n <= 40; ++n) {
      const auto r = s_n(v, t, lin, n, true);
      CHECK(r.argmin_j >= r.lambda);
      CHECK(r.argmin_j <= r.xi);
      CHECK(r.s_n > 0);
      CHECK(r.s_n <= attractor_dimension(v) + 1e-12);
      // Oracle: the minimum over doubles of the kept profile.
      double best = 1e9;
      for (std::size_t k = 0; k < r.a_values.size(); ++k) {
        const long j = r.lambda + static_cast<long>(k);
        best = std::min(best, (n * std::log(5.0) + r.a_values[k].value.value()) / ((n + j) * std::log(3.0)));
      }
      CHECK(r.s_n == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("dimension report on the origin") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec origin = target_from_point(v, 0, 0);
  std::vector<long> ns;
  for (long n = 1; n <= 400; ++n) ns.push_back(n);
  const auto rep = dimension_limsup(v, origin, RateSchedule::linear(1, 2), ns);
  REQUIRE(rep.records.size() == 400);
  REQUIRE(rep.closed_form);
  CHECK(rep.formula_source == FormulaSource::ZeroRow);
  CHECK(rep.closed_form->branch == Branch::Xi);
  double mx = 0;
  for (const auto& r : rep.records) mx = std::max(mx, r.s_n);
  CHECK(rep.limsup_estimate == mx);
  CHECK(std::abs(rep.records.back().s_n - rep.closed_form->value) <= 0.02);
  CHECK(std::abs(rep.tail_window_max - rep.closed_form->value) <= 0.01);
  // k_w(n)/n tends to xi.
  CHECK(std::abs(static_cast<double>(rep.records.back().k_w) / 400 - 2) <= 0.05);
}

TEST_CASE("subsampling never raises the running maximum") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec t = target_from_point(v, Rational(1, 4), Rational(3, 4));
  std::vector<long> all, even;
  for (long n = 1; n <= 120; ++n) {
    all.push_back(n);
    if (n % 2 == 0) even.push_back(n);
  }
  const auto lin = RateSchedule::linear(1, 2);
  const auto full = dimension_limsup(v, t, lin, all);
  const auto sub = dimension_limsup(v, t, lin, even);
  CHECK(sub.limsup_estimate <= full.limsup_estimate);
  CHECK(std::abs(sub.tail_window_max - full.tail_window_max) < 0.01);
}

TEST_CASE("periodic targets with interior frequencies approach the closed form") {
  const GridIFS v = vicsek_ifs();
  // Row digits of 3/4 in base 3 alternate 2, 0.
  const TargetSpec t = target_from_point(v, Rational(1, 4), Rational(3, 4));
  const auto lin = RateSchedule::linear(1, 2);
  const std::vector<long> ns{400};
  const auto cf = applicable_closed_form(v, t, lin, ns);
  REQUIRE(cf);
  CHECK(cf->second == FormulaSource::FrequencyClosedForm);
  CHECK(std::abs(s_n(v, t, lin, 400).s_n - cf->first.value) <= 0.02);
}

TEST_CASE("constant target with an explicit table falls back to the per-n formula") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec t = target_from_point(v, Rational(1, 2), Rational(1, 2));
  const auto tab = RateSchedule::table({1, 1, 2, 2, 3, 3}, {1, 2, 3, 4, 5, 6});
  const std::vector<long> ns{1, 2, 3, 4, 5, 6};
  const auto rep = dimension_limsup(v, t, tab, ns);
  CHECK(rep.records.size() == 6);
  for (std::size_t k = 1; k < rep.running_max.size(); ++k) CHECK(rep.running_max[k] >= rep.running_max[k - 1]);
  REQUIRE(rep.closed_form);
  CHECK(rep.formula_source == FormulaSource::NonconvergentSchedule);
}

TEST_CASE("nonconvergent schedule formula") {
  const GridIFS v = vicsek_ifs();
  const TargetSpec t = target_from_point(v, Rational(1, 4), Rational(3, 4));
  const double g2 = slice_dimension(v, t.word).value;
  const auto lin = RateSchedule::linear(1, 2);
  std::vector<long> ns;
  for (long n = 1; n <= 300; ++n) ns.push_back(n);
  CHECK(std::abs(nonconvergent_dimension(v, t, lin, ns) - closed_form_dimension(kGamma, g2, 1, 2).value) < 1e-2);
  CHECK(nonconvergent_term(v, g2, lin, 300) == doctest::Approx(closed_form_dimension(kGamma, g2, 1, 2).value));
  const std::vector<long> one{37};
  CHECK(nonconvergent_dimension(v, t, lin, one) == doctest::Approx(nonconvergent_term(v, g2, lin, 37)));

  // lambda(n)/n alternates between 1 and 2 (xi = 2 lambda) on blocks.
  const auto alt = RateSchedule::piecewise({{1, 1, 2}, {100, 2, 4}, {200, 1, 2}, {300, 2, 4}, {400, 1, 2}});
  std::vector<long> range;
  for (long n = 1; n <= 499; ++n) range.push_back(n);
  const double best = std::max(formula(kGamma, g2, 1, 2), formula(kGamma, g2, 2, 4));
  CHECK(std::abs(nonconvergent_dimension(v, t, alt, range) - best) < 1e-2);
  const auto both = applicable_closed_form(v, t, alt, range);
  REQUIRE(both);
  CHECK(both->second == FormulaSource::NonconvergentSchedule);
}

TEST_CASE("block target stays above the frequency-free bound") {
  const GridIFS c = corner_ifs();
  const DigitPair letters[] = {{0, 0}, {0, 2}};
  const TargetSpec t = target_from_word(c, block_word(letters, 4, 1024));
  const auto lin = RateSchedule::linear(1, 2);
  CHECK_FALSE(t.frequencies.limit_exists);
  const auto r = s_n(c, t, lin, 256);
  CHECK(r.s_n > 1.0 / 3 + 0.05);
  const std::vector<long> ns{16, 256};
  CHECK_FALSE(applicable_closed_form(c, t, lin, ns));
}

TEST_CASE("schedules validate") {
  CHECK_THROWS_AS(RateSchedule::linear(2, 1), Error);
  const auto stalled = RateSchedule::table({1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1});
  const std::vector<long> ns{1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(stalled.validate_on(ns), Error);
  const auto fine = RateSchedule::linear(Rational(1, 2), 1);
  CHECK_NOTHROW(fine.validate_on(ns));
  CHECK(fine.lambda(3) == 2);
  CHECK(fine.xi(3) == 3);
}
