#include <doctest.h>

#include <cmath>

#include "carpet/error.hpp"
#include "carpet/measure.hpp"
#include "carpet/shrinking_target.hpp"

using namespace carpet;

namespace {

struct Fixture {
  GridIFS ifs = vicsek_ifs();
  TargetSpec target = target_from_point(ifs, 0, 0);
  RateSchedule schedule = RateSchedule::linear(Rational(1, 2), 1);
  std::vector<long> breaks{2, 9};
  MeasureBuilder mu = build_lower_bound_measure(ifs, target, schedule, breaks, 2, 20);
};

// Independent of MeasureBuilder::mass: product of transitions.
Rational chain_mass(const MeasureBuilder& mu, const std::vector<DigitPair>& w) {
  Rational m = 1;
  for (std::size_t i = 0; i < w.size(); ++i) m *= mu.transition(static_cast<long>(i) + 1, w[i]);
  return m;
}

}  // namespace

TEST_CASE("phases follow the break points") {
  Fixture f;
  const auto& st = f.mu.stages();
  REQUIRE(st.size() == 2);
  CHECK(st[0].n == 2);
  CHECK(st[0].lambda == 1);
  CHECK(st[0].xi == 2);
  CHECK(f.mu.phase(1) == MeasureBuilder::Phase::Uniform);
  CHECK(f.mu.phase(3) == MeasureBuilder::Phase::PointMass);
  CHECK(f.mu.phase(5) == MeasureBuilder::Phase::PointMass);
  CHECK(f.mu.phase(6) == MeasureBuilder::Phase::RowSplit);
  CHECK(f.mu.phase(7) == MeasureBuilder::Phase::Uniform);
  CHECK(f.mu.phase(10) == MeasureBuilder::Phase::PointMass);
  CHECK(f.mu.phase(20) == MeasureBuilder::Phase::RowSplit);
}

TEST_CASE("uniform levels before the first break point") {
  Fixture f;
  for (auto a : f.ifs.digits()) {
    for (auto b : f.ifs.digits()) {
      const std::vector<DigitPair> p{a, b};
      CHECK(f.mu.mass(p) == Rational(1, 25));
    }
  }
}

TEST_CASE("level sums are exactly one") {
  Fixture f;
  const auto sums = level_sums(f.mu);
  CHECK(sums.size() == 21);
  for (const auto& s : sums) CHECK(s == 1);
}

TEST_CASE("masses agree with transition products") {
  Fixture f;
  const auto pts = sample_support(f.mu, 50, 5);
  for (const auto& w : pts) {
    const auto p = w.prefix(20);
    CHECK(f.mu.mass(p) == chain_mass(f.mu, p));
    CHECK(f.mu.mass(p) > 0);
  }
}

TEST_CASE("U bound holds and matches the point-mass cylinders") {
  Fixture f;
  for (std::size_t k = 0; k < f.mu.stages().size(); ++k) CHECK(u_bound_holds(f.mu, k));
  // Inside a point-mass phase the cylinder mass is U(n_k).
  const auto pts = sample_support(f.mu, 10, 9);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& st = f.mu.stages()[k];
    for (const auto& w : pts) {
      for (long m = st.n; m <= st.n + st.lambda + 2; ++m) {
        CHECK(f.mu.mass(w.prefix(static_cast<std::size_t>(m))) == u_value(f.mu, k));
      }
    }
  }
}

TEST_CASE("hoelder exponents on the checked window") {
  Fixture f;
  const double s = s_n(f.ifs, f.target, f.schedule, 9).s_n;
  const auto pts = sample_support(f.mu, 100, 2);
  std::vector<Rational> radii;
  for (long m = 10; m < 20; ++m) radii.push_back(power_of(3, -m) * Rational(2, 3));
  const auto hs = holder_exponent_samples(f.mu, pts, radii);
  CHECK(hs.size() == pts.size() * radii.size());
  for (const auto& h : hs) {
    CHECK(h.exponent >= 0.5 * s - 0.05);
    CHECK(h.ball_mass >= h.own_cylinder_mass);
  }
  const std::vector<Rational> one{1};
  CHECK_THROWS_AS(holder_exponent_samples(f.mu, pts, one), Error);
  const std::vector<Rational> tiny{power_of(3, -25)};
  CHECK_THROWS_AS(holder_exponent_samples(f.mu, pts, tiny), Error);
}

TEST_CASE("break point and depth guards") {
  Fixture f;
  const std::vector<long> close{2, 6};
  CHECK_THROWS_AS(build_lower_bound_measure(f.ifs, f.target, f.schedule, close, 2, 10), Error);
  CHECK_THROWS_AS(build_lower_bound_measure(f.ifs, f.target, f.schedule, f.breaks, 2, 21), Error);
}
