#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "carpet/coding.hpp"
#include "carpet/ifs.hpp"
#include "carpet/rational.hpp"
#include "carpet/schedule.hpp"
#include "carpet/word.hpp"

namespace carpet {

// The Cantor-type measure used for the lower bound: uniform over J, then a
// point mass along a best M_{n_k} word for lambda(n_k)+2 digits, then an even
// split over that word's rows up to xi(n_k)+2, then uniform again.
class MeasureBuilder {
 public:
  enum class Phase { Uniform, PointMass, RowSplit };

  struct Stage {
    long n = 0;
    long lambda = 0;
    long xi = 0;
    long j = 0;  // minimizing j over [lambda, xi-1]
    // Pairs at positions n+1 .. n+xi+2.
    std::vector<DigitPair> hat;
  };

  const GridIFS& ifs() const noexcept { return ifs_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }
  const Rational& delta() const noexcept { return delta_; }
  long depth() const noexcept { return depth_; }

  // Phase at digit position m (1-based) and the stage index it belongs to
  // (unused for Uniform).
  Phase phase(long m, std::size_t* stage = nullptr) const;

  // mu([prefix ++ next]) / mu([prefix]) at position m = |prefix| + 1.
  Rational transition(long m, DigitPair next) const;

  // Pairs with positive transition at position m.
  std::vector<DigitPair> support(long m) const;

  // mu of the cylinder of prefix (length <= depth).
  Rational mass(std::span<const DigitPair> prefix) const;

 private:
  friend MeasureBuilder build_lower_bound_measure(const GridIFS&, const TargetSpec&, const RateSchedule&,
                                                  std::span<const long>, const Rational&, long);
  GridIFS ifs_;
  std::vector<Stage> stages_;
  Rational delta_;
  long depth_ = 0;
};

// Throws BadBreakPoints unless n_{k+1} > Delta sum_{i<=k} (xi(n_i)+2) and
// n_{k+1} > n_k + xi(n_k) + 2; DepthTooLarge beyond n_K + xi(n_K) + 2.
MeasureBuilder build_lower_bound_measure(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                         std::span<const long> break_points, const Rational& delta, long depth);

// Sum of mu over all level-m cylinders for m = 0..depth, by explicit
// enumeration of the tree.
std::vector<Rational> level_sums(const MeasureBuilder& mu);

// |J|^{-(n_k - sum_{i<k}(xi(n_i)+2))} prod_{i<k} prod_{l=lambda+3}^{xi+2} 1/|J2(hat row)|.
Rational u_value(const MeasureBuilder& mu, std::size_t k);

// U(n_k) <= |J|^{-n_k (1 - 1/Delta)}, compared exactly.
bool u_bound_holds(const MeasureBuilder& mu, std::size_t k);

struct HolderSample {
  std::size_t point = 0;  // index into the sample list
  Rational radius;
  long level = 0;  // b^{-level-1} < r <= b^{-level}
  Rational ball_mass;
  Rational own_cylinder_mass;
  double exponent = 0.0;
};

// nu(B(p, r)) bounded above by the total mass of level-n squares meeting the
// r-neighbourhood of the sample's known square; exponent log nu / log r.
// Throws RadiusTooSmall for r < b^-depth, RadiusOutOfRange for r >= 1.
std::vector<HolderSample> holder_exponent_samples(const MeasureBuilder& mu, std::span<const DigitWord> points,
                                                  std::span<const Rational> radii);

// Random words of length depth drawn from mu.
std::vector<DigitWord> sample_support(const MeasureBuilder& mu, std::size_t count, std::uint64_t seed);

}  // namespace carpet
