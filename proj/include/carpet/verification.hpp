#pragma once

#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "carpet/coding.hpp"
#include "carpet/ifs.hpp"
#include "carpet/rational.hpp"
#include "carpet/schedule.hpp"
#include "carpet/windows.hpp"
#include "carpet/word.hpp"

namespace carpet {

// Closed axis-parallel rectangle with exact corners.
struct Rect {
  Rational x_lo, x_hi, y_lo, y_hi;

  bool contains(const Rect& inner) const;
  bool contains(const ExactPoint& p) const;
};

// R((z,w), b^-a, b^-c).
Rect target_rectangle(int base, const ExactPoint& centre, long a, long c);

// Where T^n of a sample lies: a single point for periodic words, the closed
// square of the known digits n+1..depth for truncations.
Rect shifted_region(int base, const DigitWord& word, long n);

// Exact centre of a periodic target. Throws NonPeriodicInput otherwise.
ExactPoint target_point(int base, const TargetSpec& target);

struct CheckReport {
  long checked = 0;
  // Samples for which the implication's premise held.
  long premise_hits = 0;
  long violations = 0;
  std::vector<DigitWord> counterexamples;  // first few
  bool passed() const { return violations == 0; }
};

// T^n in R(b^-lambda, b^-xi) implies membership in M_n. A truncated sample
// counts as inside only if its whole square is.
CheckReport check_containment_forward(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                      long n, std::span<const DigitWord> samples);

// Membership in M_n implies T^n in R(b^-lambda+2, b^-xi+2), for the whole
// square of a truncated sample.
CheckReport check_containment_backward(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                       long n, std::span<const DigitWord> samples);

struct SetRelationReport {
  bool boundary = false;
  long checked = 0;
  long rectangle_hits = 0;  // samples with T^n(x,y) in the small rectangle
  long w_hits = 0;          // samples within b^{-lambda(n)-n}, b^{-xi(n)-n} of some f_t(z,w)
  long violations = 0;
  long rsum_violations = 0;
  std::vector<DigitWord> counterexamples;
  bool passed() const { return violations == 0 && rsum_violations == 0; }
};

// The smallest k with v in (b^-k, 1-b^-k); 0 when v is 0 or 1.
long interior_depth(int base, const Rational& v);

// For targets off the boundary: the rectangle condition at time n holds iff
// the cylinder condition with t = the sample's first n pairs holds for some t
// in J^n. On the boundary: rectangle implies cylinder, cylinder implies the
// nine-rectangle union, and every sum_i (x_i - u_i) b^{n-i} is in {-1,0,1}.
// Samples must be periodic. Throws ThresholdNotMet when the interior case is
// asked before lambda(n) and xi(n) clear the target's distance from the edge.
SetRelationReport check_set_relation(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                     long n, std::span<const DigitWord> samples);

struct CoverFamily {
  long n = 0;
  long j = 0;
  std::vector<DyadicBox> boxes;        // level n + j
  std::vector<DyadicBox> window_boxes; // level j squares of T^n(box)
  Integer bound;                       // 9 |J|^n max prod |J2(y)|
};

// Guards: |J|^n <= 1e7 and at most 2e6 boxes materialized.
CoverFamily build_cover(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n, long j);

// Every window square lies in the enlarged rectangle (meaningful for j = xi(n)).
bool cover_within_enlarged(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                           const CoverFamily& cover);

using Window = std::vector<DigitPair>;
using MnPredicate =
    std::function<bool(const GridIFS&, const TargetSpec&, const RateSchedule&, long, const DigitWord&)>;

// Every length-xi(n) window over J passing the predicate, by exhaustion.
// Guard (b^2)^xi(n) <= 1e7.
std::set<Window> brute_force_mn(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
                                const MnPredicate& predicate = mn_membership);

// Windows carried by the realizable pattern pairs.
std::set<Window> pattern_windows(const GridIFS& ifs, const WindowAnalysis& analysis);

struct OracleComparison {
  long windows_pattern = 0;
  long windows_brute = 0;
  bool windows_equal = false;
  long a_checked = 0;
  long a_mismatches = 0;
  std::string detail;
  bool passed() const { return windows_equal && a_mismatches == 0; }
};

// Pattern windows against brute_force_mn, and A_{n,j} against the direct
// maximum over brute-force windows for lambda(n) <= j <= xi(n) + 2.
OracleComparison compare_with_oracle(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                     long n, const MnPredicate& predicate = mn_membership);

// Negative control: drops the forced-tail requirement after a +-1 step.
bool corrupted_mn_membership(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
                             const DigitWord& word);

}  // namespace carpet
