#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "carpet/coding.hpp"
#include "carpet/ifs.hpp"
#include "carpet/log_monomial.hpp"
#include "carpet/schedule.hpp"
#include "carpet/word.hpp"

namespace carpet {

enum class Axis { Horizontal, Vertical };

// One way a window of length L may follow the target on one axis: either the
// target digits themselves, or the target up to position j-1, then a step of
// +-1 at j and the forced carry tail after it. Positions 1..L-1 are fixed by
// the pattern; position L is free.
struct WindowPattern {
  Axis axis = Axis::Horizontal;
  int deviation = 0;  // j, or 0 for the exact match
  int sign = 0;       // +1 or -1 for deviations
  std::vector<int> digits;

  bool exact() const noexcept { return deviation == 0; }
  friend bool operator==(const WindowPattern&, const WindowPattern&) = default;
};

// All patterns allowed for target digits t_1..t_{L-1}.
std::vector<WindowPattern> axis_window_patterns(int base, Axis axis, std::span<const int> target_digits);

// The window condition evaluated directly on word digits x_1..x_{L-1}
// against t_1..t_{L-1}, without generating patterns.
bool axis_condition_holds(int base, std::span<const int> target_digits, std::span<const int> word_digits);

// Target column digits z_1..z_{count} or row digits w_1..w_{count}.
std::vector<int> target_digits(const TargetSpec& target, Axis axis, long count);

// Pattern data for one n.
struct WindowAnalysis {
  long n = 0;
  long lambda = 0;
  long xi = 0;
  std::vector<WindowPattern> horizontal;
  std::vector<WindowPattern> vertical;
  // (h, v) index pairs that some word over J can carry.
  std::vector<std::pair<std::size_t, std::size_t>> realizable;
  // Distinct vertical indices appearing in realizable.
  std::vector<std::size_t> realizable_vertical;
};

bool jointly_realizable(const GridIFS& ifs, const WindowPattern& h, const WindowPattern& v, long lambda, long xi);

// Throws EmptyMn when no pattern pair is realizable.
WindowAnalysis analyze_windows(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n);

// Whether word lies in M_n: the window conditions on positions n+1..n+L-1 of both
// axes. Requires the word to be known to depth n + xi(n).
bool mn_membership(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
                   const DigitWord& word);

long agreement_length_kw(const WindowAnalysis& analysis);
long agreement_length_kw(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n);

// Row digit at window position i (1-based) under vertical pattern v;
// free positions i >= xi take the fullest row.
int window_row(const GridIFS& ifs, const WindowAnalysis& analysis, std::size_t v, long i);

// Row counts over positions lambda..j for pattern v.
RowCounts window_row_counts(const GridIFS& ifs, const WindowAnalysis& analysis, std::size_t v, long j);

struct WindowScore {
  std::size_t vertical = 0;  // maximizing pattern index
  RowCounts counts;
  LogMonomial value;
};

// A_{n,j} for j >= lambda(n): the best realizable vertical pattern.
WindowScore a_nj(const GridIFS& ifs, const WindowAnalysis& analysis, long j);
WindowScore a_nj(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n, long j);

// a_nj for every j in [lambda, j_max], computed incrementally.
std::vector<WindowScore> a_profile(const GridIFS& ifs, const WindowAnalysis& analysis, long j_max);

// A concrete window (positions 1..length) carried by pattern pair (h, v):
// fixed pairs below lambda, then the smallest column in the required row,
// then the fullest row.
std::vector<DigitPair> realize_window(const GridIFS& ifs, const WindowAnalysis& analysis, std::size_t h,
                                      std::size_t v, long length);

// Horizontal index pairing with vertical index v in a realizable pair.
std::size_t partner_horizontal(const WindowAnalysis& analysis, std::size_t v);

}  // namespace carpet
