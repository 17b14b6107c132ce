#pragma once

#include <span>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/rational.hpp"
#include "carpet/word.hpp"

namespace carpet {

// One base-b expansion of a rational in [0,1], eventually periodic.
struct Expansion {
  std::vector<int> preperiod;
  std::vector<int> period;
};

// Every base-b expansion of x (one or two of them).
std::vector<Expansion> base_expansions(const Rational& x, int base);

// All J-admissible codings of (z, w), each in minimal form. Throws
// NotInAttractor when there are none.
std::vector<DigitWord> expansions_of(const GridIFS& ifs, const Rational& z, const Rational& w);

// Picks the coding that eventually maximizes the row-cylinder products
// prod |J2(y_i)|, then breaks ties by the number of (0,0), (0,b-1) and (b-1,0)
// letters. Periodic candidates only; exact integer comparisons throughout.
DigitWord canonical_representative(const GridIFS& ifs, std::span<const DigitWord> candidates);

struct DigitFrequencies {
  bool limit_exists = false;
  // Row-digit frequencies indexed by digit. Exact limits for periodic words;
  // empirical over the whole depth for truncations.
  std::vector<Rational> values;
};

DigitFrequencies digit_frequencies(const GridIFS& ifs, const DigitWord& word);

struct SliceDimension {
  double value = 0.0;
  bool liminf_attained = false;
};

// Dimension of the horizontal fiber of the carpet at the row coding of word.
// Truncated words report the minimum over positions in the second half of the
// truncation.
SliceDimension slice_dimension(const GridIFS& ifs, const DigitWord& word);

// True when every row digit of the word equals digit.
bool row_digits_all(const DigitWord& word, int digit);

// A shrinking-target centre: its canonical coding plus frequency data.
struct TargetSpec {
  DigitWord word;
  DigitFrequencies frequencies;
};

TargetSpec target_from_point(const GridIFS& ifs, const Rational& z, const Rational& w);

// Periodic words are checked against canonical_representative (NotCanonical
// otherwise); truncations are accepted as given.
TargetSpec target_from_word(const GridIFS& ifs, DigitWord word);

}  // namespace carpet
