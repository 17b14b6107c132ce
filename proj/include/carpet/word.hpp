#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/rational.hpp"

namespace carpet {

// A symbolic point: either an eventually periodic infinite word stored as
// (preperiod, period) in minimal form, or a finite truncation with an explicit
// depth. Indices passed to at() are 0-based; position i of the coding
// (x_i, y_i) is at(i - 1).
class DigitWord {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  // Period must be nonempty. The result is reduced: period primitive and
  // preperiod as short as possible.
  static DigitWord periodic(std::vector<DigitPair> preperiod, std::vector<DigitPair> period);
  static DigitWord constant(DigitPair pair) { return periodic({}, {pair}); }
  static DigitWord truncated(std::vector<DigitPair> digits);

  const std::vector<DigitPair>& preperiod() const noexcept { return preperiod_; }
  const std::vector<DigitPair>& period() const noexcept { return period_; }
  std::optional<std::size_t> truncation_depth() const noexcept { return depth_; }

  bool is_periodic() const noexcept { return !depth_.has_value(); }
  std::size_t available_depth() const noexcept { return depth_ ? *depth_ : kUnbounded; }

  // Throws InsufficientDepth past a truncation.
  DigitPair at(std::size_t index) const;
  std::vector<DigitPair> prefix(std::size_t length) const;

  friend bool operator==(const DigitWord&, const DigitWord&) = default;

 private:
  std::vector<DigitPair> preperiod_;
  std::vector<DigitPair> period_;
  std::optional<std::size_t> depth_;
};

std::string to_string(const DigitWord& word);

// sigma^n on words; the result is again eventually periodic (or a truncation
// with depth reduced by n).
DigitWord apply_shift(const DigitWord& word, std::size_t n);

// Throws InadmissiblePair if some pair of the stored word is not in J.
void require_admissible(const GridIFS& ifs, const DigitWord& word);

struct ExactPoint {
  Rational x;
  Rational y;

  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

// Projection of an eventually periodic word. Throws NonPeriodicInput for
// truncations.
ExactPoint project_word(int base, const DigitWord& word);

}  // namespace carpet
