#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "carpet/rational.hpp"

namespace carpet {

// The integer rate sequences lambda(n) <= xi(n) governing the rectangle sides
// b^-lambda(n) (horizontal) and b^-xi(n) (vertical).
class RateSchedule {
 public:
  enum class Kind { Linear, Table, Piecewise };

  // Piecewise-linear block: for n >= start (until the next block),
  // lambda(n) = ceil(lambda * n) and xi(n) = ceil(xi * n).
  struct Block {
    long start = 1;
    Rational lambda;
    Rational xi;

    friend bool operator==(const Block&, const Block&) = default;
  };

  // lambda(n) = ceil(lambda n), xi(n) = ceil(xi n).
  static RateSchedule linear(const Rational& lambda, const Rational& xi);
  // Explicit values; entry k holds n = k + 1.
  static RateSchedule table(std::vector<long> lambda, std::vector<long> xi);
  static RateSchedule piecewise(std::vector<Block> blocks);

  Kind kind() const noexcept { return kind_; }
  long lambda(long n) const;
  long xi(long n) const;

  // (lambda, xi) for linear schedules.
  std::optional<std::pair<Rational, Rational>> linear_rates() const;

  const std::vector<long>& lambda_table() const noexcept { return lambda_table_; }
  const std::vector<long>& xi_table() const noexcept { return xi_table_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  // Checks 1 <= lambda(n) <= xi(n) on every queried n and that lambda grows
  // over the range (its tail minimum exceeds its head minimum) when the range
  // has at least four points. Throws InvalidSchedule.
  void validate_on(std::span<const long> ns) const;

  friend bool operator==(const RateSchedule&, const RateSchedule&) = default;

 private:
  const Block& block_for(long n) const;

  Kind kind_ = Kind::Linear;
  std::vector<Block> blocks_;
  std::vector<long> lambda_table_;
  std::vector<long> xi_table_;
};

}  // namespace carpet
