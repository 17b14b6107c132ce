#include "carpet/schedule.hpp"

#include <algorithm>

#include "carpet/error.hpp"

namespace carpet {

namespace {

long ceil_times(const Rational& rate, long n) { return ceil_of(rate * n).get_si(); }

void require_rates(const Rational& lambda, const Rational& xi) {
  if (lambda <= 0 || xi < lambda) {
    throw Error(ErrorCode::InvalidSchedule,
                "rates need 0 < lambda <= xi, got lambda=" + to_string(lambda) + " xi=" + to_string(xi));
  }
}

}  // namespace

RateSchedule RateSchedule::linear(const Rational& lambda, const Rational& xi) {
  require_rates(lambda, xi);
  RateSchedule s;
  s.kind_ = Kind::Linear;
  s.blocks_.push_back(Block{1, lambda, xi});
  return s;
}

RateSchedule RateSchedule::table(std::vector<long> lambda, std::vector<long> xi) {
  if (lambda.size() != xi.size() || lambda.empty()) {
    throw Error(ErrorCode::InvalidSchedule, "lambda and xi tables must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 1 || xi[i] < lambda[i]) {
      throw Error(ErrorCode::InvalidSchedule, "table entry n=" + std::to_string(i + 1) +
                                                  " violates 1 <= lambda(n) <= xi(n)");
    }
  }
  RateSchedule s;
  s.kind_ = Kind::Table;
  s.lambda_table_ = std::move(lambda);
  s.xi_table_ = std::move(xi);
  return s;
}

RateSchedule RateSchedule::piecewise(std::vector<Block> blocks) {
  if (blocks.empty() || blocks.front().start != 1) {
    throw Error(ErrorCode::InvalidSchedule, "piecewise schedule must start with a block at n=1");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    require_rates(blocks[i].lambda, blocks[i].xi);
    if (i > 0 && blocks[i].start <= blocks[i - 1].start) {
      throw Error(ErrorCode::InvalidSchedule, "block starts must increase");
    }
  }
  RateSchedule s;
  s.kind_ = Kind::Piecewise;
  s.blocks_ = std::move(blocks);
  return s;
}

const RateSchedule::Block& RateSchedule::block_for(long n) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), n,
                             [](long value, const Block& b) { return value < b.start; });
  return *(it - 1);
}

long RateSchedule::lambda(long n) const {
  if (n < 1) throw Error(ErrorCode::InvalidSchedule, "n must be positive");
  if (kind_ == Kind::Table) {
    if (static_cast<std::size_t>(n) > lambda_table_.size()) {
      throw Error(ErrorCode::InvalidSchedule, "n=" + std::to_string(n) + " beyond the rate table");
    }
    return lambda_table_[static_cast<std::size_t>(n - 1)];
  }
  return ceil_times(block_for(n).lambda, n);
}

long RateSchedule::xi(long n) const {
  if (n < 1) throw Error(ErrorCode::InvalidSchedule, "n must be positive");
  if (kind_ == Kind::Table) {
    if (static_cast<std::size_t>(n) > xi_table_.size()) {
      throw Error(ErrorCode::InvalidSchedule, "n=" + std::to_string(n) + " beyond the rate table");
    }
    return xi_table_[static_cast<std::size_t>(n - 1)];
  }
  return ceil_times(block_for(n).xi, n);
}

std::optional<std::pair<Rational, Rational>> RateSchedule::linear_rates() const {
  if (kind_ != Kind::Linear) return std::nullopt;
  return std::make_pair(blocks_.front().lambda, blocks_.front().xi);
}

void RateSchedule::validate_on(std::span<const long> ns) const {
  for (const long n : ns) {
    const long l = lambda(n);
    const long x = xi(n);
    if (l < 1 || x < l) {
      throw Error(ErrorCode::InvalidSchedule, "n=" + std::to_string(n) + " violates 1 <= lambda(n) <= xi(n)");
    }
  }
  if (ns.size() < 4) return;
  std::vector<long> sorted(ns.begin(), ns.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t half = sorted.size() / 2;
  long head = lambda(sorted.front());
  for (std::size_t i = 0; i < half; ++i) head = std::min(head, lambda(sorted[i]));
  long tail = lambda(sorted.back());
  for (std::size_t i = half; i < sorted.size(); ++i) tail = std::min(tail, lambda(sorted[i]));
  if (tail <= head) {
    throw Error(ErrorCode::InvalidSchedule, "lambda(n) does not grow over the queried range");
  }
}

}  // namespace carpet
