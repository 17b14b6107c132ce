#include "carpet/word.hpp"

#include <algorithm>

#include "carpet/error.hpp"

namespace carpet {

namespace {

std::vector<DigitPair> primitive_root(std::vector<DigitPair> period) {
  const std::size_t n = period.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len != 0) continue;
    bool repeats = true;
    for (std::size_t i = len; i < n && repeats; ++i) {
      repeats = period[i] == period[i - len];
    }
    if (repeats) {
      period.resize(len);
      return period;
    }
  }
  return period;
}

}  // namespace

DigitWord DigitWord::periodic(std::vector<DigitPair> preperiod, std::vector<DigitPair> period) {
  if (period.empty()) {
    throw Error(ErrorCode::NonPeriodicInput, "an infinite word needs a nonempty period");
  }
  period = primitive_root(std::move(period));
  // Absorb trailing preperiod letters into the period by rotation.
  while (!preperiod.empty() && preperiod.back() == period.back()) {
    preperiod.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  DigitWord w;
  w.preperiod_ = std::move(preperiod);
  w.period_ = std::move(period);
  return w;
}

DigitWord DigitWord::truncated(std::vector<DigitPair> digits) {
  DigitWord w;
  w.depth_ = digits.size();
  w.preperiod_ = std::move(digits);
  return w;
}

DigitPair DigitWord::at(std::size_t index) const {
  if (index < preperiod_.size()) return preperiod_[index];
  if (depth_) {
    throw Error(ErrorCode::InsufficientDepth,
                "position " + std::to_string(index + 1) + " beyond truncation depth " +
                    std::to_string(*depth_));
  }
  return period_[(index - preperiod_.size()) % period_.size()];
}

std::vector<DigitPair> DigitWord::prefix(std::size_t length) const {
  std::vector<DigitPair> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(at(i));
  return out;
}

std::string to_string(const DigitWord& word) {
  std::string s;
  for (const DigitPair p : word.preperiod()) s += to_string(p);
  if (word.is_periodic()) {
    s += "[";
    for (const DigitPair p : word.period()) s += to_string(p);
    s += "]^inf";
  } else {
    s += "...";
  }
  return s;
}

DigitWord apply_shift(const DigitWord& word, std::size_t n) {
  if (!word.is_periodic()) {
    const auto& digits = word.preperiod();
    if (n > digits.size()) {
      throw Error(ErrorCode::InsufficientDepth, "shift beyond truncation depth");
    }
    return DigitWord::truncated(std::vector<DigitPair>(digits.begin() + static_cast<long>(n), digits.end()));
  }
  const auto& pre = word.preperiod();
  if (n <= pre.size()) {
    return DigitWord::periodic(std::vector<DigitPair>(pre.begin() + static_cast<long>(n), pre.end()),
                               word.period());
  }
  auto period = word.period();
  const std::size_t offset = (n - pre.size()) % period.size();
  std::rotate(period.begin(), period.begin() + static_cast<long>(offset), period.end());
  return DigitWord::periodic({}, std::move(period));
}

void require_admissible(const GridIFS& ifs, const DigitWord& word) {
  for (const auto* part : {&word.preperiod(), &word.period()}) {
    for (const DigitPair p : *part) {
      if (!ifs.contains(p)) {
        throw Error(ErrorCode::InadmissiblePair, "pair " + to_string(p) + " is not in J");
      }
    }
  }
}

ExactPoint project_word(int base, const DigitWord& word) {
  if (!word.is_periodic()) {
    throw Error(ErrorCode::NonPeriodicInput, "cannot project a truncated word exactly");
  }
  // value = pre / b^p + b^-p * P / (b^L - 1), with pre and P read as base-b integers.
  Integer pre_x = 0, pre_y = 0, per_x = 0, per_y = 0;
  for (const DigitPair d : word.preperiod()) {
    pre_x = pre_x * base + d.u;
    pre_y = pre_y * base + d.v;
  }
  for (const DigitPair d : word.period()) {
    per_x = per_x * base + d.u;
    per_y = per_y * base + d.v;
  }
  const Rational scale = power_of(base, -static_cast<long>(word.preperiod().size()));
  const Integer cycle = power(base, word.period().size()) - 1;
  ExactPoint p;
  p.x = scale * (Rational(pre_x) + make_rational(per_x, cycle));
  p.y = scale * (Rational(pre_y) + make_rational(per_y, cycle));
  return p;
}

}  // namespace carpet
