#include "carpet/samples.hpp"

#include <cmath>
#include <random>

#include "carpet/error.hpp"
#include "carpet/windows.hpp"

namespace carpet {

std::vector<DigitWord> all_truncations(const GridIFS& ifs, long depth) {
  if (depth < 0 || static_cast<double>(depth) * std::log(ifs.size()) > std::log(2e7)) {
    throw Error(ErrorCode::EnumerationTooLarge, "|J|^" + std::to_string(depth) + " truncations");
  }
  const auto digits = ifs.digits();
  std::vector<DigitWord> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(depth), 0);
  while (true) {
    std::vector<DigitPair> w;
    w.reserve(idx.size());
    for (const std::size_t i : idx) w.push_back(digits[i]);
    out.push_back(DigitWord::truncated(std::move(w)));
    long pos = depth - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == digits.size()) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<DigitWord> prefixed_periodic(const GridIFS& ifs, long prefix_length, std::span<const DigitWord> tails) {
  std::vector<DigitWord> out;
  for (const auto& p : all_truncations(ifs, prefix_length)) {
    const auto head = p.prefix(static_cast<std::size_t>(prefix_length));
    for (const auto& t : tails) {
      if (!t.is_periodic()) throw Error(ErrorCode::NonPeriodicInput, "tails must be periodic");
      std::vector<DigitPair> pre = head;
      pre.insert(pre.end(), t.preperiod().begin(), t.preperiod().end());
      out.push_back(DigitWord::periodic(std::move(pre), t.period()));
    }
  }
  return out;
}

std::vector<DigitWord> biased_samples(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                      long n, long depth, std::size_t count, std::uint64_t seed) {
  const long xi = schedule.xi(n);
  if (depth < n + xi) throw Error(ErrorCode::InsufficientDepth, "sample depth below n + xi(n)");
  std::mt19937_64 rng(seed);
  const auto digits = ifs.digits();
  std::uniform_int_distribution<std::size_t> letter(0, digits.size() - 1);
  auto random_pair = [&] { return digits[letter(rng)]; };

  std::optional<WindowAnalysis> analysis;
  try {
    analysis = analyze_windows(ifs, target, schedule, n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyMn) throw;
  }

  std::vector<DigitWord> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<DigitPair> w;
    w.reserve(static_cast<std::size_t>(depth));
    for (long i = 0; i < n; ++i) w.push_back(random_pair());
    const int mode = static_cast<int>(s % 4);
    if (mode == 1 || mode == 2) {
      long copy = depth - n;
      if (mode == 2) copy = std::uniform_int_distribution<long>(0, xi)(rng);
      for (long i = 0; i < copy; ++i) w.push_back(target.word.at(static_cast<std::size_t>(i)));
    } else if (mode == 3 && analysis && !analysis->realizable.empty()) {
      const auto& pair = analysis->realizable[std::uniform_int_distribution<std::size_t>(
          0, analysis->realizable.size() - 1)(rng)];
      const auto window = realize_window(ifs, *analysis, pair.first, pair.second, xi);
      w.insert(w.end(), window.begin(), window.end());
    }
    while (static_cast<long>(w.size()) < depth) w.push_back(random_pair());
    out.push_back(DigitWord::truncated(std::move(w)));
  }
  return out;
}

}  // namespace carpet
