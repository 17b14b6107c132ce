#include "carpet/coding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

#include "carpet/error.hpp"

namespace carpet {

namespace {

int digit_at(const Expansion& e, std::size_t i) {
  if (i < e.preperiod.size()) return e.preperiod[i];
  return e.period[(i - e.preperiod.size()) % e.period.size()];
}

// Preperiod length P and period length L shared by all words.
std::pair<std::size_t, std::size_t> common_alignment(std::span<const DigitWord> words) {
  std::size_t pre = 0;
  std::size_t len = 1;
  for (const auto& w : words) {
    pre = std::max(pre, w.preperiod().size());
    len = std::lcm(len, w.period().size());
  }
  return {pre, len};
}

enum class Dominance { Less, Equal, Greater, Mixed };

// Compares prod_{i<=N} |J2(y_i)| for all large N.
Dominance compare_row_growth(const GridIFS& ifs, const DigitWord& a, const DigitWord& b,
                             std::size_t pre, std::size_t len) {
  Integer period_a = 1, period_b = 1;
  for (std::size_t i = pre; i < pre + len; ++i) {
    period_a *= ifs.row_count(a.at(i).v);
    period_b *= ifs.row_count(b.at(i).v);
  }
  if (period_a != period_b) return period_a > period_b ? Dominance::Greater : Dominance::Less;
  // Equal growth: the ratio is periodic in N from N = pre on.
  Integer prod_a = 1, prod_b = 1;
  for (std::size_t i = 0; i < pre; ++i) {
    prod_a *= ifs.row_count(a.at(i).v);
    prod_b *= ifs.row_count(b.at(i).v);
  }
  bool some_greater = false, some_less = false;
  for (std::size_t r = 0; r < len; ++r) {
    if (prod_a > prod_b) some_greater = true;
    if (prod_a < prod_b) some_less = true;
    prod_a *= ifs.row_count(a.at(pre + r).v);
    prod_b *= ifs.row_count(b.at(pre + r).v);
  }
  if (some_greater && some_less) return Dominance::Mixed;
  if (some_greater) return Dominance::Greater;
  if (some_less) return Dominance::Less;
  return Dominance::Equal;
}

using TieKey = std::array<long, 6>;

TieKey tie_key(const GridIFS& ifs, const DigitWord& w, std::size_t pre, std::size_t len) {
  const int top = ifs.base() - 1;
  const DigitPair preferred[3] = {{0, 0}, {0, top}, {top, 0}};
  TieKey key{};
  for (int c = 0; c < 3; ++c) {
    long in_period = 0, in_pre = 0;
    for (std::size_t i = 0; i < pre + len; ++i) {
      if (w.at(i) == preferred[c]) (i < pre ? in_pre : in_period) += 1;
    }
    key[static_cast<std::size_t>(2 * c)] = in_period;
    key[static_cast<std::size_t>(2 * c + 1)] = in_pre;
  }
  return key;
}

}  // namespace

std::vector<Expansion> base_expansions(const Rational& x, int base) {
  if (x < 0 || x > 1) {
    throw Error(ErrorCode::NotInAttractor, "coordinate " + to_string(x) + " outside [0,1]");
  }
  if (x == 0) return {Expansion{{}, {0}}};
  if (x == 1) return {Expansion{{}, {base - 1}}};

  const Integer den = x.get_den();
  Integer rem = x.get_num();
  std::vector<int> digits;
  std::map<Integer, std::size_t> seen;
  for (;;) {
    if (rem == 0) {
      // Terminating expansion: the second form lowers the last digit and
      // continues with (b-1) forever.
      Expansion finite{digits, {0}};
      auto lowered = digits;
      lowered.back() -= 1;
      return {finite, Expansion{lowered, {base - 1}}};
    }
    if (auto it = seen.find(rem); it != seen.end()) {
      const auto start = static_cast<long>(it->second);
      return {Expansion{std::vector<int>(digits.begin(), digits.begin() + start),
                        std::vector<int>(digits.begin() + start, digits.end())}};
    }
    seen.emplace(rem, digits.size());
    const Integer scaled = rem * base;
    const Integer digit = scaled / den;
    rem = scaled - digit * den;
    digits.push_back(static_cast<int>(digit.get_si()));
  }
}

std::vector<DigitWord> expansions_of(const GridIFS& ifs, const Rational& z, const Rational& w) {
  const auto xs = base_expansions(z, ifs.base());
  const auto ys = base_expansions(w, ifs.base());
  std::vector<DigitWord> out;
  for (const auto& ex : xs) {
    for (const auto& ey : ys) {
      const std::size_t pre = std::max(ex.preperiod.size(), ey.preperiod.size());
      const std::size_t len = std::lcm(ex.period.size(), ey.period.size());
      std::vector<DigitPair> pairs;
      bool admissible = true;
      for (std::size_t i = 0; i < pre + len && admissible; ++i) {
        const DigitPair p{digit_at(ex, i), digit_at(ey, i)};
        admissible = ifs.contains(p);
        pairs.push_back(p);
      }
      if (!admissible) continue;
      auto word = DigitWord::periodic(std::vector<DigitPair>(pairs.begin(), pairs.begin() + static_cast<long>(pre)),
                                      std::vector<DigitPair>(pairs.begin() + static_cast<long>(pre), pairs.end()));
      if (std::find(out.begin(), out.end(), word) == out.end()) out.push_back(std::move(word));
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::NotInAttractor,
                "(" + to_string(z) + ", " + to_string(w) + ") has no J-admissible coding");
  }
  return out;
}

DigitWord canonical_representative(const GridIFS& ifs, std::span<const DigitWord> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::EmptyCandidateSet, "no candidate codings");
  }
  for (const auto& c : candidates) {
    if (!c.is_periodic()) {
      throw Error(ErrorCode::UndecidableDominance,
                  "row-product dominance is only decidable for eventually periodic words");
    }
  }
  if (candidates.size() == 1) return candidates.front();

  const auto [pre, len] = common_alignment(candidates);
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const auto d = compare_row_growth(ifs, candidates[i], candidates[best], pre, len);
    if (d == Dominance::Mixed) {
      throw Error(ErrorCode::UndecidableDominance,
                  "no candidate maximizes the row products for all large N");
    }
    if (d == Dominance::Greater) best = i;
  }
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto d = compare_row_growth(ifs, candidates[i], candidates[best], pre, len);
    if (d == Dominance::Mixed || d == Dominance::Greater) {
      throw Error(ErrorCode::UndecidableDominance, "row-product dominance is not a total order here");
    }
    if (d == Dominance::Equal) tied.push_back(i);
  }
  std::size_t winner = tied.front();
  TieKey winner_key = tie_key(ifs, candidates[winner], pre, len);
  bool unique = true;
  for (std::size_t k = 1; k < tied.size(); ++k) {
    const auto key = tie_key(ifs, candidates[tied[k]], pre, len);
    if (key > winner_key) {
      winner = tied[k];
      winner_key = key;
      unique = true;
    } else if (key == winner_key && !(candidates[tied[k]] == candidates[winner])) {
      unique = false;
    }
  }
  if (!unique) {
    throw Error(ErrorCode::UndecidableTie, "candidates agree on every tie-break count");
  }
  return candidates[winner];
}

DigitFrequencies digit_frequencies(const GridIFS& ifs, const DigitWord& word) {
  DigitFrequencies f;
  f.values.assign(static_cast<std::size_t>(ifs.base()), Rational(0));
  const auto& letters = word.is_periodic() ? word.period() : word.preperiod();
  if (letters.empty()) {
    throw Error(ErrorCode::InsufficientDepth, "empty truncation has no frequencies");
  }
  std::vector<long> counts(static_cast<std::size_t>(ifs.base()), 0);
  for (const DigitPair p : letters) {
    if (p.v < 0 || p.v >= ifs.base()) {
      throw Error(ErrorCode::DigitOutOfRange, "row digit " + std::to_string(p.v));
    }
    ++counts[static_cast<std::size_t>(p.v)];
  }
  for (std::size_t a = 0; a < counts.size(); ++a) {
    f.values[a] = make_rational(counts[a], static_cast<long>(letters.size()));
  }
  f.limit_exists = word.is_periodic();
  return f;
}

bool row_digits_all(const DigitWord& word, int digit) {
  auto same = [digit](DigitPair p) { return p.v == digit; };
  return std::all_of(word.preperiod().begin(), word.preperiod().end(), same) &&
         std::all_of(word.period().begin(), word.period().end(), same);
}

SliceDimension slice_dimension(const GridIFS& ifs, const DigitWord& word) {
  const double log_b = std::log(static_cast<double>(ifs.base()));
  auto row_log = [&](int a) {
    const int count = ifs.row_count(a);
    if (count == 0) {
      throw Error(ErrorCode::NotInAttractor, "row " + std::to_string(a) + " of the carpet is empty");
    }
    return std::log(static_cast<double>(count));
  };

  if (!word.is_periodic()) {
    const std::size_t depth = *word.truncation_depth();
    if (depth == 0) throw Error(ErrorCode::InsufficientDepth, "empty truncation");
    double total = 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    const std::size_t first = (depth + 1) / 2;
    for (std::size_t n = 1; n <= depth; ++n) {
      total += row_log(word.at(n - 1).v);
      if (n >= first) lowest = std::min(lowest, total / (static_cast<double>(n) * log_b));
    }
    return {lowest, false};
  }

  const auto freq = digit_frequencies(ifs, word);
  const int top = ifs.base() - 1;
  if ((freq.values[0] == 1 && !row_digits_all(word, 0)) ||
      (freq.values[static_cast<std::size_t>(top)] == 1 && !row_digits_all(word, top))) {
    throw Error(ErrorCode::DegenerateExpansion,
                "row coordinate has two base-b expansions; use the zero-row/top-row formulas");
  }
  double value = 0.0;
  for (int a = 0; a < ifs.base(); ++a) {
    const Rational& p = freq.values[static_cast<std::size_t>(a)];
    if (p > 0) value += p.get_d() * row_log(a);
  }
  return {value / log_b, true};
}

TargetSpec target_from_point(const GridIFS& ifs, const Rational& z, const Rational& w) {
  const auto candidates = expansions_of(ifs, z, w);
  auto word = canonical_representative(ifs, candidates);
  auto freq = digit_frequencies(ifs, word);
  return TargetSpec{std::move(word), std::move(freq)};
}

TargetSpec target_from_word(const GridIFS& ifs, DigitWord word) {
  require_admissible(ifs, word);
  if (word.is_periodic()) {
    const auto point = project_word(ifs.base(), word);
    const auto canonical = canonical_representative(ifs, expansions_of(ifs, point.x, point.y));
    if (!(canonical == word)) {
      throw Error(ErrorCode::NotCanonical,
                  to_string(word) + " is not the canonical coding; use " + to_string(canonical));
    }
  }
  auto freq = digit_frequencies(ifs, word);
  return TargetSpec{std::move(word), std::move(freq)};
}

}  // namespace carpet
