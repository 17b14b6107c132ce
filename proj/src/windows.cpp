#include "carpet/windows.hpp"

#include <algorithm>
#include <optional>

#include "carpet/error.hpp"

namespace carpet {

std::vector<WindowPattern> axis_window_patterns(int base, Axis axis, std::span<const int> t) {
  const int top = base - 1;
  const std::size_t m = t.size();
  std::vector<WindowPattern> out;
  out.push_back(WindowPattern{axis, 0, 0, std::vector<int>(t.begin(), t.end())});
  // tail_zero[j] / tail_top[j]: t_{j+1..m} are all 0 / all b-1 (0-based j).
  std::vector<char> tail_zero(m + 1, 1), tail_top(m + 1, 1);
  for (std::size_t k = m; k-- > 0;) {
    tail_zero[k] = tail_zero[k + 1] && t[k] == 0;
    tail_top[k] = tail_top[k + 1] && t[k] == top;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    const int here = t[j - 1];
    if (here >= 1 && tail_zero[j]) {
      WindowPattern p{axis, static_cast<int>(j), -1, std::vector<int>(t.begin(), t.end())};
      p.digits[j - 1] = here - 1;
      std::fill(p.digits.begin() + static_cast<std::ptrdiff_t>(j), p.digits.end(), top);
      out.push_back(std::move(p));
    }
    if (here <= top - 1 && tail_top[j]) {
      WindowPattern p{axis, static_cast<int>(j), +1, std::vector<int>(t.begin(), t.end())};
      p.digits[j - 1] = here + 1;
      std::fill(p.digits.begin() + static_cast<std::ptrdiff_t>(j), p.digits.end(), 0);
      out.push_back(std::move(p));
    }
  }
  return out;
}

bool axis_condition_holds(int base, std::span<const int> t, std::span<const int> x) {
  const std::size_t m = t.size();
  std::size_t j = 0;
  while (j < m && x[j] == t[j]) ++j;
  if (j == m) return true;
  const int step = x[j] - t[j];
  if (step == -1) {
    for (std::size_t i = j + 1; i < m; ++i) {
      if (x[i] - t[i] != base - 1) return false;
    }
    return true;
  }
  if (step == 1) {
    for (std::size_t i = j + 1; i < m; ++i) {
      if (t[i] - x[i] != base - 1) return false;
    }
    return true;
  }
  return false;
}

std::vector<int> target_digits(const TargetSpec& target, Axis axis, long count) {
  if (count > 0 && static_cast<std::size_t>(count) > target.word.available_depth()) {
    throw Error(ErrorCode::InsufficientDepth, "target known to depth " +
                                                  std::to_string(target.word.available_depth()) + ", need " +
                                                  std::to_string(count));
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0L)));
  for (long i = 0; i < count; ++i) {
    const DigitPair p = target.word.at(static_cast<std::size_t>(i));
    out.push_back(axis == Axis::Horizontal ? p.u : p.v);
  }
  return out;
}

bool jointly_realizable(const GridIFS& ifs, const WindowPattern& h, const WindowPattern& v, long lambda, long xi) {
  for (long i = 1; i < xi; ++i) {
    const int row = v.digits[static_cast<std::size_t>(i - 1)];
    if (i < lambda) {
      if (!ifs.contains(h.digits[static_cast<std::size_t>(i - 1)], row)) return false;
    } else if (ifs.row_count(row) == 0) {
      return false;
    }
  }
  return true;
}

WindowAnalysis analyze_windows(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n) {
  WindowAnalysis a;
  a.n = n;
  a.lambda = schedule.lambda(n);
  a.xi = schedule.xi(n);
  if (a.lambda < 1 || a.xi < a.lambda) {
    throw Error(ErrorCode::InvalidSchedule, "n=" + std::to_string(n) + " violates 1 <= lambda(n) <= xi(n)");
  }
  a.horizontal = axis_window_patterns(ifs.base(), Axis::Horizontal, target_digits(target, Axis::Horizontal, a.lambda - 1));
  a.vertical = axis_window_patterns(ifs.base(), Axis::Vertical, target_digits(target, Axis::Vertical, a.xi - 1));
  for (std::size_t v = 0; v < a.vertical.size(); ++v) {
    bool any = false;
    for (std::size_t h = 0; h < a.horizontal.size(); ++h) {
      if (jointly_realizable(ifs, a.horizontal[h], a.vertical[v], a.lambda, a.xi)) {
        a.realizable.emplace_back(h, v);
        any = true;
      }
    }
    if (any) a.realizable_vertical.push_back(v);
  }
  if (a.realizable.empty()) {
    throw Error(ErrorCode::EmptyMn, "no window pattern pair is carried by J at n=" + std::to_string(n));
  }
  return a;
}

bool mn_membership(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
                   const DigitWord& word) {
  const long lambda = schedule.lambda(n);
  const long xi = schedule.xi(n);
  if (word.available_depth() < static_cast<std::size_t>(n + xi)) {
    throw Error(ErrorCode::InsufficientDepth, "word known to depth " + std::to_string(word.available_depth()) +
                                                  ", M_n needs " + std::to_string(n + xi));
  }
  const auto z = target_digits(target, Axis::Horizontal, lambda - 1);
  const auto w = target_digits(target, Axis::Vertical, xi - 1);
  std::vector<int> x, y;
  for (long i = 1; i < xi; ++i) {
    const DigitPair p = word.at(static_cast<std::size_t>(n + i - 1));
    if (i < lambda) x.push_back(p.u);
    y.push_back(p.v);
  }
  return axis_condition_holds(ifs.base(), z, x) && axis_condition_holds(ifs.base(), w, y);
}

long agreement_length_kw(const WindowAnalysis& a) {
  long k = a.xi - 1;
  for (const std::size_t v : a.realizable_vertical) {
    const WindowPattern& p = a.vertical[v];
    if (!p.exact()) k = std::min(k, static_cast<long>(p.deviation) - 1);
  }
  return k;
}

long agreement_length_kw(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n) {
  return agreement_length_kw(analyze_windows(ifs, target, schedule, n));
}

int window_row(const GridIFS& ifs, const WindowAnalysis& a, std::size_t v, long i) {
  if (i < a.xi) return a.vertical[v].digits[static_cast<std::size_t>(i - 1)];
  return ifs.fullest_row();
}

RowCounts window_row_counts(const GridIFS& ifs, const WindowAnalysis& a, std::size_t v, long j) {
  RowCounts counts(static_cast<std::size_t>(ifs.base()), 0);
  for (long i = a.lambda; i <= j; ++i) ++counts[static_cast<std::size_t>(window_row(ifs, a, v, i))];
  return counts;
}

WindowScore a_nj(const GridIFS& ifs, const WindowAnalysis& a, long j) {
  if (j < a.lambda) throw Error(ErrorCode::InvalidSchedule, "A_{n,j} needs j >= lambda(n)");
  std::optional<WindowScore> best;
  for (const std::size_t v : a.realizable_vertical) {
    WindowScore s{v, window_row_counts(ifs, a, v, j), {}};
    s.value = row_weight(ifs, s.counts);
    if (!best || compare(s.value, best->value) > 0) best = std::move(s);
  }
  return *best;
}

WindowScore a_nj(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n, long j) {
  return a_nj(ifs, analyze_windows(ifs, target, schedule, n), j);
}

std::vector<WindowScore> a_profile(const GridIFS& ifs, const WindowAnalysis& a, long j_max) {
  std::vector<WindowScore> out;
  if (j_max < a.lambda) return out;
  const std::size_t count = a.realizable_vertical.size();
  std::vector<RowCounts> running(count, RowCounts(static_cast<std::size_t>(ifs.base()), 0));
  std::vector<LogMonomial> weight(count);
  std::vector<LogMonomial> row_log(static_cast<std::size_t>(ifs.base()));
  for (int r = 0; r < ifs.base(); ++r) {
    if (ifs.row_count(r) > 0) row_log[static_cast<std::size_t>(r)] = LogMonomial::log_of(ifs.row_count(r));
  }
  out.reserve(static_cast<std::size_t>(j_max - a.lambda + 1));
  for (long j = a.lambda; j <= j_max; ++j) {
    std::size_t best = 0;
    for (std::size_t c = 0; c < count; ++c) {
      const int row = window_row(ifs, a, a.realizable_vertical[c], j);
      ++running[c][static_cast<std::size_t>(row)];
      weight[c] += row_log[static_cast<std::size_t>(row)];
      if (c > 0 && compare(weight[c], weight[best]) > 0) best = c;
    }
    out.push_back(WindowScore{a.realizable_vertical[best], running[best], weight[best]});
  }
  return out;
}

std::size_t partner_horizontal(const WindowAnalysis& a, std::size_t v) {
  for (const auto& [h, vv] : a.realizable) {
    if (vv == v) return h;
  }
  throw Error(ErrorCode::EmptyMn, "vertical pattern has no realizable partner");
}

std::vector<DigitPair> realize_window(const GridIFS& ifs, const WindowAnalysis& a, std::size_t h, std::size_t v,
                                      long length) {
  std::vector<DigitPair> out;
  out.reserve(static_cast<std::size_t>(std::max(length, 0L)));
  for (long i = 1; i <= length; ++i) {
    const int row = window_row(ifs, a, v, i);
    if (i < a.lambda) {
      out.push_back(DigitPair{a.horizontal[h].digits[static_cast<std::size_t>(i - 1)], row});
    } else {
      out.push_back(row_set(ifs, row).front());
    }
  }
  return out;
}

}  // namespace carpet
