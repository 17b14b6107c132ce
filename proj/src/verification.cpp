#include "carpet/verification.hpp"

#include <algorithm>
#include <cstdlib>

#include "carpet/error.hpp"

namespace carpet {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

void note(std::vector<DigitWord>& list, const DigitWord& w) {
  if (list.size() < kMaxCounterexamples) list.push_back(w);
}

bool abs_at_most(const Rational& v, const Rational& bound) { return v <= bound && -v <= bound; }

// Base-b digits of k, most significant first, padded to length.
std::vector<int> digits_of(const Integer& k, int base, long length) {
  std::vector<int> out(static_cast<std::size_t>(length), 0);
  Integer rest = k;
  for (long i = length; i-- > 0;) {
    const Integer q = rest / base;
    out[static_cast<std::size_t>(i)] = static_cast<int>(Integer(rest - q * base).get_si());
    rest = q;
  }
  return out;
}

// Calls visit on every word of J^length (odometer order).
template <typename Visit>
void for_each_word(const GridIFS& ifs, long length, Visit&& visit) {
  const auto letters = ifs.digits();
  std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
  Window w(static_cast<std::size_t>(length), letters.front());
  while (true) {
    visit(static_cast<const Window&>(w));
    long pos = length - 1;
    while (pos >= 0) {
      auto& i = idx[static_cast<std::size_t>(pos)];
      if (++i < letters.size()) {
        w[static_cast<std::size_t>(pos)] = letters[i];
        break;
      }
      i = 0;
      w[static_cast<std::size_t>(pos)] = letters.front();
      --pos;
    }
    if (pos < 0) return;
  }
}

// Extends every partial window by each pair in choices.
void extend(std::vector<Window>& partial, const std::vector<DigitPair>& choices) {
  std::vector<Window> next;
  next.reserve(partial.size() * choices.size());
  for (const auto& w : partial) {
    for (const DigitPair p : choices) {
      next.push_back(w);
      next.back().push_back(p);
    }
  }
  partial = std::move(next);
}

// Windows of positions 1..length carried by pattern pair (h, v).
std::vector<Window> windows_for(const GridIFS& ifs, const WindowAnalysis& a, std::size_t h, std::size_t v,
                                long length) {
  const std::vector<DigitPair> all(ifs.digits().begin(), ifs.digits().end());
  std::vector<Window> out{Window{}};
  for (long i = 1; i <= length; ++i) {
    if (i < a.lambda) {
      extend(out, {DigitPair{a.horizontal[h].digits[static_cast<std::size_t>(i - 1)],
                             a.vertical[v].digits[static_cast<std::size_t>(i - 1)]}});
    } else if (i < a.xi) {
      extend(out, row_set(ifs, a.vertical[v].digits[static_cast<std::size_t>(i - 1)]));
    } else {
      extend(out, all);
    }
  }
  return out;
}

bool corrupted_axis(std::span<const int> t, std::span<const int> x) {
  std::size_t j = 0;
  while (j < t.size() && x[j] == t[j]) ++j;
  return j == t.size() || std::abs(x[j] - t[j]) == 1;
}

}  // namespace

bool Rect::contains(const Rect& inner) const {
  return x_lo <= inner.x_lo && inner.x_hi <= x_hi && y_lo <= inner.y_lo && inner.y_hi <= y_hi;
}

bool Rect::contains(const ExactPoint& p) const {
  return x_lo <= p.x && p.x <= x_hi && y_lo <= p.y && p.y <= y_hi;
}

Rect target_rectangle(int base, const ExactPoint& c, long a, long e) {
  const Rational hx = power_of(base, -a);
  const Rational hy = power_of(base, -e);
  return Rect{c.x - hx, c.x + hx, c.y - hy, c.y + hy};
}

Rect shifted_region(int base, const DigitWord& word, long n) {
  if (word.is_periodic()) {
    const ExactPoint p = project_word(base, apply_shift(word, static_cast<std::size_t>(n)));
    return Rect{p.x, p.x, p.y, p.y};
  }
  const std::size_t depth = word.available_depth();
  if (depth < static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InsufficientDepth, "sample shorter than the shift");
  }
  Integer kx = 0, ky = 0;
  for (std::size_t i = static_cast<std::size_t>(n); i < depth; ++i) {
    const DigitPair p = word.at(i);
    kx = kx * base + p.u;
    ky = ky * base + p.v;
  }
  const Rational side = power_of(base, -static_cast<long>(depth - static_cast<std::size_t>(n)));
  const Rational x = Rational(kx) * side;
  const Rational y = Rational(ky) * side;
  return Rect{x, x + side, y, y + side};
}

ExactPoint target_point(int base, const TargetSpec& target) {
  if (!target.word.is_periodic()) {
    throw Error(ErrorCode::NonPeriodicInput, "rectangle checks need an exactly known target");
  }
  return project_word(base, target.word);
}

CheckReport check_containment_forward(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                      long n, std::span<const DigitWord> samples) {
  const Rect small = target_rectangle(ifs.base(), target_point(ifs.base(), target), schedule.lambda(n), schedule.xi(n));
  CheckReport r;
  for (const auto& w : samples) {
    ++r.checked;
    if (!small.contains(shifted_region(ifs.base(), w, n))) continue;
    ++r.premise_hits;
    if (!mn_membership(ifs, target, schedule, n, w)) {
      ++r.violations;
      note(r.counterexamples, w);
    }
  }
  return r;
}

CheckReport check_containment_backward(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                       long n, std::span<const DigitWord> samples) {
  const Rect big = target_rectangle(ifs.base(), target_point(ifs.base(), target), schedule.lambda(n) - 2,
                                    schedule.xi(n) - 2);
  CheckReport r;
  for (const auto& w : samples) {
    ++r.checked;
    if (!mn_membership(ifs, target, schedule, n, w)) continue;
    ++r.premise_hits;
    if (!big.contains(shifted_region(ifs.base(), w, n))) {
      ++r.violations;
      note(r.counterexamples, w);
    }
  }
  return r;
}

long interior_depth(int base, const Rational& v) {
  if (v <= 0 || v >= 1) return 0;
  for (long k = 1;; ++k) {
    const Rational edge = power_of(base, -k);
    if (edge < v && v < 1 - edge) return k;
  }
}

SetRelationReport check_set_relation(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                     long n, std::span<const DigitWord> samples) {
  const int b = ifs.base();
  const ExactPoint c = target_point(b, target);
  const long lambda = schedule.lambda(n);
  const long xi = schedule.xi(n);
  SetRelationReport rep;
  rep.boundary = c.x == 0 || c.x == 1 || c.y == 0 || c.y == 1;
  if (!rep.boundary) {
    const long kz = interior_depth(b, c.x);
    const long kw = interior_depth(b, c.y);
    if (lambda <= kz || xi <= kw) {
      throw Error(ErrorCode::ThresholdNotMet, "need lambda(n) > " + std::to_string(kz) + " and xi(n) > " +
                                                  std::to_string(kw) + " for the two-sided relation");
    }
  }
  const Rect small = target_rectangle(b, c, lambda, xi);
  const Rational hx = power_of(b, -lambda);
  const Rational hy = power_of(b, -xi);
  const Integer scale = power(b, static_cast<unsigned long>(n));

  for (const auto& w : samples) {
    if (!w.is_periodic()) throw Error(ErrorCode::NonPeriodicInput, "set relation samples must be periodic");
    ++rep.checked;
    const ExactPoint p = project_word(b, w);
    const ExactPoint t = project_word(b, apply_shift(w, static_cast<std::size_t>(n)));
    const bool eq1 = small.contains(t);

    // |b^n x - U - z| <= b^-lambda with U = sum u_i b^{n-i}, 0 <= U < b^n.
    const Rational cx = Rational(scale) * p.x - c.x;
    const Rational cy = Rational(scale) * p.y - c.y;
    const Integer ux_lo = std::max(Integer(0), ceil_of(cx - hx));
    const Integer ux_hi = std::min(Integer(scale - 1), floor_of(cx + hx));
    const Integer uy_lo = std::max(Integer(0), ceil_of(cy - hy));
    const Integer uy_hi = std::min(Integer(scale - 1), floor_of(cy + hy));
    Integer own_x = 0, own_y = 0;
    for (long i = 0; i < n; ++i) {
      own_x = own_x * b + w.at(static_cast<std::size_t>(i)).u;
      own_y = own_y * b + w.at(static_cast<std::size_t>(i)).v;
    }
    bool eq2 = false;
    for (Integer ux = ux_lo; ux <= ux_hi; ++ux) {
      const auto du = digits_of(ux, b, n);
      for (Integer uy = uy_lo; uy <= uy_hi; ++uy) {
        const auto dv = digits_of(uy, b, n);
        bool admissible = true;
        for (long i = 0; i < n && admissible; ++i) {
          admissible = ifs.contains(du[static_cast<std::size_t>(i)], dv[static_cast<std::size_t>(i)]);
        }
        if (!admissible) continue;
        eq2 = true;
        const Integer r = own_x - ux;
        const Integer s = own_y - uy;
        if (abs(r) > 1 || abs(s) > 1) {
          ++rep.rsum_violations;
          note(rep.counterexamples, w);
        }
      }
    }
    if (eq1) ++rep.rectangle_hits;
    if (eq2) ++rep.w_hits;

    bool ok = true;
    if (!rep.boundary) {
      ok = eq1 == eq2;
    } else {
      if (eq1 && !eq2) ok = false;
      if (eq2) {
        bool in_union = false;
        for (int r = -1; r <= 1 && !in_union; ++r) {
          for (int s = -1; s <= 1 && !in_union; ++s) {
            in_union = abs_at_most(t.x - (c.x + r), hx) && abs_at_most(t.y - (c.y + s), hy);
          }
        }
        ok = ok && in_union;
      }
    }
    if (!ok) {
      ++rep.violations;
      note(rep.counterexamples, w);
    }
  }
  return rep;
}

CoverFamily build_cover(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n, long j) {
  const WindowAnalysis a = analyze_windows(ifs, target, schedule, n);
  if (j < a.lambda || j > a.xi) {
    throw Error(ErrorCode::InvalidSchedule, "cover needs lambda(n) <= j <= xi(n)");
  }
  const Integer prefixes = power(ifs.size(), static_cast<unsigned long>(n));
  if (prefixes > 10000000) {
    throw Error(ErrorCode::EnumerationTooLarge, "|J|^n = " + prefixes.get_str() + " exceeds 1e7");
  }
  std::set<Window> windows;
  for (const auto& [h, v] : a.realizable) {
    for (auto& w : windows_for(ifs, a, h, v, j)) windows.insert(std::move(w));
  }
  if (prefixes * static_cast<long>(windows.size()) > 2000000) {
    throw Error(ErrorCode::EnumerationTooLarge, "cover would hold more than 2e6 boxes");
  }

  CoverFamily cover;
  cover.n = n;
  cover.j = j;
  for (const auto& w : windows) cover.window_boxes.push_back(project_prefix(ifs, w));
  std::set<DyadicBox> boxes;
  for_each_word(ifs, n, [&](const Window& prefix) {
    Window full = prefix;
    for (const auto& w : windows) {
      full.resize(prefix.size());
      full.insert(full.end(), w.begin(), w.end());
      boxes.insert(project_prefix(ifs, full));
    }
  });
  cover.boxes.assign(boxes.begin(), boxes.end());

  Integer best = 0;
  for (const std::size_t v : a.realizable_vertical) {
    Integer prod = 1;
    for (long i = a.lambda; i <= j; ++i) prod *= ifs.row_count(window_row(ifs, a, v, i));
    best = std::max(best, prod);
  }
  cover.bound = 9 * prefixes * best;
  return cover;
}

bool cover_within_enlarged(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                           const CoverFamily& cover) {
  const Rect big = target_rectangle(ifs.base(), target_point(ifs.base(), target), schedule.lambda(cover.n) - 2,
                                    schedule.xi(cover.n) - 2);
  for (const auto& box : cover.window_boxes) {
    const Rational side = box.side();
    const Rect r{box.corner_x(), box.corner_x() + side, box.corner_y(), box.corner_y() + side};
    if (!big.contains(r)) return false;
  }
  return true;
}

std::set<Window> brute_force_mn(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
                                const MnPredicate& predicate) {
  const long xi = schedule.xi(n);
  const Integer space = power(static_cast<long>(ifs.base()) * ifs.base(), static_cast<unsigned long>(xi));
  if (space > 10000000) {
    throw Error(ErrorCode::EnumerationTooLarge, "(b^2)^xi(n) = " + space.get_str() + " exceeds 1e7");
  }
  std::set<Window> out;
  const Window filler(static_cast<std::size_t>(n), ifs.digits().front());
  for_each_word(ifs, xi, [&](const Window& w) {
    Window full = filler;
    full.insert(full.end(), w.begin(), w.end());
    if (predicate(ifs, target, schedule, n, DigitWord::truncated(std::move(full)))) out.insert(w);
  });
  return out;
}

std::set<Window> pattern_windows(const GridIFS& ifs, const WindowAnalysis& a) {
  std::set<Window> out;
  for (const auto& [h, v] : a.realizable) {
    for (auto& w : windows_for(ifs, a, h, v, a.xi)) out.insert(std::move(w));
  }
  return out;
}

OracleComparison compare_with_oracle(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                     long n, const MnPredicate& predicate) {
  OracleComparison cmp;
  const auto brute = brute_force_mn(ifs, target, schedule, n, predicate);
  cmp.windows_brute = static_cast<long>(brute.size());
  std::optional<WindowAnalysis> analysis;
  try {
    analysis = analyze_windows(ifs, target, schedule, n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyMn) throw;
  }
  if (!analysis) {
    cmp.windows_equal = brute.empty();
    if (!cmp.windows_equal) cmp.detail = "patterns empty but brute force found windows";
    return cmp;
  }
  const auto patterns = pattern_windows(ifs, *analysis);
  cmp.windows_pattern = static_cast<long>(patterns.size());
  cmp.windows_equal = patterns == brute;
  if (!cmp.windows_equal) {
    cmp.detail = "pattern windows " + std::to_string(patterns.size()) + " vs brute force " +
                 std::to_string(brute.size());
  }
  const long lambda = analysis->lambda;
  const long xi = analysis->xi;
  const int fullest = ifs.max_row_count();
  for (long j = lambda; j <= xi + 2; ++j) {
    Integer direct = 0;
    for (const auto& w : brute) {
      Integer prod = 1;
      for (long i = lambda; i <= std::min(j, xi); ++i) prod *= ifs.row_count(w[static_cast<std::size_t>(i - 1)].v);
      for (long i = xi + 1; i <= j; ++i) prod *= fullest;
      direct = std::max(direct, prod);
    }
    const WindowScore score = a_nj(ifs, *analysis, j);
    Integer from_patterns = 1;
    for (std::size_t r = 0; r < score.counts.size(); ++r) {
      for (long c = 0; c < score.counts[r]; ++c) from_patterns *= ifs.row_count(static_cast<int>(r));
    }
    ++cmp.a_checked;
    if (direct != from_patterns) {
      ++cmp.a_mismatches;
      if (cmp.detail.empty()) cmp.detail = "A mismatch at j=" + std::to_string(j);
    }
  }
  return cmp;
}

bool corrupted_mn_membership(const GridIFS&, const TargetSpec& target, const RateSchedule& schedule, long n,
                             const DigitWord& word) {
  const long lambda = schedule.lambda(n);
  const long xi = schedule.xi(n);
  const auto z = target_digits(target, Axis::Horizontal, lambda - 1);
  const auto w = target_digits(target, Axis::Vertical, xi - 1);
  std::vector<int> x, y;
  for (long i = 1; i < xi; ++i) {
    const DigitPair p = word.at(static_cast<std::size_t>(n + i - 1));
    if (i < lambda) x.push_back(p.u);
    y.push_back(p.v);
  }
  return corrupted_axis(z, x) && corrupted_axis(w, y);
}

}  // namespace carpet
