#include "carpet/measure.hpp"

#include <algorithm>
#include <random>

#include "carpet/error.hpp"
#include "carpet/log_monomial.hpp"
#include "carpet/windows.hpp"

namespace carpet {

namespace {

constexpr std::size_t kMaxLevelNodes = 5000000;

}  // namespace

MeasureBuilder::Phase MeasureBuilder::phase(long m, std::size_t* stage) const {
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    const Stage& s = stages_[k];
    if (s.n < m && m <= s.n + s.xi + 2) {
      if (stage) *stage = k;
      return m <= s.n + s.lambda + 2 ? Phase::PointMass : Phase::RowSplit;
    }
  }
  return Phase::Uniform;
}

Rational MeasureBuilder::transition(long m, DigitPair next) const {
  if (!ifs_.contains(next)) return 0;
  std::size_t k = 0;
  switch (phase(m, &k)) {
    case Phase::Uniform:
      return make_rational(1, ifs_.size());
    case Phase::PointMass:
      return next == stages_[k].hat[static_cast<std::size_t>(m - stages_[k].n - 1)] ? Rational(1) : Rational(0);
    case Phase::RowSplit: {
      const int row = stages_[k].hat[static_cast<std::size_t>(m - stages_[k].n - 1)].v;
      return next.v == row ? make_rational(1, ifs_.row_count(row)) : Rational(0);
    }
  }
  return 0;
}

std::vector<DigitPair> MeasureBuilder::support(long m) const {
  std::vector<DigitPair> out;
  for (const DigitPair p : ifs_.digits()) {
    if (transition(m, p) > 0) out.push_back(p);
  }
  return out;
}

Rational MeasureBuilder::mass(std::span<const DigitPair> prefix) const {
  if (static_cast<long>(prefix.size()) > depth_) {
    throw Error(ErrorCode::DepthTooLarge, "cylinder deeper than the measure");
  }
  Rational m = 1;
  for (std::size_t i = 0; i < prefix.size() && m != 0; ++i) m *= transition(static_cast<long>(i) + 1, prefix[i]);
  return m;
}

MeasureBuilder build_lower_bound_measure(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                         std::span<const long> break_points, const Rational& delta, long depth) {
  if (break_points.empty()) throw Error(ErrorCode::BadBreakPoints, "need at least one break point");
  if (delta <= 1) throw Error(ErrorCode::BadBreakPoints, "Delta must exceed 1");
  if (break_points.front() < 1) throw Error(ErrorCode::BadBreakPoints, "break points must be positive");
  Rational used = 0;  // sum of xi(n_i) + 2 so far
  for (std::size_t k = 0; k + 1 < break_points.size(); ++k) {
    const long nk = break_points[k];
    const long next = break_points[k + 1];
    used += schedule.xi(nk) + 2;
    if (!(Rational(next) > delta * used) || next <= nk + schedule.xi(nk) + 2) {
      throw Error(ErrorCode::BadBreakPoints, "n_" + std::to_string(k + 2) + " = " + std::to_string(next) +
                                                 " is too close to the previous break points");
    }
  }
  const long last = break_points.back();
  const long limit = last + schedule.xi(last) + 2;
  if (depth < 1 || depth > limit) {
    throw Error(ErrorCode::DepthTooLarge, "depth must lie in [1, " + std::to_string(limit) + "]");
  }

  MeasureBuilder mu;
  mu.ifs_ = ifs;
  mu.delta_ = delta;
  mu.depth_ = depth;
  for (const long nk : break_points) {
    const WindowAnalysis a = analyze_windows(ifs, target, schedule, nk);
    const long j_max = std::max(a.lambda, a.xi - 1);
    const auto profile = a_profile(ifs, a, j_max);
    const LogMonomial base_term = LogMonomial::log_of(ifs.size(), nk);
    std::size_t best = 0;
    for (std::size_t i = 1; i < profile.size(); ++i) {
      if (compare_ratio(base_term + profile[i].value, nk + a.lambda + static_cast<long>(i),
                        base_term + profile[best].value, nk + a.lambda + static_cast<long>(best)) < 0) {
        best = i;
      }
    }
    MeasureBuilder::Stage s;
    s.n = nk;
    s.lambda = a.lambda;
    s.xi = a.xi;
    s.j = a.lambda + static_cast<long>(best);
    const std::size_t v = profile[best].vertical;
    s.hat = realize_window(ifs, a, partner_horizontal(a, v), v, a.xi + 2);
    mu.stages_.push_back(std::move(s));
  }
  return mu;
}

std::vector<Rational> level_sums(const MeasureBuilder& mu) {
  std::vector<Rational> sums;
  std::vector<Rational> level{Rational(1)};
  sums.push_back(1);
  for (long m = 1; m <= mu.depth(); ++m) {
    std::vector<Rational> next;
    Rational total = 0;
    for (const Rational& parent : level) {
      for (const DigitPair p : mu.ifs().digits()) {
        Rational child = parent * mu.transition(m, p);
        if (child == 0) continue;
        total += child;
        next.push_back(std::move(child));
      }
    }
    if (next.size() > kMaxLevelNodes) {
      throw Error(ErrorCode::EnumerationTooLarge, "measure support too large at level " + std::to_string(m));
    }
    sums.push_back(total);
    level = std::move(next);
  }
  return sums;
}

Rational u_value(const MeasureBuilder& mu, std::size_t k) {
  const auto& st = mu.stages();
  if (k >= st.size()) throw Error(ErrorCode::BadBreakPoints, "no such break point");
  long uniform = st[k].n;
  Rational u = 1;
  for (std::size_t l = 0; l < k; ++l) {
    uniform -= st[l].xi + 2;
    for (long i = st[l].lambda + 3; i <= st[l].xi + 2; ++i) {
      u /= mu.ifs().row_count(st[l].hat[static_cast<std::size_t>(i - 1)].v);
    }
  }
  return u * power_of(mu.ifs().size(), -uniform);
}

bool u_bound_holds(const MeasureBuilder& mu, std::size_t k) {
  // U <= |J|^{-n (p-q)/p} with Delta = p/q  <=>  U^p <= |J|^{-n (p-q)}.
  const Rational u = u_value(mu, k);
  const unsigned long p = mu.delta().get_num().get_ui();
  const long q = mu.delta().get_den().get_si();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), u.get_num().get_mpz_t(), p);
  mpz_pow_ui(den.get_mpz_t(), u.get_den().get_mpz_t(), p);
  const Rational lhs = make_rational(num, den);
  const Rational rhs = power_of(mu.ifs().size(), -mu.stages()[k].n * (static_cast<long>(p) - q));
  return lhs <= rhs;
}

std::vector<HolderSample> holder_exponent_samples(const MeasureBuilder& mu, std::span<const DigitWord> points,
                                                  std::span<const Rational> radii) {
  const int b = mu.ifs().base();
  const Rational smallest = power_of(b, -mu.depth());
  std::vector<HolderSample> out;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const DigitWord& w = points[pi];
    const long known = static_cast<long>(std::min<std::size_t>(w.available_depth(), static_cast<std::size_t>(mu.depth())));
    Integer sx = 0, sy = 0;
    for (long i = 0; i < known; ++i) {
      sx = sx * b + w.at(static_cast<std::size_t>(i)).u;
      sy = sy * b + w.at(static_cast<std::size_t>(i)).v;
    }
    const Rational side = power_of(b, -known);
    for (const Rational& r : radii) {
      if (r >= 1 || r <= 0) throw Error(ErrorCode::RadiusOutOfRange, "radius must lie in (0, 1)");
      if (r < smallest) throw Error(ErrorCode::RadiusTooSmall, "radius below b^-depth");
      long level = 0;
      while (r <= power_of(b, -(level + 1))) ++level;
      if (level > known) throw Error(ErrorCode::RadiusTooSmall, "sample not known to level " + std::to_string(level));

      const Integer cells = power(b, static_cast<unsigned long>(level));
      auto range = [&](const Integer& k) {
        const Rational lo = Rational(k) * side - r;
        const Rational hi = Rational(k + 1) * side + r;
        Integer first = std::max(Integer(0), Integer(ceil_of(lo * Rational(cells)) - 1));
        Integer last = std::min(Integer(cells - 1), floor_of(hi * Rational(cells)));
        return std::make_pair(first, last);
      };
      const auto [x0, x1] = range(sx);
      const auto [y0, y1] = range(sy);
      Rational ball = 0;
      for (Integer kx = x0; kx <= x1; ++kx) {
        for (Integer ky = y0; ky <= y1; ++ky) {
          std::vector<DigitPair> prefix(static_cast<std::size_t>(level));
          Integer ax = kx, ay = ky;
          for (long i = level; i-- > 0;) {
            const Integer qx = ax / b, qy = ay / b;
            prefix[static_cast<std::size_t>(i)] =
                DigitPair{static_cast<int>(Integer(ax - qx * b).get_si()), static_cast<int>(Integer(ay - qy * b).get_si())};
            ax = qx;
            ay = qy;
          }
          ball += mu.mass(prefix);
        }
      }
      HolderSample s;
      s.point = pi;
      s.radius = r;
      s.level = level;
      s.ball_mass = ball;
      s.own_cylinder_mass = mu.mass(w.prefix(static_cast<std::size_t>(level)));
      s.exponent = log_of(ball) / log_of(r);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<DigitWord> sample_support(const MeasureBuilder& mu, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<DigitPair>> choices;
  for (long m = 1; m <= mu.depth(); ++m) choices.push_back(mu.support(m));
  std::vector<DigitWord> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<DigitPair> digits;
    digits.reserve(choices.size());
    for (const auto& opts : choices) {
      std::uniform_int_distribution<std::size_t> pick(0, opts.size() - 1);
      digits.push_back(opts[pick(rng)]);
    }
    out.push_back(DigitWord::truncated(std::move(digits)));
  }
  return out;
}

}  // namespace carpet
