#include "carpet/shrinking_target.hpp"

#include <algorithm>
#include <cmath>

#include "carpet/error.hpp"

namespace carpet {

SnRecord s_n(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
             bool keep_a_values) {
  if (n < 1) throw Error(ErrorCode::InvalidSchedule, "n must be positive");
  const WindowAnalysis analysis = analyze_windows(ifs, target, schedule, n);
  auto profile = a_profile(ifs, analysis, analysis.xi);
  const LogMonomial base_term = LogMonomial::log_of(ifs.size(), n);

  SnRecord rec;
  rec.n = n;
  rec.lambda = analysis.lambda;
  rec.xi = analysis.xi;
  rec.k_w = agreement_length_kw(analysis);
  std::size_t best = 0;
  LogMonomial best_num = base_term + profile[0].value;
  for (std::size_t k = 1; k < profile.size(); ++k) {
    LogMonomial num = base_term + profile[k].value;
    const long j = analysis.lambda + static_cast<long>(k);
    const long best_j = analysis.lambda + static_cast<long>(best);
    if (compare_ratio(num, n + j, best_num, n + best_j) < 0) {
      best = k;
      best_num = std::move(num);
    }
  }
  rec.argmin_j = analysis.lambda + static_cast<long>(best);
  rec.s_n = best_num.value() / (static_cast<double>(n + rec.argmin_j) * std::log(static_cast<double>(ifs.base())));
  rec.numerator = std::move(best_num);
  if (keep_a_values) rec.a_values = std::move(profile);
  return rec;
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::Lambda: return "lambda";
    case Branch::Xi: return "xi";
    case Branch::Both: return "both";
  }
  return "both";
}

std::string_view to_string(FormulaSource source) {
  switch (source) {
    case FormulaSource::None: return "none";
    case FormulaSource::FrequencyClosedForm: return "frequency-closed-form";
    case FormulaSource::ZeroRow: return "zero-row";
    case FormulaSource::TopRow: return "top-row";
    case FormulaSource::Ergodic: return "ergodic";
    case FormulaSource::NonconvergentSchedule: return "nonconvergent-schedule";
  }
  return "none";
}

namespace {

ClosedForm two_branch_min(double gamma, double gamma2, double lambda, double xi, bool equal_rates) {
  const double first = gamma / (1.0 + lambda);
  const double second = (gamma + (xi - lambda) * gamma2) / (1.0 + xi);
  if (equal_rates || std::fabs(first - second) <= 1e-15 * std::max(1.0, std::fabs(first))) {
    return {std::min(first, second), Branch::Both};
  }
  return first < second ? ClosedForm{first, Branch::Lambda} : ClosedForm{second, Branch::Xi};
}

double row_entropy(const GridIFS& ifs, int row) {
  const int count = ifs.row_count(row);
  if (count == 0) throw Error(ErrorCode::NotInAttractor, "row " + std::to_string(row) + " is empty");
  return std::log(static_cast<double>(count)) / std::log(static_cast<double>(ifs.base()));
}

}  // namespace

ClosedForm closed_form_dimension(double gamma, double gamma2, const Rational& lambda, const Rational& xi) {
  if (lambda <= 0 || xi < lambda) {
    throw Error(ErrorCode::InvalidRates, "need 0 < lambda <= xi, got lambda=" + to_string(lambda) +
                                             " xi=" + to_string(xi));
  }
  return two_branch_min(gamma, gamma2, lambda.get_d(), xi.get_d(), lambda == xi);
}

ClosedForm special_case_dimension(const GridIFS& ifs, SpecialRow which, const Rational& lambda, const Rational& xi) {
  const int row = which == SpecialRow::Zero ? 0 : ifs.base() - 1;
  return closed_form_dimension(attractor_dimension(ifs), row_entropy(ifs, row), lambda, xi);
}

ClosedForm ergodic_dimension(const GridIFS& ifs, std::span<const Rational> p, const Rational& lambda,
                             const Rational& xi) {
  if (p.size() != static_cast<std::size_t>(ifs.base())) {
    throw Error(ErrorCode::NotAProbability, "need one probability per row digit");
  }
  Rational total = 0;
  double gamma2 = 0.0;
  for (int a = 0; a < ifs.base(); ++a) {
    const Rational& pa = p[static_cast<std::size_t>(a)];
    if (pa < 0) throw Error(ErrorCode::NotAProbability, "negative probability for row " + std::to_string(a));
    total += pa;
    if (pa > 0) gamma2 += pa.get_d() * row_entropy(ifs, a);
  }
  if (total != 1) throw Error(ErrorCode::NotAProbability, "row probabilities sum to " + to_string(total));
  return closed_form_dimension(attractor_dimension(ifs), gamma2, lambda, xi);
}

double nonconvergent_term(const GridIFS& ifs, double gamma2, const RateSchedule& schedule, long n) {
  const double l = static_cast<double>(schedule.lambda(n)) / static_cast<double>(n);
  const double x = static_cast<double>(schedule.xi(n)) / static_cast<double>(n);
  return two_branch_min(attractor_dimension(ifs), gamma2, l, x, false).value;
}

std::size_t tail_window_start(std::size_t count) {
  if (count < 5) return 0;
  const std::size_t tail = (count + 4) / 5;
  return count - tail;
}

namespace {

double frequency_slice(const GridIFS& ifs, const TargetSpec& target) {
  const auto& f = target.frequencies;
  if (!f.limit_exists) {
    throw Error(ErrorCode::FrequenciesDoNotExist, "target row digits have no limiting frequencies");
  }
  const int top = ifs.base() - 1;
  if (f.values[0] == 1 || f.values[static_cast<std::size_t>(top)] == 1) {
    throw Error(ErrorCode::DegenerateExpansion, "target has p_0 = 1 or p_{b-1} = 1");
  }
  return slice_dimension(ifs, target.word).value;
}

}  // namespace

double nonconvergent_dimension(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                               std::span<const long> ns) {
  if (ns.empty()) throw Error(ErrorCode::InvalidSchedule, "empty n range");
  const double gamma2 = frequency_slice(ifs, target);
  double best = -1.0;
  for (std::size_t i = tail_window_start(ns.size()); i < ns.size(); ++i) {
    best = std::max(best, nonconvergent_term(ifs, gamma2, schedule, ns[i]));
  }
  return best;
}

std::optional<std::pair<ClosedForm, FormulaSource>> applicable_closed_form(const GridIFS& ifs,
                                                                           const TargetSpec& target,
                                                                           const RateSchedule& schedule,
                                                                           std::span<const long> ns) {
  const auto& f = target.frequencies;
  if (!f.limit_exists || ns.empty()) return std::nullopt;
  const int top = ifs.base() - 1;
  const auto rates = schedule.linear_rates();
  if (f.values[0] == 1 || f.values[static_cast<std::size_t>(top)] == 1) {
    // An eventually constant row coding: the zero-row or top-row formula.
    if (!rates) return std::nullopt;
    const auto which = f.values[0] == 1 ? SpecialRow::Zero : SpecialRow::Top;
    return std::make_pair(special_case_dimension(ifs, which, rates->first, rates->second),
                          which == SpecialRow::Zero ? FormulaSource::ZeroRow : FormulaSource::TopRow);
  }
  const double gamma2 = frequency_slice(ifs, target);
  if (rates) {
    return std::make_pair(closed_form_dimension(attractor_dimension(ifs), gamma2, rates->first, rates->second),
                          FormulaSource::FrequencyClosedForm);
  }
  double best = -1.0;
  long best_n = ns.front();
  for (std::size_t i = tail_window_start(ns.size()); i < ns.size(); ++i) {
    const double v = nonconvergent_term(ifs, gamma2, schedule, ns[i]);
    if (v > best) {
      best = v;
      best_n = ns[i];
    }
  }
  const double l = static_cast<double>(schedule.lambda(best_n)) / static_cast<double>(best_n);
  const double x = static_cast<double>(schedule.xi(best_n)) / static_cast<double>(best_n);
  ClosedForm cf = two_branch_min(attractor_dimension(ifs), gamma2, l, x, schedule.lambda(best_n) == schedule.xi(best_n));
  cf.value = best;
  return std::make_pair(cf, FormulaSource::NonconvergentSchedule);
}

DimensionReport dimension_limsup(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                 std::span<const long> ns, bool keep_a_values) {
  if (ns.empty()) throw Error(ErrorCode::InvalidSchedule, "empty n range");
  DimensionReport report;
  double running = -1.0;
  for (const long n : ns) {
    try {
      report.records.push_back(s_n(ifs, target, schedule, n, keep_a_values));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyMn) throw;
      report.skipped.push_back(n);
      continue;
    }
    running = std::max(running, report.records.back().s_n);
    report.running_max.push_back(running);
  }
  if (!report.records.empty()) {
    report.limsup_estimate = running;
    const std::size_t start = tail_window_start(report.records.size());
    double tail = -1.0;
    for (std::size_t i = start; i < report.records.size(); ++i) tail = std::max(tail, report.records[i].s_n);
    report.tail_window_max = tail;
    const double before = start == 0 ? -1.0 : report.running_max[start - 1];
    report.still_increasing = start > 0 && running > before;
  }
  if (auto cf = applicable_closed_form(ifs, target, schedule, ns)) {
    report.closed_form = cf->first;
    report.formula_source = cf->second;
  }
  return report;
}

}  // namespace carpet
