#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "carpet/coding.hpp"
#include "carpet/ifs.hpp"
#include "carpet/log_monomial.hpp"
#include "carpet/rational.hpp"
#include "carpet/schedule.hpp"
#include "carpet/windows.hpp"

namespace carpet {

struct SnRecord {
  long n = 0;
  long lambda = 0;
  long xi = 0;
  double s_n = 0.0;
  long argmin_j = 0;
  long k_w = 0;
  // n log|J| + A_{n,argmin_j}, exact.
  LogMonomial numerator;
  // A_{n,j} for j = lambda..xi; empty unless requested.
  std::vector<WindowScore> a_values;
};

// min over lambda(n) <= j <= xi(n) of (n log|J| + A_{n,j}) / ((n+j) log b).
// The argmin is decided exactly; ties go to the smallest j.
SnRecord s_n(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule, long n,
             bool keep_a_values = false);

enum class Branch { Lambda, Xi, Both };
std::string_view to_string(Branch branch);

struct ClosedForm {
  double value = 0.0;
  Branch branch = Branch::Both;
};

// min{ gamma/(1+lambda), (gamma + (xi-lambda) gamma2)/(1+xi) }.
ClosedForm closed_form_dimension(double gamma, double gamma2, const Rational& lambda, const Rational& xi);

enum class SpecialRow { Zero, Top };

// The closed form with gamma2 = log|J2(0)|/log b (or J2(b-1)), valid for
// targets whose row coding is eventually constant 0 (or b-1).
ClosedForm special_case_dimension(const GridIFS& ifs, SpecialRow which, const Rational& lambda, const Rational& xi);

// Typical points of an invariant ergodic measure with row marginals p.
ClosedForm ergodic_dimension(const GridIFS& ifs, std::span<const Rational> row_probabilities, const Rational& lambda,
                             const Rational& xi);

// The per-n closed form min{ gamma/(1+lambda(n)/n), (gamma + (xi(n)-lambda(n))/n gamma2)/(1+xi(n)/n) }.
double nonconvergent_term(const GridIFS& ifs, double gamma2, const RateSchedule& schedule, long n);

// Limsup of nonconvergent_term, estimated as the maximum over the last 20%
// of ns (all of ns when it has fewer than five points).
double nonconvergent_dimension(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                               std::span<const long> ns);

enum class FormulaSource { None, FrequencyClosedForm, ZeroRow, TopRow, Ergodic, NonconvergentSchedule };
std::string_view to_string(FormulaSource source);

struct DimensionReport {
  std::vector<SnRecord> records;
  // n with no realizable window pattern.
  std::vector<long> skipped;
  // Running maximum after each record.
  std::vector<double> running_max;
  double limsup_estimate = 0.0;
  // Maximum over the last 20% of the records.
  double tail_window_max = 0.0;
  // The running maximum rose inside the tail window.
  bool still_increasing = false;
  std::optional<ClosedForm> closed_form;
  FormulaSource formula_source = FormulaSource::None;
};

// Indices of the last 20% of count items (at least one).
std::size_t tail_window_start(std::size_t count);

DimensionReport dimension_limsup(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                 std::span<const long> ns, bool keep_a_values = false);

// The closed form that applies to this target and schedule, if any.
std::optional<std::pair<ClosedForm, FormulaSource>> applicable_closed_form(const GridIFS& ifs,
                                                                           const TargetSpec& target,
                                                                           const RateSchedule& schedule,
                                                                           std::span<const long> ns);

}  // namespace carpet
