#include "carpet/commands.hpp"

#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>

#include "carpet/error.hpp"
#include "carpet/measure.hpp"
#include "carpet/samples.hpp"
#include "carpet/verification.hpp"

namespace carpet {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_number(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << value;
  return os.str();
}

namespace {

// Doubles in JSON carry the same 12 digits as the CSV.
json rounded(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::stod(format_number(value));
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw Error(ErrorCode::ConfigError, "out_dir: cannot write " + (dir / name).string());
  out.imbue(std::locale::classic());
  return out;
}

void write_json(const fs::path& dir, const std::string& name, const json& doc) {
  auto out = open_output(dir, name);
  out << doc.dump(2) << '\n';
}

struct Inputs {
  GridIFS ifs;
  TargetSpec target;
  RateSchedule schedule;
  std::vector<long> ns;
};

Inputs prepare(const RunConfig& config) {
  GridIFS ifs = make_ifs(config);
  TargetSpec target = make_target(ifs, config);
  RateSchedule schedule = make_schedule(config);
  std::vector<long> ns = make_range(config);
  schedule.validate_on(ns);
  return {std::move(ifs), std::move(target), std::move(schedule), std::move(ns)};
}

json words_json(const std::vector<DigitWord>& words) {
  json out = json::array();
  for (const auto& w : words) out.push_back(to_string(w));
  return out;
}

json check_entry(const std::string& name) {
  return {{"name", name}, {"status", "pass"}, {"details", json::object()}, {"counterexamples", json::array()}};
}

void mark(json& entry, bool ok) {
  if (!ok) entry["status"] = "fail";
}

json oracle_check(const Inputs& in, const RunConfig& config) {
  json e = check_entry("oracle");
  const MnPredicate predicate =
      config.verify.fault_injection == "corrupt-mn" ? MnPredicate(corrupted_mn_membership) : MnPredicate(mn_membership);
  const double limit = std::log(1e7);
  const double cell = 2.0 * std::log(in.ifs.base());
  json instances = json::array();
  for (const long n : in.ns) {
    if (n > 4) break;
    if (static_cast<double>(in.schedule.xi(n)) * cell > limit) continue;
    const auto cmp = compare_with_oracle(in.ifs, in.target, in.schedule, n, predicate);
    instances.push_back({{"n", n},
                         {"pattern_windows", cmp.windows_pattern},
                         {"brute_force_windows", cmp.windows_brute},
                         {"a_checked", cmp.a_checked},
                         {"a_mismatches", cmp.a_mismatches},
                         {"passed", cmp.passed()},
                         {"detail", cmp.detail}});
    mark(e, cmp.passed());
  }
  if (instances.empty()) e["status"] = "skipped";
  e["details"]["instances"] = instances;
  e["details"]["predicate"] = config.verify.fault_injection == "corrupt-mn" ? "corrupt-mn" : "mn";
  return e;
}

json containment_check(const Inputs& in, const RunConfig& config) {
  json e = check_entry("containment");
  const long n = config.verify.containment_n;
  const long depth = n + in.schedule.xi(n) + 5;
  if (!in.target.word.is_periodic()) {
    e["status"] = "skipped";
    e["details"]["reason"] = "target has no exact centre";
    return e;
  }
  const auto samples = biased_samples(in.ifs, in.target, in.schedule, n, depth,
                                      static_cast<std::size_t>(config.verify.samples), config.seed);
  const auto fwd = check_containment_forward(in.ifs, in.target, in.schedule, n, samples);
  const auto bwd = check_containment_backward(in.ifs, in.target, in.schedule, n, samples);
  e["details"] = {{"n", n},
                  {"depth", depth},
                  {"samples", fwd.checked},
                  {"forward_premise_hits", fwd.premise_hits},
                  {"forward_violations", fwd.violations},
                  {"backward_premise_hits", bwd.premise_hits},
                  {"backward_violations", bwd.violations}};
  auto cex = fwd.counterexamples;
  cex.insert(cex.end(), bwd.counterexamples.begin(), bwd.counterexamples.end());
  e["counterexamples"] = words_json(cex);
  mark(e, fwd.passed() && bwd.passed());
  return e;
}

json set_relation_check(const Inputs& in, const RunConfig& config) {
  json e = check_entry("set_relation");
  if (!in.target.word.is_periodic()) {
    e["status"] = "skipped";
    e["details"]["reason"] = "target has no exact centre";
    return e;
  }
  const int b = in.ifs.base();
  const ExactPoint c = target_point(b, in.target);
  const long kz = interior_depth(b, c.x);
  const long kw = interior_depth(b, c.y);
  const long depth = config.verify.set_relation_depth;
  long n = 0;
  for (long m = 1; m < depth; ++m) {
    if (in.schedule.lambda(m) > kz && in.schedule.xi(m) > kw) {
      n = m;
      break;
    }
  }
  if (n == 0) {
    e["status"] = "skipped";
    e["details"]["reason"] = "no n below the sample depth clears the target's distance from the edge";
    return e;
  }
  std::vector<DigitWord> tails;
  tails.push_back(apply_shift(in.target.word, static_cast<std::size_t>(depth - n)));
  for (const DigitPair p : in.ifs.digits()) tails.push_back(DigitWord::constant(p));
  const auto samples = prefixed_periodic(in.ifs, depth, tails);
  const auto rep = check_set_relation(in.ifs, in.target, in.schedule, n, samples);
  e["details"] = {{"n", n},
                  {"depth", depth},
                  {"boundary", rep.boundary},
                  {"branch", rep.boundary ? "nine-rectangle" : "iff"},
                  {"checked", rep.checked},
                  {"rectangle_hits", rep.rectangle_hits},
                  {"cylinder_hits", rep.w_hits},
                  {"violations", rep.violations},
                  {"rsum_violations", rep.rsum_violations}};
  e["counterexamples"] = words_json(rep.counterexamples);
  mark(e, rep.passed());
  return e;
}

json cover_check(const Inputs& in, const RunConfig& config) {
  json e = check_entry("cover");
  if (!in.target.word.is_periodic()) {
    e["status"] = "skipped";
    e["details"]["reason"] = "target has no exact centre";
    return e;
  }
  const long n = config.verify.cover_n;
  const long j = in.schedule.xi(n);
  const auto cover = build_cover(in.ifs, in.target, in.schedule, n, j);
  const bool inside = cover_within_enlarged(in.ifs, in.target, in.schedule, cover);
  const bool counted = Integer(cover.boxes.size()) <= cover.bound;
  e["details"] = {{"n", n},
                  {"j", j},
                  {"boxes", cover.boxes.size()},
                  {"bound", cover.bound.get_str()},
                  {"within_enlarged", inside},
                  {"count_within_bound", counted}};
  mark(e, inside && counted);
  return e;
}

// n_1 is the first n with nonempty M_n, n_2 the first n clearing the gap
// conditions after it.
std::vector<long> default_break_points(const Inputs& in, const Rational& delta) {
  long first = 0;
  for (const long n : in.ns) {
    try {
      analyze_windows(in.ifs, in.target, in.schedule, n);
      first = n;
      break;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::EmptyMn) throw;
    }
  }
  if (first == 0) throw Error(ErrorCode::EmptyMn, "no n in range has a realizable window");
  const long used = in.schedule.xi(first) + 2;
  long second = first + used + 1;
  while (Rational(second) <= delta * used) ++second;
  return {first, second};
}

json measure_check(const Inputs& in, const RunConfig& config) {
  json e = check_entry("measure");
  const Rational& delta = config.verify.delta;
  const auto breaks =
      config.verify.break_points.empty() ? default_break_points(in, delta) : config.verify.break_points;
  const long last = breaks.back();
  const long full_depth = last + in.schedule.xi(last) + 2;
  if (in.target.word.available_depth() < static_cast<std::size_t>(full_depth)) {
    e["status"] = "skipped";
    e["details"]["reason"] = "target truncation shorter than the measure depth";
    return e;
  }
  // Largest depth whose support stays enumerable.
  const auto probe = build_lower_bound_measure(in.ifs, in.target, in.schedule, breaks, delta, full_depth);
  long depth = 0;
  double nodes = 1.0;
  while (depth < full_depth) {
    const double next = nodes * static_cast<double>(probe.support(depth + 1).size());
    if (next > 2e6) break;
    nodes = next;
    ++depth;
  }
  const auto mu = build_lower_bound_measure(in.ifs, in.target, in.schedule, breaks, delta, depth);

  const auto sums = level_sums(mu);
  long bad_levels = 0;
  for (const auto& s : sums) bad_levels += s != 1;

  json stages = json::array();
  bool u_ok = true;
  for (std::size_t k = 0; k < mu.stages().size(); ++k) {
    const bool holds = u_bound_holds(mu, k);
    u_ok = u_ok && holds;
    stages.push_back({{"n", mu.stages()[k].n}, {"j", mu.stages()[k].j}, {"u_bound_holds", holds}});
  }

  // Hoelder exponents on levels past the last break point.
  const int b = in.ifs.base();
  const double s_last = s_n(in.ifs, in.target, in.schedule, last).s_n;
  const double threshold = (1.0 - 1.0 / mpq_get_d(delta.get_mpq_t())) * s_last - 0.05;
  std::vector<Rational> radii;
  for (long m = last + 1; m < depth; ++m) radii.push_back(power_of(b, -m) * Rational(b + 1, 2 * b));
  long holder_bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  long holder_count = 0;
  if (!radii.empty()) {
    const auto points = sample_support(mu, 200, config.seed);
    for (const auto& h : holder_exponent_samples(mu, points, radii)) {
      ++holder_count;
      worst = std::min(worst, h.exponent);
      if (h.exponent < threshold) ++holder_bad;
    }
  }
  e["details"] = {{"break_points", breaks},
                  {"delta", to_string(delta)},
                  {"depth", depth},
                  {"full_depth", full_depth},
                  {"levels_checked", sums.size()},
                  {"levels_not_normalized", bad_levels},
                  {"stages", stages},
                  {"holder_samples", holder_count},
                  {"holder_threshold", rounded(threshold)},
                  {"holder_min_exponent", rounded(worst)},
                  {"holder_violations", holder_bad}};
  mark(e, bad_levels == 0 && u_ok && holder_bad == 0);
  return e;
}

template <class F>
json guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& err) {
    json e = check_entry(name);
    e["status"] = "fail";
    e["details"]["error"] = std::string(to_string(err.code()));
    e["details"]["message"] = err.what();
    return e;
  }
}

}  // namespace

DimensionReport run_dimension(const RunConfig& config, const fs::path& out_dir) {
  const Inputs in = prepare(config);
  DimensionReport rep = dimension_limsup(in.ifs, in.target, in.schedule, in.ns);

  auto csv = open_output(out_dir, "dimension.csv");
  csv << "n,s_n,argmin_j,lambda,xi,k_w\n";
  std::size_t r = 0;
  for (const long n : in.ns) {
    if (r < rep.records.size() && rep.records[r].n == n) {
      const auto& rec = rep.records[r++];
      csv << n << ',' << format_number(rec.s_n) << ',' << rec.argmin_j << ',' << rec.lambda << ',' << rec.xi << ','
          << rec.k_w << '\n';
    } else {
      csv << n << ",,,,," << '\n';
    }
  }

  json summary = {{"n_count", in.ns.size()},
                  {"records", rep.records.size()},
                  {"skipped", rep.skipped},
                  {"attractor_dimension", rounded(attractor_dimension(in.ifs))},
                  {"limsup_estimate", rounded(rep.limsup_estimate)},
                  {"tail_window_max", rounded(rep.tail_window_max)},
                  {"still_increasing", rep.still_increasing},
                  {"closed_form", nullptr},
                  {"branch", nullptr},
                  {"formula_source", std::string(to_string(rep.formula_source))}};
  if (rep.closed_form) {
    summary["closed_form"] = rounded(rep.closed_form->value);
    summary["branch"] = std::string(to_string(rep.closed_form->branch));
  }
  write_json(out_dir, "dimension.json", summary);
  return rep;
}

json run_slice(const RunConfig& config, const fs::path& out_dir) {
  const GridIFS ifs = make_ifs(config);
  const TargetSpec target = make_target(ifs, config);
  const SliceDimension slice = slice_dimension(ifs, target.word);
  json freqs = json::array();
  for (const auto& f : target.frequencies.values) freqs.push_back(to_string(f));
  json doc = {{"slice_dimension", rounded(slice.value)},
              {"liminf_attained", slice.liminf_attained},
              {"periodic", target.word.is_periodic()},
              {"row_frequencies_exist", target.frequencies.limit_exists},
              {"row_frequencies", freqs}};
  write_json(out_dir, "slice.json", doc);
  return doc;
}

void run_sn_table(const RunConfig& config, const fs::path& out_dir) {
  const Inputs in = prepare(config);
  const double log_j = std::log(static_cast<double>(in.ifs.size()));
  const double log_b = std::log(static_cast<double>(in.ifs.base()));
  auto csv = open_output(out_dir, "sn_table.csv");
  csv << "n,j,A,ratio\n";
  for (const long n : in.ns) {
    SnRecord rec;
    try {
      rec = s_n(in.ifs, in.target, in.schedule, n, true);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::EmptyMn) throw;
      continue;
    }
    for (std::size_t k = 0; k < rec.a_values.size(); ++k) {
      const long j = rec.lambda + static_cast<long>(k);
      const double a = rec.a_values[k].value.value();
      const double ratio = (static_cast<double>(n) * log_j + a) / (static_cast<double>(n + j) * log_b);
      csv << n << ',' << j << ',' << format_number(a) << ',' << format_number(ratio) << '\n';
    }
  }
}

VerifyOutcome run_verify(const RunConfig& config, const fs::path& out_dir) {
  const Inputs in = prepare(config);
  const auto& v = config.verify;
  json checks = json::array();
  if (v.oracle) checks.push_back(guarded("oracle", [&] { return oracle_check(in, config); }));
  if (v.containment) checks.push_back(guarded("containment", [&] { return containment_check(in, config); }));
  if (v.set_relation) checks.push_back(guarded("set_relation", [&] { return set_relation_check(in, config); }));
  if (v.cover) checks.push_back(guarded("cover", [&] { return cover_check(in, config); }));
  if (v.measure) checks.push_back(guarded("measure", [&] { return measure_check(in, config); }));
  bool all = true;
  for (const auto& c : checks) all = all && c["status"] != "fail";
  VerifyOutcome outcome{{{"checks", checks}, {"all_passed", all}}, all};
  write_json(out_dir, "verify.json", outcome.report);
  return outcome;
}

}  // namespace carpet
