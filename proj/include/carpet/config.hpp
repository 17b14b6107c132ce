#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "carpet/coding.hpp"
#include "carpet/ifs.hpp"
#include "carpet/rational.hpp"
#include "carpet/schedule.hpp"

namespace carpet {

struct IfsConfig {
  std::string name;  // "vicsek", "corner", or empty for explicit digits
  int base = 3;
  std::vector<DigitPair> digits;
  friend bool operator==(const IfsConfig&, const IfsConfig&) = default;
};

struct TargetConfig {
  enum class Kind { Point, Word, Truncated, Named, Block };
  Kind kind = Kind::Point;
  Rational z = 0, w = 0;
  std::vector<DigitPair> preperiod, period;  // Word
  std::vector<DigitPair> digits;             // Truncated
  std::string name;                          // Named
  // Block: letter k % size on positions [ratio^k, ratio^{k+1}), k = 0, 1, ...
  std::vector<DigitPair> block_letters;
  long block_ratio = 4;
  long block_depth = 16384;
  friend bool operator==(const TargetConfig&, const TargetConfig&) = default;
};

struct ScheduleConfig {
  RateSchedule::Kind kind = RateSchedule::Kind::Linear;
  Rational lambda = 1, xi = 2;
  std::vector<long> lambda_table, xi_table;
  std::vector<RateSchedule::Block> blocks;
  friend bool operator==(const ScheduleConfig&, const ScheduleConfig&) = default;
};

struct RangeConfig {
  long min = 1;
  long max = 400;
  long step = 1;
  std::vector<long> values;  // overrides min/max/step when nonempty
  friend bool operator==(const RangeConfig&, const RangeConfig&) = default;
};

struct VerifyConfig {
  bool oracle = true;
  bool containment = true;
  bool set_relation = true;
  bool cover = true;
  bool measure = true;
  long containment_n = 8;
  long samples = 10000;
  long set_relation_depth = 6;
  long cover_n = 2;
  std::vector<long> break_points;  // empty: chosen from the schedule
  Rational delta = 2;
  std::string fault_injection = "none";  // or "corrupt-mn"
  friend bool operator==(const VerifyConfig&, const VerifyConfig&) = default;
};

struct RunConfig {
  IfsConfig ifs;
  TargetConfig target;
  ScheduleConfig schedule;
  RangeConfig n_range;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  VerifyConfig verify;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError naming the offending field path.
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json emit_config(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);

GridIFS make_ifs(const RunConfig& config);
TargetSpec make_target(const GridIFS& ifs, const RunConfig& config);
RateSchedule make_schedule(const RunConfig& config);
std::vector<long> make_range(const RunConfig& config);

// The block-alternating truncated word.
DigitWord block_word(std::span<const DigitPair> letters, long ratio, long depth);

}  // namespace carpet
