#include "carpet/config.hpp"

#include <fstream>
#include <set>

#include "carpet/error.hpp"

namespace carpet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ConfigError, path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.count(k)) fail(path + "." + k, "unknown key");
  }
}

Rational get_rational(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "expected an integer or a string such as \"3/2\"");
}

long get_long(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<long> get_longs(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_long(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<DigitPair> get_pairs(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of [u, v] pairs");
  std::vector<DigitPair> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) fail(p, "expected [u, v]");
    out.push_back(DigitPair{static_cast<int>(get_long(v[i][0], p + "[0]")), static_cast<int>(get_long(v[i][1], p + "[1]"))});
  }
  return out;
}

json pairs_json(const std::vector<DigitPair>& pairs) {
  json out = json::array();
  for (const DigitPair p : pairs) out.push_back({p.u, p.v});
  return out;
}

std::string default_ifs_for(const std::string& named_target) {
  if (named_target == "vicsek-origin" || named_target == "vicsek-center") return "vicsek";
  if (named_target == "cantor-block") return "corner";
  fail("target.named", "unknown example '" + named_target + "'");
}

IfsConfig parse_ifs(const json& v) {
  IfsConfig c;
  if (v.is_string()) {
    c.name = v.get<std::string>();
  } else {
    only_keys(v, "ifs", {"name", "base", "digits"});
    if (v.contains("name")) {
      c.name = get_string(v["name"], "ifs.name");
    } else {
      if (!v.contains("base") || !v.contains("digits")) fail("ifs", "needs base and digits, or a name");
      c.base = static_cast<int>(get_long(v["base"], "ifs.base"));
      c.digits = get_pairs(v["digits"], "ifs.digits");
    }
  }
  if (!c.name.empty() && c.name != "vicsek" && c.name != "corner") {
    fail("ifs.name", "unknown system '" + c.name + "' (known: vicsek, corner)");
  }
  return c;
}

TargetConfig parse_target(const json& v) {
  only_keys(v, "target", {"point", "preperiod", "period", "truncated", "named", "block"});
  TargetConfig t;
  if (v.contains("point")) {
    const auto& p = v["point"];
    if (!p.is_array() || p.size() != 2) fail("target.point", "expected [z, w]");
    t.kind = TargetConfig::Kind::Point;
    t.z = get_rational(p[0], "target.point[0]");
    t.w = get_rational(p[1], "target.point[1]");
  } else if (v.contains("period")) {
    t.kind = TargetConfig::Kind::Word;
    if (v.contains("preperiod")) t.preperiod = get_pairs(v["preperiod"], "target.preperiod");
    t.period = get_pairs(v["period"], "target.period");
    if (t.period.empty()) fail("target.period", "must be nonempty");
  } else if (v.contains("truncated")) {
    t.kind = TargetConfig::Kind::Truncated;
    t.digits = get_pairs(v["truncated"], "target.truncated");
  } else if (v.contains("named")) {
    t.kind = TargetConfig::Kind::Named;
    t.name = get_string(v["named"], "target.named");
    default_ifs_for(t.name);
  } else if (v.contains("block")) {
    const auto& b = v["block"];
    only_keys(b, "target.block", {"letters", "ratio", "depth"});
    t.kind = TargetConfig::Kind::Block;
    if (!b.contains("letters")) fail("target.block.letters", "missing");
    t.block_letters = get_pairs(b["letters"], "target.block.letters");
    if (t.block_letters.empty()) fail("target.block.letters", "must be nonempty");
    if (b.contains("ratio")) t.block_ratio = get_long(b["ratio"], "target.block.ratio");
    if (b.contains("depth")) t.block_depth = get_long(b["depth"], "target.block.depth");
    if (t.block_ratio < 2) fail("target.block.ratio", "must be at least 2");
    if (t.block_depth < 1) fail("target.block.depth", "must be positive");
  } else {
    fail("target", "needs one of point, period, truncated, named, block");
  }
  return t;
}

ScheduleConfig parse_schedule(const json& v) {
  only_keys(v, "schedule", {"kind", "lambda", "xi", "blocks"});
  ScheduleConfig s;
  const std::string kind = v.contains("kind") ? get_string(v["kind"], "schedule.kind") : "linear";
  if (kind == "linear") {
    s.kind = RateSchedule::Kind::Linear;
    if (!v.contains("lambda") || !v.contains("xi")) fail("schedule", "linear needs lambda and xi");
    s.lambda = get_rational(v["lambda"], "schedule.lambda");
    s.xi = get_rational(v["xi"], "schedule.xi");
  } else if (kind == "table") {
    s.kind = RateSchedule::Kind::Table;
    if (!v.contains("lambda") || !v.contains("xi")) fail("schedule", "table needs lambda and xi arrays");
    s.lambda_table = get_longs(v["lambda"], "schedule.lambda");
    s.xi_table = get_longs(v["xi"], "schedule.xi");
  } else if (kind == "piecewise") {
    s.kind = RateSchedule::Kind::Piecewise;
    if (!v.contains("blocks") || !v["blocks"].is_array()) fail("schedule.blocks", "expected an array");
    for (std::size_t i = 0; i < v["blocks"].size(); ++i) {
      const std::string p = "schedule.blocks[" + std::to_string(i) + "]";
      const auto& b = v["blocks"][i];
      only_keys(b, p, {"start", "lambda", "xi"});
      if (!b.contains("start") || !b.contains("lambda") || !b.contains("xi")) fail(p, "needs start, lambda, xi");
      s.blocks.push_back({get_long(b["start"], p + ".start"), get_rational(b["lambda"], p + ".lambda"),
                          get_rational(b["xi"], p + ".xi")});
    }
  } else {
    fail("schedule.kind", "unknown kind '" + kind + "' (linear, table, piecewise)");
  }
  return s;
}

RangeConfig parse_range(const json& v) {
  only_keys(v, "n_range", {"min", "max", "step", "values"});
  RangeConfig r;
  if (v.contains("values")) {
    r.values = get_longs(v["values"], "n_range.values");
    if (r.values.empty()) fail("n_range.values", "must be nonempty");
    for (const long n : r.values) {
      if (n < 1) fail("n_range.values", "entries must be positive");
    }
    return r;
  }
  if (v.contains("min")) r.min = get_long(v["min"], "n_range.min");
  if (v.contains("max")) r.max = get_long(v["max"], "n_range.max");
  if (v.contains("step")) r.step = get_long(v["step"], "n_range.step");
  if (r.min < 1 || r.max < r.min || r.step < 1) fail("n_range", "need 1 <= min <= max and step >= 1");
  return r;
}

VerifyConfig parse_verify(const json& v) {
  only_keys(v, "verify", {"oracle", "containment", "set_relation", "cover", "measure", "containment_n", "samples",
                          "set_relation_depth", "cover_n", "break_points", "delta", "fault_injection"});
  VerifyConfig c;
  if (v.contains("oracle")) c.oracle = get_bool(v["oracle"], "verify.oracle");
  if (v.contains("containment")) c.containment = get_bool(v["containment"], "verify.containment");
  if (v.contains("set_relation")) c.set_relation = get_bool(v["set_relation"], "verify.set_relation");
  if (v.contains("cover")) c.cover = get_bool(v["cover"], "verify.cover");
  if (v.contains("measure")) c.measure = get_bool(v["measure"], "verify.measure");
  if (v.contains("containment_n")) c.containment_n = get_long(v["containment_n"], "verify.containment_n");
  if (v.contains("samples")) c.samples = get_long(v["samples"], "verify.samples");
  if (v.contains("set_relation_depth")) c.set_relation_depth = get_long(v["set_relation_depth"], "verify.set_relation_depth");
  if (v.contains("cover_n")) c.cover_n = get_long(v["cover_n"], "verify.cover_n");
  if (v.contains("break_points")) c.break_points = get_longs(v["break_points"], "verify.break_points");
  if (v.contains("delta")) c.delta = get_rational(v["delta"], "verify.delta");
  if (v.contains("fault_injection")) c.fault_injection = get_string(v["fault_injection"], "verify.fault_injection");
  if (c.fault_injection != "none" && c.fault_injection != "corrupt-mn") {
    fail("verify.fault_injection", "expected \"none\" or \"corrupt-mn\"");
  }
  if (c.containment_n < 1 || c.cover_n < 1 || c.samples < 0 || c.set_relation_depth < 1) {
    fail("verify", "n values and depths must be positive");
  }
  return c;
}

json rational_json(const Rational& r) { return to_string(r); }

}  // namespace

RunConfig parse_config(const json& doc) {
  only_keys(doc, "config", {"ifs", "target", "schedule", "n_range", "out_dir", "seed", "verify"});
  RunConfig c;
  if (!doc.contains("target")) fail("target", "missing");
  c.target = parse_target(doc["target"]);
  if (doc.contains("ifs")) {
    c.ifs = parse_ifs(doc["ifs"]);
  } else if (c.target.kind == TargetConfig::Kind::Named) {
    c.ifs.name = default_ifs_for(c.target.name);
  } else {
    fail("ifs", "missing");
  }
  if (doc.contains("schedule")) c.schedule = parse_schedule(doc["schedule"]);
  if (doc.contains("n_range")) c.n_range = parse_range(doc["n_range"]);
  if (doc.contains("out_dir")) c.out_dir = get_string(doc["out_dir"], "out_dir");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("verify")) c.verify = parse_verify(doc["verify"]);
  return c;
}

json emit_config(const RunConfig& c) {
  json doc;
  if (!c.ifs.name.empty()) {
    doc["ifs"] = {{"name", c.ifs.name}};
  } else {
    doc["ifs"] = {{"base", c.ifs.base}, {"digits", pairs_json(c.ifs.digits)}};
  }
  json t;
  switch (c.target.kind) {
    case TargetConfig::Kind::Point: t["point"] = {rational_json(c.target.z), rational_json(c.target.w)}; break;
    case TargetConfig::Kind::Word:
      t["preperiod"] = pairs_json(c.target.preperiod);
      t["period"] = pairs_json(c.target.period);
      break;
    case TargetConfig::Kind::Truncated: t["truncated"] = pairs_json(c.target.digits); break;
    case TargetConfig::Kind::Named: t["named"] = c.target.name; break;
    case TargetConfig::Kind::Block:
      t["block"] = {{"letters", pairs_json(c.target.block_letters)},
                    {"ratio", c.target.block_ratio},
                    {"depth", c.target.block_depth}};
      break;
  }
  doc["target"] = t;
  json s;
  switch (c.schedule.kind) {
    case RateSchedule::Kind::Linear:
      s = {{"kind", "linear"}, {"lambda", rational_json(c.schedule.lambda)}, {"xi", rational_json(c.schedule.xi)}};
      break;
    case RateSchedule::Kind::Table:
      s = {{"kind", "table"}, {"lambda", c.schedule.lambda_table}, {"xi", c.schedule.xi_table}};
      break;
    case RateSchedule::Kind::Piecewise: {
      json blocks = json::array();
      for (const auto& b : c.schedule.blocks) {
        blocks.push_back({{"start", b.start}, {"lambda", rational_json(b.lambda)}, {"xi", rational_json(b.xi)}});
      }
      s = {{"kind", "piecewise"}, {"blocks", blocks}};
      break;
    }
  }
  doc["schedule"] = s;
  if (!c.n_range.values.empty()) {
    doc["n_range"] = {{"values", c.n_range.values}};
  } else {
    doc["n_range"] = {{"min", c.n_range.min}, {"max", c.n_range.max}, {"step", c.n_range.step}};
  }
  doc["out_dir"] = c.out_dir;
  doc["seed"] = c.seed;
  const auto& v = c.verify;
  doc["verify"] = {{"oracle", v.oracle},
                   {"containment", v.containment},
                   {"set_relation", v.set_relation},
                   {"cover", v.cover},
                   {"measure", v.measure},
                   {"containment_n", v.containment_n},
                   {"samples", v.samples},
                   {"set_relation_depth", v.set_relation_depth},
                   {"cover_n", v.cover_n},
                   {"break_points", v.break_points},
                   {"delta", rational_json(v.delta)},
                   {"fault_injection", v.fault_injection}};
  return doc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

GridIFS make_ifs(const RunConfig& c) {
  if (c.ifs.name == "vicsek") return vicsek_ifs();
  if (c.ifs.name == "corner") return corner_ifs();
  return validate_ifs(c.ifs.base, c.ifs.digits);
}

DigitWord block_word(std::span<const DigitPair> letters, long ratio, long depth) {
  std::vector<DigitPair> digits;
  digits.reserve(static_cast<std::size_t>(depth));
  long block = 0;
  long next_start = ratio;  // block k covers positions [ratio^k, ratio^{k+1})
  for (long i = 1; i <= depth; ++i) {
    while (i >= next_start) {
      ++block;
      next_start *= ratio;
    }
    digits.push_back(letters[static_cast<std::size_t>(block) % letters.size()]);
  }
  return DigitWord::truncated(std::move(digits));
}

TargetSpec make_target(const GridIFS& ifs, const RunConfig& c) {
  const auto& t = c.target;
  switch (t.kind) {
    case TargetConfig::Kind::Point: return target_from_point(ifs, t.z, t.w);
    case TargetConfig::Kind::Word: return target_from_word(ifs, DigitWord::periodic(t.preperiod, t.period));
    case TargetConfig::Kind::Truncated: return target_from_word(ifs, DigitWord::truncated(t.digits));
    case TargetConfig::Kind::Block:
      return target_from_word(ifs, block_word(t.block_letters, t.block_ratio, t.block_depth));
    case TargetConfig::Kind::Named:
      if (t.name == "vicsek-origin") return target_from_point(ifs, 0, 0);
      if (t.name == "vicsek-center") return target_from_point(ifs, Rational(1, 2), Rational(1, 2));
      if (t.name == "cantor-block") {
        const DigitPair letters[] = {{0, 0}, {0, 2}};
        return target_from_word(ifs, block_word(letters, 4, 16384));
      }
      break;
  }
  throw Error(ErrorCode::ConfigError, "target.named: unknown example '" + t.name + "'");
}

RateSchedule make_schedule(const RunConfig& c) {
  const auto& s = c.schedule;
  switch (s.kind) {
    case RateSchedule::Kind::Linear: return RateSchedule::linear(s.lambda, s.xi);
    case RateSchedule::Kind::Table: return RateSchedule::table(s.lambda_table, s.xi_table);
    case RateSchedule::Kind::Piecewise: return RateSchedule::piecewise(s.blocks);
  }
  throw Error(ErrorCode::ConfigError, "schedule.kind: unknown");
}

std::vector<long> make_range(const RunConfig& c) {
  if (!c.n_range.values.empty()) return c.n_range.values;
  std::vector<long> out;
  for (long n = c.n_range.min; n <= c.n_range.max; n += c.n_range.step) out.push_back(n);
  return out;
}

}  // namespace carpet
