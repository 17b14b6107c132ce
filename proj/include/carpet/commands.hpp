#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "carpet/config.hpp"
#include "carpet/shrinking_target.hpp"

namespace carpet {

// Fixed 12-significant-digit rendering with '.' as the decimal point.
std::string format_number(double value);

// dimension.csv (n, s_n, argmin_j, lambda, xi, k_w; empty fields for n with
// empty M_n) and dimension.json.
DimensionReport run_dimension(const RunConfig& config, const std::filesystem::path& out_dir);

// slice.json for the target's row coding.
nlohmann::json run_slice(const RunConfig& config, const std::filesystem::path& out_dir);

// sn_table.csv with one row per (n, j), lambda(n) <= j <= xi(n).
void run_sn_table(const RunConfig& config, const std::filesystem::path& out_dir);

struct VerifyOutcome {
  nlohmann::json report;
  bool all_passed = false;
};

// verify.json with one entry per requested check. Checks that do not apply
// to the target (a truncated word has no exact centre) are marked skipped.
VerifyOutcome run_verify(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace carpet
