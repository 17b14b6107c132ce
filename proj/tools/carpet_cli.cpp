#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "carpet/commands.hpp"
#include "carpet/error.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<long> n_max;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out, "output directory (default: the config's out_dir)");
  cmd->add_option("--n-max", opts.n_max, "largest n to evaluate")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "seed for sampled checks");
}

carpet::RunConfig resolve(const Options& opts) {
  carpet::RunConfig cfg = carpet::load_config(opts.config);
  if (!opts.out.empty()) cfg.out_dir = opts.out;
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.n_max) {
    auto& r = cfg.n_range;
    if (r.values.empty()) {
      r.max = *opts.n_max;
      if (r.max < r.min) r.min = r.max;
    } else {
      std::erase_if(r.values, [&](long n) { return n > *opts.n_max; });
      if (r.values.empty()) throw carpet::Error(carpet::ErrorCode::ConfigError, "--n-max: removes every n");
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shrinking-target dimensions on grid carpets"};
  app.require_subcommand(1);
  Options opts;
  auto* dimension = app.add_subcommand("dimension", "s_n sequence, limsup estimate and closed form");
  auto* slice = app.add_subcommand("slice", "dimension of the horizontal slice through the target");
  auto* verify = app.add_subcommand("verify", "finite-depth checks of the window, cover and measure lemmas");
  auto* sn_table = app.add_subcommand("sn-table", "A_{n,j} grid for every n and j");
  for (auto* cmd : {dimension, slice, verify, sn_table}) add_common(cmd, opts);
  CLI11_PARSE(app, argc, argv);

  try {
    const carpet::RunConfig cfg = resolve(opts);
    if (dimension->parsed()) {
      const auto rep = carpet::run_dimension(cfg, cfg.out_dir);
      std::cout << "limsup_estimate " << carpet::format_number(rep.limsup_estimate);
      if (rep.closed_form) {
        std::cout << "  closed_form " << carpet::format_number(rep.closed_form->value) << " ("
                  << carpet::to_string(rep.closed_form->branch) << ")";
      }
      std::cout << '\n';
    } else if (slice->parsed()) {
      std::cout << carpet::run_slice(cfg, cfg.out_dir).dump() << '\n';
    } else if (verify->parsed()) {
      const auto outcome = carpet::run_verify(cfg, cfg.out_dir);
      for (const auto& c : outcome.report["checks"]) {
        std::cout << c["name"].get<std::string>() << ": " << c["status"].get<std::string>() << '\n';
      }
      return outcome.all_passed ? 0 : 1;
    } else if (sn_table->parsed()) {
      carpet::run_sn_table(cfg, cfg.out_dir);
    }
  } catch (const carpet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
