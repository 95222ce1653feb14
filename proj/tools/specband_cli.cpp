#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specband/specband.h"

namespace {

struct Flags {
  std::optional<double> tol;
  std::optional<std::uint64_t> branch;
  bool all_branches = false;
  std::optional<std::uint64_t> seed;
  std::size_t count = 50;
  std::string format = "json";
  bool timing = false;
  std::vector<std::string> inputs;
};

void common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--tol", f.tol, "Equality tolerance base (default 1e-8)")->check(CLI::PositiveNumber);
  sub->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_flag("--timing", f.timing, "Include wall-clock timing in the report");
}

int run(const std::string& command, const Flags& f) {
  sb_options* options = sb_options_create();
  if (!options) {
    std::cerr << "specband: out of memory\n";
    return 1;
  }
  if (f.tol) sb_options_set_tol(options, *f.tol);
  if (f.branch) sb_options_set_branch(options, *f.branch);
  sb_options_set_all_branches(options, f.all_branches);
  if (f.seed) sb_options_set_seed(options, *f.seed);
  sb_options_set_count(options, f.count);
  sb_options_set_timing(options, f.timing);

  std::vector<const char*> paths;
  for (const auto& p : f.inputs) paths.push_back(p.c_str());
  sb_report* report = nullptr;
  const sb_status status = sb_run(command.c_str(), paths.data(), paths.size(), options, &report);
  sb_options_free(options);
  if (status != SB_OK) {
    std::cerr << "specband: " << sb_status_name(status) << ": " << sb_last_error() << "\n";
    return 1;
  }
  std::fputs(f.format == "text" ? sb_report_text(report) : sb_report_json(report), stdout);
  const char* error = sb_report_error(report);
  if (error && *error) std::cerr << "specband: " << error << "\n";
  const int code = sb_report_exit_code(report);
  sb_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct and inverse spectral problems for periodic Jacobi matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sb_version());
  Flags f;

  auto* direct = app.add_subcommand("direct", "Spectrum, residues and localization checks of a matrix");
  direct->add_option("matrix", f.inputs, "Matrix instance (matrix-general or matrix-hat)")->required()->expected(1);
  common_flags(direct, f);

  auto* inverse = app.add_subcommand("inverse", "Feasibility and reconstruction from spectral data");
  inverse->add_option("data", f.inputs, "Spectral-data instance")->required()->expected(1);
  auto* branch = inverse->add_option("--branch", f.branch, "Reconstruct a single branch selector");
  inverse->add_flag("--all-branches", f.all_branches, "Enumerate every branch")->excludes(branch);
  common_flags(inverse, f);

  auto* verify = app.add_subcommand("verify", "Residuals of a matrix against spectral data");
  verify->add_option("files", f.inputs, "Matrix instance and spectral-data instance")->required()->expected(2);
  common_flags(verify, f);

  auto* roundtrip = app.add_subcommand("roundtrip", "Direct, inverse and match on a matrix or a seeded batch");
  roundtrip->add_option("matrix", f.inputs, "Matrix instance")->expected(0, 1);
  roundtrip->add_option("--seed", f.seed, "Seed for the random batch (default 1)");
  roundtrip->add_option("--count", f.count, "Batch size")->check(CLI::PositiveNumber);
  common_flags(roundtrip, f);

  auto* selftest = app.add_subcommand("selftest", "Built-in fixtures");
  common_flags(selftest, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return run(app.get_subcommands().front()->get_name(), f);
}
