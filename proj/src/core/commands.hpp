#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "direct.hpp"

namespace specband {

struct CommandOptions {
  std::optional<double> tol;  // overrides the equality-tolerance base
  std::optional<std::uint64_t> branch;
  bool all_branches = false;
  std::optional<std::uint64_t> seed;
  std::size_t count = 50;
  bool text = false;
  bool timing = false;
  unsigned threads = 0;  // 0: SPECBAND_THREADS or 1
};

enum ExitCode : int { kExitPass = 0, kExitInputError = 1, kExitFailed = 2 };

struct RunReport {
  std::string command;
  std::string input_digest;
  nlohmann::json outputs = nlohmann::json::object();
  std::vector<Check> checks;
  bool pass = false;
  int exit_code = kExitInputError;
  std::optional<double> elapsed_ms;
  std::string error_kind;
  std::string error_message;

  nlohmann::json to_json() const;
  std::string render_json() const;
  std::string render_text() const;
  std::string render(bool text) const { return text ? render_text() : render_json(); }
};

// Commands: direct <matrix>, inverse <data>, verify <matrix> <data>,
// roundtrip [matrix], selftest. Never throws; errors land in the report.
RunReport run_command(const std::string& command, const std::vector<std::string>& inputs,
                      const CommandOptions& options);

std::string fnv1a_hex(const std::string& bytes);

nlohmann::json direct_to_json(const DirectReport& r);

}  // namespace specband
