#pragma once

// Command dispatch for the ilim tool, kept apart from argument parsing so the
// tests can drive it directly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ilim::cli {

enum class Format { plain, json, csv };

struct RunConfig {
  std::string command;
  Format format = Format::plain;
  std::string output_path;

  std::optional<double> slope;
  std::optional<double> a;
  std::optional<int> depth;
  std::optional<int> n_max;
  std::optional<int> n;
  std::optional<int> count;
  std::optional<int> p;
  std::optional<int> q;
  std::optional<int> R;
  std::optional<int> m;
  std::optional<int> k;
  std::optional<int> max_period;
  std::optional<double> eps;
  std::vector<double> eps_list;
  std::optional<double> eps0;
  std::optional<double> delta;
  std::optional<double> tol;
  std::optional<double> h_max;
  std::optional<double> value;
  std::optional<int> seeds;
  std::optional<int> per_branch_cap;
  std::string method = "ratio";
  std::vector<int> periods;
  std::vector<double> entropies;
  std::vector<long> powers;
  std::uint64_t max_nodes = 100'000'000;
};

struct RunResult {
  int exit_code = 0;
  /// Serialized report (or error message on failure).
  std::string text;
  /// The JSON report, populated on success whatever the format.
  nlohmann::json report;
};

const std::vector<std::string>& commands();
bool known_command(const std::string& name);

Format parse_format(const std::string& s);

/// Dispatches to one library operation. Exit 0 on success, 1 for an unknown
/// command, 2 for a violated precondition or malformed parameter, 3 when a
/// resource cap is hit.
RunResult run(const RunConfig& config);

/// Checks the report layout: schema "ilim/1", a known command, objects
/// inputs/outputs/tolerances and a nonnegative wall_time_s. Returns an empty
/// string when valid, else the first problem found.
std::string validate_report(const nlohmann::json& report);

/// Report with the timing field removed, for determinism checks.
nlohmann::json strip_timing(nlohmann::json report);

}  // namespace ilim::cli
