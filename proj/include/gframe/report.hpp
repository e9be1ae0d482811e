#pragma once

#include "graph.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gframe {

inline constexpr char const *tool_version = "0.1.0";

enum class Command
{
  GraphInfo,
  FrameBuild,
  FrameSpark,
  OdVerdict,
  OdSearch,
  DrTable
};

enum class OutputFormat
{
  Json,
  Csv,
  Text
};

std::optional<Command> parse_command(std::string const &name);
std::string command_name(Command c);

struct AnalysisConfig
{
  std::string input_path;
  Command command = Command::GraphInfo;
  double zero_tol = 1e-9;      // relative eigenvalue zero threshold
  double tie_tol = 1e-9;       // argmax / constancy tie tolerance
  double grouping_tol = 1e-8;  // eigenvalue multiplicity grouping
  std::uint64_t seed = 0;
  int trials = 1000;
  double radius = 0.01;
  bool emit_vectors = false;
  OutputFormat output_format = OutputFormat::Json;
  int workers = 1;
  int max_r = 3;               // dr-table: r = 1..min(max_r, n - 1)
  std::string shifts_path;     // dr-table: JSON [[...], ...] shifts of a second dual
  int sample = 0;              // dr-table: Monte-Carlo lower bound when enumeration is refused
};

// Throws std::invalid_argument on out-of-range settings.
void validate(AnalysisConfig const &config);

// Report for an already-loaded graph. Throws the library's exceptions.
nlohmann::ordered_json build_report(AnalysisConfig const &config, Graph const &g);

// Rounds to 12 significant digits, the precision used for every float in a report.
double round_report(double x);

// Loads, analyzes and writes the report; returns the process exit code:
// 0 success, 1 input/parse error, 2 numerical failure, 3 enumeration guard exceeded.
int run(AnalysisConfig const &config, std::ostream &out, std::ostream &err);

} // namespace gframe
