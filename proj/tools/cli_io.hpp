#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hpst/chain_model.hpp"
#include "hpst/errors.hpp"

namespace hpst::cli {

enum class Subcommand { simulate, peaks, optimize, phase_fit, table, reproduce };
enum class Format { json, csv, text };

/// Bad command line; exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// --help was requested; `what()` holds the help text. Exit status 0.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::peaks;
  std::optional<std::string> preset;
  std::optional<std::string> spec_path;
  std::optional<std::string> input_table;  // phase-fit: HpstTable JSON
  Bindings bindings;                       // --set name=value
  std::optional<double> p0;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<double> grid_resolution;
  int reproduce_table = 0;
  std::optional<int> source;  // simulate: one source node instead of every register node
  std::vector<int> branches;  // phase-fit: forced branch vector
  int branch_limit = 10;
  bool include_trace = false;
  bool dump_matrix = false;
  bool dump_spectrum = false;
  std::string output_dir;  // empty: write to stdout
  std::set<Format> formats;
};

/// argv[0] is the program name. Throws UsageError or HelpRequested.
[[nodiscard]] RunConfig parse_args(const std::vector<std::string>& argv);

/// Executes a validated config; returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the usual exit-status mapping.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace hpst::cli
