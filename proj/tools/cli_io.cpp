#include "cli_io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hpst/coupling_optimizer.hpp"
#include "hpst/golden.hpp"
#include "hpst/hpst_search.hpp"
#include "hpst/phase_compensation.hpp"
#include "hpst/pipeline.hpp"
#include "hpst/presets.hpp"
#include "hpst/serialization.hpp"

namespace hpst::cli {

namespace {

struct ChainOptions {
  std::string preset;
  std::string spec_path;
  std::vector<std::string> sets;
  double p0 = -1.0;
  double t_max = -1.0;
  double dt = -1.0;
};

void add_chain_source(CLI::App* cmd, ChainOptions& o) {
  cmd->add_option("--preset", o.preset, "Built-in chain preset (e.g. L11_2_0_2)");
  cmd->add_option("--spec", o.spec_path, "Chain spec JSON file");
  cmd->add_option("--set", o.sets, "Parameter binding name=value (repeatable)");
}

void add_grid(CLI::App* cmd, ChainOptions& o, bool with_p0) {
  if (with_p0) cmd->add_option("--p0", o.p0, "Transfer-probability threshold in (0, 1)");
  cmd->add_option("--tmax", o.t_max, "Scan window end");
  cmd->add_option("--dt", o.dt, "Scan step");
}

Bindings parse_sets(const std::vector<std::string>& sets) {
  Bindings b;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects name=value, got '" + s + "'");
    try {
      std::size_t used = 0;
      const std::string value = s.substr(eq + 1);
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      b[s.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw UsageError("--set: invalid number in '" + s + "'");
    }
  }
  return b;
}

std::set<Format> parse_formats(const std::string& list) {
  std::set<Format> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "json")
      out.insert(Format::json);
    else if (item == "csv")
      out.insert(Format::csv);
    else if (item == "text" || item == "text-table")
      out.insert(Format::text);
    else if (!item.empty())
      throw UsageError("unknown format '" + item + "' (expected json, csv, text)");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ResolvedChain {
  ChainSpec spec;
  double p0 = 0.9;
  ScanGrid grid;
};

ResolvedChain resolve_chain(const RunConfig& c) {
  ResolvedChain r;
  if (c.preset) {
    const Preset& p = find_preset(*c.preset);
    r.spec = p.spec;
    r.p0 = p.p0;
    r.grid = {p.t_max, p.dt};
  } else {
    r.spec = chain_spec_from_json(read_file(*c.spec_path));
  }
  if (c.p0) r.p0 = *c.p0;
  if (c.t_max) r.grid.t_max = *c.t_max;
  if (c.dt) r.grid.dt = *c.dt;
  validate(r.grid);
  return r;
}

class Sink {
 public:
  Sink(const std::string& dir, std::ostream& out) : dir_(dir), out_(out) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  void emit(const std::string& filename, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
      if (!content.empty() && content.back() != '\n') out_ << '\n';
      return;
    }
    const auto path = std::filesystem::path(dir_) / filename;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    f << content;
    if (!content.empty() && content.back() != '\n') f << '\n';
    written_.push_back(path.string());
  }

  void report(std::ostream& err) const {
    for (const auto& p : written_) err << "wrote " << p << '\n';
  }

 private:
  std::string dir_;
  std::ostream& out_;
  std::vector<std::string> written_;
};

bool given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

bool wants(const RunConfig& c, Format f) { return c.formats.contains(f); }

int run_simulate(const RunConfig& c, Sink& sink) {
  const ResolvedChain chain = resolve_chain(c);
  const ChainAnalysis a = analyze_chain(chain.spec, c.bindings);
  if (c.dump_matrix) sink.emit("d_matrix.csv", matrix_csv(a.block.d_matrix));
  if (c.dump_spectrum) sink.emit("spectrum.csv", spectrum_csv(a.spectrum));

  std::vector<int> targets = a.spec.register_nodes;
  if (targets.empty())
    for (int i = 1; i <= static_cast<int>(a.spec.n_nodes); ++i) targets.push_back(i);
  std::vector<int> sources = c.source ? std::vector<int>{*c.source} : targets;
  for (int s : sources)
    sink.emit("simulate_source" + std::to_string(s) + ".csv",
              probability_csv(a.spectrum, s, targets, chain.grid.t_max, chain.grid.dt));
  return 0;
}

HpstTable compute_table(const RunConfig& c, ChainSpec* resolved = nullptr) {
  const ResolvedChain chain = resolve_chain(c);
  const ChainAnalysis a = analyze_chain(chain.spec, c.bindings);
  if (resolved != nullptr) *resolved = a.spec;
  return build_hpst_table(a.spectrum, a.spec.register_nodes, chain.p0, chain.grid);
}

int run_peaks(const RunConfig& c, Sink& sink, bool text_only) {
  ChainSpec spec;
  const HpstTable table = compute_table(c, &spec);
  if (!text_only && wants(c, Format::json)) sink.emit("peaks.json", to_json(table));
  if (text_only || wants(c, Format::text)) {
    std::ostringstream os;
    os << format_text_table(table, spec.register_nodes);
    os << "register time T = " << table.register_time << ", P0 = " << table.p0
       << (table.all_pass ? ", all pairs pass\n" : ", NOT all pairs pass\n");
    sink.emit("peaks.txt", os.str());
  }
  return 0;
}

int run_optimize(const RunConfig& c, Sink& sink, std::ostream& err) {
  const ResolvedChain chain = resolve_chain(c);
  OptimizationProblem problem = make_problem(chain.spec, chain.p0, chain.grid);
  if (c.grid_resolution) {
    problem.grid_resolution = *c.grid_resolution;
    for (auto& [name, b] : problem.bounds) b.lo = *c.grid_resolution;
  }
  const OptimizationResult result = optimize(problem);
  if (wants(c, Format::json)) sink.emit("optimize.json", to_json(result, c.include_trace));
  if (wants(c, Format::csv)) sink.emit("trace.csv", trace_csv(result.trace));
  if (!result.feasible) err << "no feasible point found; reporting the best infeasible point\n";
  return 0;
}

int run_phase_fit(const RunConfig& c, Sink& sink) {
  const HpstTable table = c.input_table ? hpst_table_from_json(read_file(*c.input_table)) : compute_table(c);
  const std::vector<PhaseConstraint> constraints = collect_constraints(table);
  const double t_end = table.register_time;
  PhasePolynomial poly;
  if (!c.branches.empty()) {
    poly = fit_with_branches(constraints, c.branches, t_end);
  } else {
    PhaseFitOptions options;
    options.branch_search_limit = c.branch_limit;
    poly = fit_phase_polynomial(constraints, t_end, options);
  }
  if (wants(c, Format::json)) {
    sink.emit("phase_polynomial.json", to_json(poly));
    sink.emit("compensation.json", to_json(verify_compensation(poly, table)));
  }
  if (wants(c, Format::csv)) sink.emit("omega.csv", omega_csv(poly, 1001));
  if (!check_positivity(poly).positive) throw PhaseFitError("fitted field is not positive on [0, T]");
  return 0;
}

int run_reproduce(const RunConfig& c, Sink& sink) {
  const Reproduction r = reproduce_table(c.reproduce_table);
  const std::string stem = "table" + std::to_string(c.reproduce_table);
  if (wants(c, Format::text)) sink.emit(stem + ".txt", format_text_table(r.table, r.golden.register_nodes));
  if (wants(c, Format::json)) {
    sink.emit(stem + ".json", to_json(r.table));
    sink.emit(stem + "_diff.json", to_json(r.diff));
  }
  sink.emit(stem + "_diff.txt", format_diff(r.diff));
  return r.diff.all_within ? 0 : 1;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Design and analysis of spin chains with high-probability state transfer", "hpst"};
  app.require_subcommand(1);

  ChainOptions chain;
  std::string out_dir;
  std::string formats;
  RunConfig config;
  int source = 0;
  double grid = -1.0;
  std::string input;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", out_dir, "Output directory (default: stdout)");
    cmd->add_option("--format", formats, "Comma-separated output formats: json,csv,text");
  };

  auto* simulate = app.add_subcommand("simulate", "Probability time series, CSV per source node");
  add_chain_source(simulate, chain);
  add_grid(simulate, chain, false);
  add_common(simulate);
  simulate->add_option("--source", source, "Single source node (default: every register node)");
  simulate->add_flag("--dump-matrix", config.dump_matrix, "Also write the single-excitation matrix as CSV");
  simulate->add_flag("--dump-spectrum", config.dump_spectrum, "Also write eigenpairs as CSV");

  auto* peaks = app.add_subcommand("peaks", "Transfer table (JSON and aligned text)");
  add_chain_source(peaks, chain);
  add_grid(peaks, chain, true);
  add_common(peaks);

  auto* table = app.add_subcommand("table", "Transfer table as aligned text only");
  add_chain_source(table, chain);
  add_grid(table, chain, true);
  add_common(table);

  auto* opt = app.add_subcommand("optimize", "Search coupling parameters");
  add_chain_source(opt, chain);
  add_grid(opt, chain, true);
  add_common(opt);
  opt->add_option("--grid", grid, "Coarse grid resolution per parameter");
  opt->add_flag("--trace", config.include_trace, "Include the evaluation trace in the JSON output");

  auto* phase = app.add_subcommand("phase-fit", "Fit a positive field cancelling all transfer phases");
  add_chain_source(phase, chain);
  add_grid(phase, chain, true);
  add_common(phase);
  phase->add_option("--input", input, "HpstTable JSON (instead of a chain source)");
  phase->add_option("--branches", config.branches, "Forced branch integers, one per distinct arrival time");
  phase->add_option("--branch-limit", config.branch_limit, "Largest branch integer tried");

  auto* repro = app.add_subcommand("reproduce", "Regenerate a reference table and diff it");
  repro->add_option("--table", config.reproduce_table, "Reference table number 1..6")->required();
  add_common(repro);

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  if (cargv.empty()) cargv.push_back("hpst");
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "simulate")
    config.subcommand = Subcommand::simulate;
  else if (name == "peaks")
    config.subcommand = Subcommand::peaks;
  else if (name == "table")
    config.subcommand = Subcommand::table;
  else if (name == "optimize")
    config.subcommand = Subcommand::optimize;
  else if (name == "phase-fit")
    config.subcommand = Subcommand::phase_fit;
  else
    config.subcommand = Subcommand::reproduce;

  if (!chain.preset.empty()) config.preset = chain.preset;
  if (!chain.spec_path.empty()) config.spec_path = chain.spec_path;
  if (!input.empty()) config.input_table = input;
  config.bindings = parse_sets(chain.sets);
  config.output_dir = out_dir;

  const int sources = (config.preset ? 1 : 0) + (config.spec_path ? 1 : 0) + (config.input_table ? 1 : 0);
  if (config.subcommand == Subcommand::reproduce) {
    if (config.reproduce_table < 1 || config.reproduce_table > 6) throw UsageError("--table must be in 1..6");
  } else if (sources != 1) {
    throw UsageError(sources == 0 ? "missing chain source (--preset or --spec)"
                                  : "give exactly one chain source (--preset, --spec or --input)");
  }
  if (config.preset) (void)find_preset(*config.preset);

  if (given(sub, "--p0")) {
    if (!(chain.p0 > 0.0 && chain.p0 < 1.0)) throw UsageError("--p0 must lie in (0, 1)");
    config.p0 = chain.p0;
  }
  if (given(sub, "--tmax")) {
    if (!(chain.t_max > 0.0)) throw UsageError("--tmax must be positive");
    config.t_max = chain.t_max;
  }
  if (given(sub, "--dt")) {
    if (!(chain.dt > 0.0)) throw UsageError("--dt must be positive");
    config.dt = chain.dt;
  }
  if (given(sub, "--grid")) {
    if (!(grid > 0.0 && grid <= 1.0)) throw UsageError("--grid must lie in (0, 1]");
    config.grid_resolution = grid;
  }
  if (given(sub, "--source")) config.source = source;
  if (config.branch_limit < 0) throw UsageError("--branch-limit must be nonnegative");

  config.formats = parse_formats(formats);
  if (config.formats.empty()) {
    switch (config.subcommand) {
      case Subcommand::simulate: config.formats = {Format::csv}; break;
      case Subcommand::table: config.formats = {Format::text}; break;
      case Subcommand::optimize: config.formats = {Format::json}; break;
      case Subcommand::phase_fit: config.formats = {Format::json, Format::csv}; break;
      case Subcommand::peaks:
      case Subcommand::reproduce: config.formats = {Format::json, Format::text}; break;
    }
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Sink sink(config.output_dir, out);
  int status = 0;
  switch (config.subcommand) {
    case Subcommand::simulate: status = run_simulate(config, sink); break;
    case Subcommand::peaks: status = run_peaks(config, sink, false); break;
    case Subcommand::table: status = run_peaks(config, sink, true); break;
    case Subcommand::optimize: status = run_optimize(config, sink, err); break;
    case Subcommand::phase_fit: status = run_phase_fit(config, sink); break;
    case Subcommand::reproduce: status = run_reproduce(config, sink); break;
  }
  sink.report(err);
  return status;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun 'hpst --help' for usage\n";
    return 2;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  try {
    return run(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hpst::cli
