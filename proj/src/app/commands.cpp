#include "wbnet/app/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "wbnet/app/config.hpp"
#include "wbnet/app/report.hpp"
#include "wbnet/app/scenario.hpp"

namespace wbnet::app {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::string axis;
  std::vector<double> values;
};

/// Destination of a report: the --out file or the output stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ConfigError("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void require_format(const std::string& f, std::initializer_list<const char*> allowed,
                    const char* command) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw ConfigError(std::string(command) + ": unsupported format '" + f + "'");
}

int cmd_validate(const Options& o, std::ostream& out) {
  const ScenarioConfig cfg = load_config(o.config);
  const auto issues = validate_topology(cfg.topology);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["scenario"] = cfg.name;
    j["valid"] = issues.empty();
    j["issues"] = nlohmann::ordered_json::array();
    for (const auto& i : issues) {
      j["issues"].push_back({{"node", i.node}, {"slot", i.slot}, {"message", i.message}});
    }
    *Sink(o.out, out) << j.dump(2) << '\n';
  } else {
    require_format(o.format, {"table"}, "validate");
    Sink sink(o.out, out);
    if (issues.empty()) {
      *sink << cfg.name << ": valid (" << cfg.topology.node_count() << " nodes, "
            << cfg.topology.spans.size() << " spans, " << cfg.topology.plan.n_slots << " slots)\n";
    }
    for (const auto& i : issues) *sink << "error: " << i.message << '\n';
  }
  return issues.empty() ? kOk : kVerdictFailure;
}

int cmd_design(const Options& o, std::ostream& out) {
  const ScenarioConfig cfg = load_config(o.config);
  const auto rep = design::evaluate_design(design_inputs(cfg));
  Sink sink(o.out, out);
  if (o.format == "json") {
    *sink << design_json(rep).dump(2) << '\n';
  } else {
    require_format(o.format, {"table"}, "design");
    *sink << design_table(rep);
  }
  return rep.all_pass() ? kOk : kVerdictFailure;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const ScenarioConfig cfg = load_config(o.config);
  require_format(o.format, {"json", "csv", "table"}, "simulate");
  const SimulationResult res = simulate(cfg);
  Sink sink(o.out, out);
  if (o.format == "json") {
    *sink << trace_json(cfg.name, cfg.topology, res).dump(2) << '\n';
  } else if (o.format == "csv") {
    *sink << trace_csv(cfg.topology, res.trace);
  } else {
    *sink << observation_table(res);
  }
  if (!o.out.empty() && o.format != "table") out << observation_table(res);
  return res.all_pass() ? kOk : kVerdictFailure;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const ScenarioConfig cfg = load_config(o.config);
  require_format(o.format, {"json", "csv"}, "sweep");
  SweepSpec spec;
  if (cfg.sweep) spec = *cfg.sweep;
  if (!o.axis.empty()) spec.axis = o.axis;
  if (!o.values.empty()) spec.values = o.values;
  if (spec.axis.empty()) throw ConfigError("sweep: no axis in config and none given");

  const auto points = sweep(cfg, spec);
  bool pass = true;
  for (const auto& p : points) pass = pass && p.result.all_pass();

  Sink sink(o.out, out);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["scenario"] = cfg.name;
    j["axis"] = spec.axis;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : points) {
      auto t = trace_json(cfg.name, cfg.topology, p.result);
      j["points"].push_back({{"value", p.value}, {"observations", t["observations"]}, {"pass", t["pass"]}});
    }
    *sink << j.dump(2) << '\n';
  } else {
    *sink << sweep_csv(points);
  }
  return pass ? kOk : kVerdictFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-filterless wavelength-blocker metro horseshoe planning and simulation"};
  app.require_subcommand(1);
  Options o;
  bool seedless = false;
  app.add_flag("--seedless", seedless, "Reserved; always rejected (no randomness exists)");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario config (YAML)")->required();
    sub->add_option("--out", o.out, "Write the report to PATH instead of standard output");
    sub->add_option("--format", o.format, "json | csv | table (default: csv for sweep, table otherwise)")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->fallthrough();
  };
  auto* validate = app.add_subcommand("validate", "Schema and topology checks");
  auto* design = app.add_subcommand("design", "Coupler-ratio design rules");
  auto* simulate_cmd = app.add_subcommand("simulate", "Propagate and report receiver verdicts");
  auto* sweep_cmd = app.add_subcommand("sweep", "Simulate over a list of parameter values");
  for (auto* sub : {validate, design, simulate_cmd, sweep_cmd}) common(sub);
  sweep_cmd->add_option("--axis", o.axis, "Parameter path to vary");
  sweep_cmd->add_option("--values", o.values, "Values of the axis")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out;
    std::ostringstream cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kOk : kInputError;
  }
  if (o.format.empty()) o.format = sweep_cmd->parsed() ? "csv" : "table";
  if (seedless) {
    err << "error: --seedless is reserved and not accepted; every command is deterministic\n";
    return kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (design->parsed()) return cmd_design(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
  } catch (const TopologyError& e) {
    err << "topology error: " << e.what() << '\n';
    return kVerdictFailure;
  } catch (const design::InfeasibleDesign& e) {
    err << "infeasible design (" << e.constraint() << "): " << e.what() << '\n';
    return kVerdictFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace wbnet::app
