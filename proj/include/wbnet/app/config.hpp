#pragma once

// Scenario configuration: a YAML document holding the topology, simulation
// options, an optional explicit design-rule section and an optional sweep.
// The schema is documented in configs/README.md.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wbnet/ber.hpp"
#include "wbnet/design_rules.hpp"
#include "wbnet/network.hpp"
#include "wbnet/propagation.hpp"

namespace wbnet::app {

/// Malformed or schema-invalid input (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
};

struct SimulationOptions {
  /// Slots reported by simulate/sweep; empty means every received slot.
  std::vector<int> observe;
  double ber_penalty_db = 0.0;
  ber::FecPolicy fec;
};

struct ScenarioConfig {
  std::string name;
  Topology topology;
  prop::EngineOptions engine;
  SimulationOptions sim;
  std::optional<design::DesignInputs> design;
  std::optional<SweepSpec> sweep;
};

ScenarioConfig parse_config(std::string_view yaml_text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// The explicit design section, or inputs derived from the first add/drop
/// node of the topology.
design::DesignInputs design_inputs(const ScenarioConfig& cfg);

/// Parses "1-90", "5" or a comma list of either.
std::vector<int> parse_slot_list(std::string_view text);

}  // namespace wbnet::app
