#pragma once

// Running scenarios: propagation plus per-receiver OSNR/BER verdicts, and
// parameter sweeps over a scenario.

#include <optional>
#include <string>
#include <vector>

#include "wbnet/app/config.hpp"
#include "wbnet/propagation.hpp"

namespace wbnet::app {

/// One observed slot at one receiver point.
struct Observation {
  std::string point;
  int node = 0;
  double distance_km = 0.0;
  int slot = 0;
  std::optional<ModulationFormat> format;
  std::optional<double> signal_dbm;
  std::optional<double> osnr_db;
  std::optional<double> ber;
  std::optional<double> fec_margin_db;
  /// Failure tokens: inactive, rx_min, rx_max, fec, gain_clamp.
  std::vector<std::string> failures;

  [[nodiscard]] bool pass() const { return failures.empty(); }
  /// "ok" or "fail:" followed by the '+'-joined failure tokens.
  [[nodiscard]] std::string verdict() const;
};

struct SimulationResult {
  prop::PropagationTrace trace;
  std::vector<Observation> observations;

  [[nodiscard]] bool all_pass() const;
};

SimulationResult simulate(const ScenarioConfig& cfg);

/// Copy of cfg with the sweep axis set to `value`. Throws ConfigError for an
/// unknown axis.
ScenarioConfig apply_axis(const ScenarioConfig& cfg, const std::string& axis, double value);

/// Sweep axes understood by apply_axis.
const std::vector<std::string>& sweep_axes();

struct SweepPoint {
  double value = 0.0;
  SimulationResult result;
};

/// One simulation per value, run concurrently; results in value order.
std::vector<SweepPoint> sweep(const ScenarioConfig& cfg, const SweepSpec& spec);

}  // namespace wbnet::app
