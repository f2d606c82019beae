#pragma once

// Closed-form planning rules for a wavelength-blocker add/drop node:
// admissible drop-ratio window from the receiver dynamic range, the add ratio
// that levels added channels with express channels, node through-loss and the
// longest span the amplifier gain budget allows.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbnet/components.hpp"

namespace wbnet::design {

struct DesignInputs {
  int n_channels = 96;
  int k_add_drop = 8;
  EdfaParams amp;
  TransmitterParams tx;
  ReceiverParams rx;
  WavelengthBlockerParams wb;
  double fibre_loss_db_per_km = 0.25;
  /// Loss between drop coupler and receiver beyond the ideal 1xK split.
  double drop_path_extra_loss_db = 0.0;
  std::optional<double> r_drop;
  std::optional<double> span_km;
};

struct DropBounds {
  double r_min = 0.0;
  double r_max = 0.0;
};

class InfeasibleDesign : public std::runtime_error {
 public:
  InfeasibleDesign(std::string constraint, const std::string& what)
      : std::runtime_error(what), constraint_(std::move(constraint)) {}
  [[nodiscard]] const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

/// Drop-ratio window [r_min, r_max] keeping every dropped channel above the
/// receiver sensitivity and the total dropped power below the receiver
/// overload. Powers are converted to watts before any arithmetic.
///
/// Throws std::invalid_argument when K is outside [1, N] and InfeasibleDesign
/// when the window is empty (r_min > r_max or r_min >= 1). r_max is clamped to 1.
DropBounds drop_ratio_bounds(const DesignInputs& in);

/// Unclamped window, no feasibility check.
DropBounds raw_drop_ratio_bounds(const DesignInputs& in);

/// Add-coupler ratio that makes each added channel arrive at the same power as
/// the channels expressed through the blocker. Always in (0, 1).
double add_ratio(const DesignInputs& in, double r_drop);

/// Express-path loss of the node: drop coupler, blocker, add coupler, in dB.
double node_through_loss(double r_drop, const WavelengthBlockerParams& wb, double r_add);

/// Span length the remaining gain budget supports, floored at 0 km.
double max_span_length(const EdfaParams& amp, double node_loss_db, double fibre_loss_db_per_km);

struct OperatingPoint {
  std::string label;
  double r_drop = 0.0;
  double r_add = 0.0;
  double node_loss_db = 0.0;
  double max_span_km = 0.0;
};

/// Unit of a verdict margin: percentage points for ratios, dB or km otherwise.
struct Verdict {
  std::string constraint;
  bool pass = false;
  double margin = 0.0;
  std::string unit;
  std::string message;
};

struct DesignReport {
  int n_channels = 0;
  int k_add_drop = 0;
  double r_drop_min = 0.0;
  double r_drop_max = 0.0;
  bool feasible = false;
  /// Values at the configured drop ratio, or at r_drop_max when none is set.
  std::optional<double> r_add;
  std::optional<double> node_loss_db;
  std::optional<double> max_span_km;
  std::vector<OperatingPoint> operating_points;
  std::vector<Verdict> verdicts;

  [[nodiscard]] bool all_pass() const;
};

DesignReport evaluate_design(const DesignInputs& in);

}  // namespace wbnet::design
