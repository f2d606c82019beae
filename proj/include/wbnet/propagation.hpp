#pragma once

// Element-by-element propagation of per-slot signal and ASE power through a
// wavelength-blocker horseshoe.
//
// Noise is tracked as one power value per slot inside the OSNR reference
// bandwidth. Element order per add/drop node: amplifier, drop coupler,
// blocker (block + equalize), add coupler. All per-slot arithmetic runs
// through the simd kernel table.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wbnet/components.hpp"
#include "wbnet/network.hpp"
#include "wbnet/units.hpp"

namespace wbnet::prop {

/// Struct-of-arrays spectrum snapshot; index = slot - 1.
struct ChannelState {
  std::vector<double> signal;  // W
  std::vector<double> noise;   // W in the reference bandwidth
  std::vector<std::uint8_t> active;
  std::vector<int> origin;  // node id, -1 when dark

  ChannelState() = default;
  explicit ChannelState(int n_slots);

  [[nodiscard]] int size() const { return static_cast<int>(signal.size()); }
  [[nodiscard]] bool is_active(int slot) const { return active[slot - 1] != 0; }
  /// Signal plus noise over every slot, W.
  [[nodiscard]] double total_power() const;
  [[nodiscard]] int active_count() const;
  /// Signal / noise of an active slot; nullopt for a dark slot, +inf when the
  /// slot carries no noise.
  [[nodiscard]] std::optional<double> osnr(int slot) const;
  /// Per-slot signal / noise for every slot (dark slots give 0 or NaN).
  [[nodiscard]] std::vector<double> osnr_all() const;
};

struct Warning {
  std::string code;  // gain_clamp | gain_floor | output_saturated | eq_cap | eq_setpoint
  std::string message;
};

using Warnings = std::vector<Warning>;

struct EngineOptions {
  PhysicalConstants constants;
  /// Head booster ASE is already part of the transmitters' OSNR: the booster
  /// amplifies without adding noise.
  bool booster_noise_in_tx_osnr = true;
};

/// Everything an element needs to know about the band.
struct Spectrum {
  ChannelPlan plan;
  PhysicalConstants constants;
};

ChannelState apply_attenuation(ChannelState s, double loss_db);
ChannelState apply_attenuation(ChannelState s, std::span<const double> loss_db);

/// h f B_ref F(f) for every slot, with F tilted linearly about the carrier.
std::vector<double> ase_unit_power(const EdfaParams& amp, const Spectrum& sp);

struct AmplifierOutcome {
  ChannelState state;
  double gain_db = 0.0;
};

/// Target-power mode solves g T + (g - 1) A = P_out for the gain, A being the
/// total ASE unit power, so the output including ASE lands on P_out exactly.
AmplifierOutcome apply_edfa(ChannelState s, const EdfaParams& amp, const Spectrum& sp,
                            Warnings& warnings, bool noiseless = false);

/// Blocks the listed slots and equalizes the remaining active slots down to
/// the weakest one (or to the configured set point).
ChannelState apply_wb(ChannelState s, const WavelengthBlockerParams& wb, Warnings& warnings);

/// Couples the node's transmitters in through its K:1 combiner and add
/// coupler. Every transmitter also contributes its broadband ASE to all
/// slots. Throws TopologyError on a collision with a lit slot.
ChannelState apply_add(ChannelState s, const NodeSpec& node, int node_id);

/// Head terminal: transmitters through the N:1 coupler into a dark fibre.
ChannelState launch(const NodeSpec& head, int n_slots);

struct DropOutcome {
  ChannelState through;
  ChannelState dropped;  // at one receiver, after split and drop-path loss
};

DropOutcome apply_drop(ChannelState s, const std::optional<CouplerParams>& coupler,
                       const SplitterParams& splitter, double extra_loss_db);

struct RxVerdict {
  int slot = 0;  // 0 for the total-power check
  std::string check;  // per_channel_min | total_max
  bool pass = false;
  std::optional<double> power_dbm;
  std::optional<double> margin_db;
  std::string message;
};

/// Per observed slot: signal >= p_min. Plus one check of the total power
/// arriving at the (filterless) receiver against p_max.
std::vector<RxVerdict> receiver_check(const ChannelState& s, const ReceiverParams& rx,
                                      std::span<const int> slots);

enum class PointKind { Transmit, Amplifier, Span, Drop, Blocker, Add, Receiver };

std::string_view to_string(PointKind k);

struct MeasurementPoint {
  std::string label;
  PointKind kind = PointKind::Transmit;
  int node = 0;
  double position_km = 0.0;
  ChannelState state;
  Warnings warnings;
  std::optional<double> gain_db;
  /// Drop and receiver points: the slots received there and their checks.
  std::vector<int> observed;
  std::vector<RxVerdict> rx;
};

struct PropagationTrace {
  std::vector<MeasurementPoint> points;

  [[nodiscard]] const MeasurementPoint* find(std::string_view label) const;
  [[nodiscard]] std::vector<const MeasurementPoint*> receiver_points() const;
  /// True when any amplifier at or before `index` clamped its gain.
  [[nodiscard]] bool gain_clamped_before(std::size_t index) const;
};

PropagationTrace propagate(const Topology& t, const EngineOptions& opt = {});

}  // namespace wbnet::prop
