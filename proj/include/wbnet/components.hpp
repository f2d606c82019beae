#pragma once

// Parameter records for the optical elements of a wavelength-blocker node
// chain. Powers, gains and losses are stored in dB as configured; formulas
// convert at the point of use.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wbnet {

enum class ModulationFormat { DpQpsk, Dp16Qam };

std::string_view to_string(ModulationFormat f);
std::optional<ModulationFormat> parse_modulation_format(std::string_view s);

struct TransmitterParams {
  double p_tx_dbm = 0.0;
  double osnr_tx_db = 40.0;
  ModulationFormat format = ModulationFormat::DpQpsk;
  double symbol_rate_baud = 34e9;

  bool operator==(const TransmitterParams&) const = default;
};

enum class AmplifierMode { TargetPower, FixedGain };

struct EdfaParams {
  double p_out_max_dbm = 20.0;
  double gain_max_db = 30.0;
  double noise_figure_db = 5.0;
  /// Linear slope of the noise figure across the band, dB per THz.
  double nf_tilt_db_per_thz = 0.0;
  AmplifierMode mode = AmplifierMode::TargetPower;
  /// Gain set point, used in FixedGain mode only.
  double gain_db = 0.0;
};

struct CouplerParams {
  /// Fraction of the input tapped to (or coupled from) the secondary port.
  double ratio = 0.2;
  double excess_loss_db = 0.0;

  [[nodiscard]] double through_fraction() const;
  [[nodiscard]] double tap_fraction() const;
};

struct SplitterParams {
  int ways = 1;
  double excess_loss_db = 0.0;

  [[nodiscard]] double branch_loss_db() const;
};

struct WavelengthBlockerParams {
  double insertion_loss_db = 12.0;
  double max_attenuation_db = 15.0;
  /// Residual leakage of a blocked slot below the through path, dB.
  /// Unset means ideal blocking.
  std::optional<double> isolation_db;
  /// Per-channel equalization set point, dBm. Unset: level to the weakest slot.
  std::optional<double> target_dbm;
  std::set<int> blocked;
};

struct ReceiverParams {
  double p_min_dbm = -23.0;
  double p_max_dbm = 3.0;
};

/// One violated invariant of a parameter record.
struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> violations(const TransmitterParams& p);
std::vector<Violation> violations(const EdfaParams& p);
std::vector<Violation> violations(const CouplerParams& p);
std::vector<Violation> violations(const SplitterParams& p);
std::vector<Violation> violations(const WavelengthBlockerParams& p, int n_slots);
std::vector<Violation> violations(const ReceiverParams& p);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> v);
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Returns the record unchanged when every invariant holds, throws
/// ValidationError listing each violation otherwise.
template <class Params>
const Params& validate(const Params& p) {
  auto v = violations(p);
  if (!v.empty()) throw ValidationError(std::move(v));
  return p;
}

inline const WavelengthBlockerParams& validate(const WavelengthBlockerParams& p, int n_slots) {
  auto v = violations(p, n_slots);
  if (!v.empty()) throw ValidationError(std::move(v));
  return p;
}

}  // namespace wbnet
