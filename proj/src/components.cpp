#include "wbnet/components.hpp"

#include <cmath>

#include "wbnet/units.hpp"

namespace wbnet {

namespace {

std::string join(const std::vector<Violation>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += "; ";
    out += x.field + ": " + x.message;
  }
  return out;
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::string_view to_string(ModulationFormat f) {
  switch (f) {
    case ModulationFormat::DpQpsk:
      return "DP-QPSK";
    case ModulationFormat::Dp16Qam:
      return "DP-16QAM";
  }
  return "?";
}

std::optional<ModulationFormat> parse_modulation_format(std::string_view s) {
  if (s == "DP-QPSK") return ModulationFormat::DpQpsk;
  if (s == "DP-16QAM") return ModulationFormat::Dp16Qam;
  return std::nullopt;
}

double CouplerParams::through_fraction() const {
  return (1.0 - ratio) * db_to_linear(-excess_loss_db);
}

double CouplerParams::tap_fraction() const { return ratio * db_to_linear(-excess_loss_db); }

double SplitterParams::branch_loss_db() const {
  return 10.0 * std::log10(static_cast<double>(ways)) + excess_loss_db;
}

ValidationError::ValidationError(std::vector<Violation> v)
    : std::runtime_error(join(v)), violations_(std::move(v)) {}

std::vector<Violation> violations(const TransmitterParams& p) {
  std::vector<Violation> v;
  if (!finite(p.p_tx_dbm) || p.p_tx_dbm < -10.0 || p.p_tx_dbm > 10.0) {
    v.push_back({"p_tx", "output power out of range [-10, +10] dBm"});
  }
  if (!finite(p.osnr_tx_db) || !(p.osnr_tx_db > 0.0)) {
    v.push_back({"osnr_tx", "transmitter OSNR must be > 0 dB"});
  }
  if (!finite(p.symbol_rate_baud) || !(p.symbol_rate_baud > 0.0)) {
    v.push_back({"symbol_rate", "symbol rate must be > 0"});
  }
  return v;
}

std::vector<Violation> violations(const EdfaParams& p) {
  std::vector<Violation> v;
  if (!finite(p.p_out_max_dbm) || p.p_out_max_dbm > 23.0) {
    v.push_back({"p_out_max", "output power above 23 dBm sanity cap"});
  }
  if (!finite(p.gain_max_db) || !(p.gain_max_db > 0.0) || p.gain_max_db > 40.0) {
    v.push_back({"gain_max", "maximum gain out of range (0, 40] dB"});
  }
  if (!finite(p.noise_figure_db) || p.noise_figure_db < 3.0) {
    v.push_back({"noise_figure", "noise figure below 3 dB quantum limit"});
  }
  if (!finite(p.nf_tilt_db_per_thz)) {
    v.push_back({"tilt", "noise-figure tilt must be finite"});
  }
  if (p.mode == AmplifierMode::FixedGain && (!finite(p.gain_db) || p.gain_db < 0.0)) {
    v.push_back({"gain", "fixed gain must be >= 0 dB"});
  }
  return v;
}

std::vector<Violation> violations(const CouplerParams& p) {
  std::vector<Violation> v;
  if (!finite(p.ratio) || !(p.ratio > 0.0 && p.ratio < 1.0)) {
    v.push_back({"ratio", "ratio out of range (0, 1)"});
  }
  if (!finite(p.excess_loss_db) || p.excess_loss_db < 0.0) {
    v.push_back({"excess_loss", "excess loss must be >= 0 dB"});
  }
  return v;
}

std::vector<Violation> violations(const SplitterParams& p) {
  std::vector<Violation> v;
  if (p.ways < 1) v.push_back({"ways", "splitter needs at least one branch"});
  if (!finite(p.excess_loss_db) || p.excess_loss_db < 0.0) {
    v.push_back({"excess_loss", "excess loss must be >= 0 dB"});
  }
  return v;
}

std::vector<Violation> violations(const WavelengthBlockerParams& p, int n_slots) {
  std::vector<Violation> v;
  if (!finite(p.insertion_loss_db) || p.insertion_loss_db < 0.0) {
    v.push_back({"insertion_loss", "insertion loss must be >= 0 dB"});
  }
  if (!finite(p.max_attenuation_db) || p.max_attenuation_db < 0.0) {
    v.push_back({"max_attenuation", "equalization range must be >= 0 dB"});
  }
  if (p.isolation_db && (!finite(*p.isolation_db) || *p.isolation_db < 0.0)) {
    v.push_back({"isolation", "isolation must be >= 0 dB"});
  }
  for (int s : p.blocked) {
    if (s < 1 || s > n_slots) {
      v.push_back({"blocked", "slot " + std::to_string(s) + " outside channel plan"});
    }
  }
  return v;
}

std::vector<Violation> violations(const ReceiverParams& p) {
  std::vector<Violation> v;
  if (!finite(p.p_min_dbm) || !finite(p.p_max_dbm) || !(p.p_min_dbm < p.p_max_dbm)) {
    v.push_back({"p_min", "receiver window requires p_min < p_max"});
  }
  return v;
}

}  // namespace wbnet
