#pragma once

// Power, gain and OSNR quantities with explicit dB/linear domains.
//
// Everything below the I/O boundary computes in linear units. The dB types
// exist so that a value read from a config or printed in a report cannot be
// fed into a linear formula by accident.

#include <cmath>
#include <stdexcept>

namespace wbnet {

/// Thrown when a dB conversion is requested for a non-positive linear value,
/// typically an empty slot queried for power or OSNR.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Dbm {
  double value = 0.0;
};

struct Watts {
  double value = 0.0;
};

struct Db {
  double value = 0.0;
};

struct OsnrDb {
  double value = 0.0;
};

/// Signal-to-noise ratio in the reference bandwidth. Always finite and > 0;
/// a noiseless channel is represented by zero noise power, never by this type.
struct OsnrLinear {
  double value = 1.0;
};

inline constexpr double kPlanck = 6.62607015e-34;  // J s, exact SI value

struct PhysicalConstants {
  double planck = kPlanck;
  double carrier_hz = 193.4e12;
  double reference_bandwidth_hz = 12.5e9;

  /// h * f * B_ref: spontaneous-emission power per unit noise figure.
  [[nodiscard]] double photon_noise_power() const {
    return planck * carrier_hz * reference_bandwidth_hz;
  }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double ratio) {
  if (!(ratio > 0.0)) {
    throw DomainError("linear_to_db: non-positive ratio (dark or empty slot?)");
  }
  return 10.0 * std::log10(ratio);
}

inline Watts to_watts(Dbm p) { return Watts{1e-3 * db_to_linear(p.value)}; }

inline Dbm to_dbm(Watts p) { return Dbm{linear_to_db(p.value / 1e-3)}; }

inline double to_linear(Db x) { return db_to_linear(x.value); }

inline OsnrLinear to_linear(OsnrDb x) { return OsnrLinear{db_to_linear(x.value)}; }

inline OsnrDb to_db(OsnrLinear x) { return OsnrDb{linear_to_db(x.value)}; }

/// Power ratio expressed as a (positive) loss in dB, e.g. 0.8 -> 0.969 dB.
inline double fraction_to_loss_db(double through_fraction) {
  return -linear_to_db(through_fraction);
}

/// Validates a PhysicalConstants record; throws std::invalid_argument.
void check_constants(const PhysicalConstants& c);

}  // namespace wbnet
