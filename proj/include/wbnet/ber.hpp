#pragma once

// Pre-FEC BER estimate from OSNR under an AWGN channel with Gray mapping,
// and the FEC threshold test. Stands in for measured transponder curves; the
// implementation penalty shifts the SNR to calibrate against hardware.

#include "wbnet/components.hpp"
#include "wbnet/units.hpp"

namespace wbnet::ber {

struct FecPolicy {
  double threshold_ber = 2e-2;
};

/// Electrical SNR per symbol: OSNR * B_ref / R_s (dual-polarization signal,
/// noise in both polarizations counted in the OSNR).
double snr_from_osnr(OsnrLinear osnr, double symbol_rate_baud, double b_ref_hz);

/// DP-QPSK: 1/2 erfc(sqrt(SNR/2)). DP-16QAM: 3/8 erfc(sqrt(SNR/10)).
/// penalty_db is subtracted from the SNR before evaluation.
double ber_estimate(double snr, ModulationFormat format, double penalty_db = 0.0);

/// Inverse of erfc on (0, 1].
double erfc_inverse(double y);

/// Q such that BER = 1/2 erfc(Q / sqrt 2).
double q_from_ber(double ber);

struct FecVerdict {
  bool pass = false;
  /// 20 log10(Q_operating / Q_threshold): the Q^2 distance to the threshold.
  double margin_db = 0.0;
};

/// Pass iff ber < threshold (strict).
FecVerdict fec_verdict(double ber, const FecPolicy& policy = {});

}  // namespace wbnet::ber
