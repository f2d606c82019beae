#include "wbnet/ber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wbnet::ber {

double snr_from_osnr(OsnrLinear osnr, double symbol_rate_baud, double b_ref_hz) {
  if (!(osnr.value > 0.0) || !(symbol_rate_baud > 0.0) || !(b_ref_hz > 0.0)) {
    throw std::invalid_argument("snr_from_osnr: inputs must be positive");
  }
  return osnr.value * b_ref_hz / symbol_rate_baud;
}

double ber_estimate(double snr, ModulationFormat format, double penalty_db) {
  if (!(snr > 0.0)) throw std::invalid_argument("ber_estimate: SNR must be > 0");
  const double s = snr / db_to_linear(penalty_db);
  switch (format) {
    case ModulationFormat::DpQpsk:
      return 0.5 * std::erfc(std::sqrt(s / 2.0));
    case ModulationFormat::Dp16Qam:
      return 0.375 * std::erfc(std::sqrt(s / 10.0));
  }
  throw std::invalid_argument("ber_estimate: unknown format");
}

double erfc_inverse(double y) {
  if (!(y > 0.0 && y <= 1.0)) throw std::invalid_argument("erfc_inverse: y must be in (0, 1]");
  if (y == 1.0) return 0.0;
  const double log_y = std::log(y);
  // Asymptotic start, then Newton on log erfc, which stays well scaled deep
  // into the tail where erfc itself approaches the denormal range.
  double x = y > 0.5 ? (1.0 - y) * std::sqrt(std::numbers::pi) / 2.0
                     : std::sqrt(std::max(0.0, -log_y - 0.5 * std::log(-log_y * std::numbers::pi)));
  for (int i = 0; i < 60; ++i) {
    const double e = std::erfc(x);
    const double slope = -2.0 / std::sqrt(std::numbers::pi) * std::exp(-x * x) / e;
    const double step = (std::log(e) - log_y) / slope;
    x -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

double q_from_ber(double ber) {
  if (!(ber >= 0.0 && ber <= 0.5)) throw std::invalid_argument("q_from_ber: BER must be in [0, 0.5]");
  return std::sqrt(2.0) * erfc_inverse(2.0 * std::max(ber, 1e-300));
}

FecVerdict fec_verdict(double ber, const FecPolicy& policy) {
  if (!(policy.threshold_ber > 0.0 && policy.threshold_ber < 0.5)) {
    throw std::invalid_argument("FEC threshold must be in (0, 0.5)");
  }
  const double q_op = std::max(q_from_ber(ber), 1e-12);
  const double q_th = q_from_ber(policy.threshold_ber);
  return FecVerdict{ber < policy.threshold_ber, 20.0 * std::log10(q_op / q_th)};
}

}  // namespace wbnet::ber
