#include "wbnet/osnr.hpp"

#include <cmath>
#include <stdexcept>

#include "wbnet/simd/kernels.hpp"

namespace wbnet::osnr {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

double stage_noise_power(const StageNoise& s) {
  return s.constants.photon_noise_power() * s.noise_figure;
}

}  // namespace

OsnrLinear StageNoise::stage_osnr() const {
  require_positive(p_in_w, "P_in");
  return OsnrLinear{p_in_w / stage_noise_power(*this)};
}

StageNoise stage_for_gain(double p_in_w, double noise_figure, double gain, PhysicalConstants c) {
  require_positive(gain, "gain");
  return StageNoise{p_in_w, noise_figure * (1.0 - 1.0 / gain), c};
}

OsnrDb coupled_tx_osnr(OsnrDb osnr_tx, int n) {
  if (n < 1) throw std::invalid_argument("channel count must be >= 1");
  return OsnrDb{osnr_tx.value - 10.0 * std::log10(static_cast<double>(n))};
}

OsnrLinear osnr_add_k(OsnrLinear osnr_tx, int k) {
  if (k < 1) throw std::invalid_argument("added channel count must be >= 1");
  return OsnrLinear{osnr_tx.value / k};
}

OsnrLinear combine_osnr(OsnrLinear a, OsnrLinear b) {
  require_positive(a.value, "OSNR");
  require_positive(b.value, "OSNR");
  // b = inf (noiseless add path) degenerates to a.
  if (std::isinf(b.value)) return a;
  if (std::isinf(a.value)) return b;
  return OsnrLinear{a.value * b.value / (a.value + b.value)};
}

OsnrLinear osnr_after_spans(OsnrLinear osnr_tx_n, const StageNoise& stage, int m) {
  if (m < 0) throw std::invalid_argument("stage count must be >= 0");
  require_positive(stage.p_in_w, "P_in");
  const double p = stage.p_in_w;
  const double o = osnr_tx_n.value;
  return OsnrLinear{o * p / (p + m * stage_noise_power(stage) * o)};
}

OsnrLinear osnr_after_nodes(OsnrLinear osnr_tx_n, const StageNoise& stage, OsnrLinear osnr_add_k,
                            int m) {
  if (m < 0) throw std::invalid_argument("stage count must be >= 0");
  require_positive(stage.p_in_w, "P_in");
  const double p = stage.p_in_w;
  return OsnrLinear{
      p / (m * stage_noise_power(stage) + p * (m / osnr_add_k.value + 1.0 / osnr_tx_n.value))};
}

OsnrLinear inverse_osnr_accumulate(OsnrLinear initial, std::span<const double> stage_osnrs) {
  require_positive(initial.value, "OSNR");
  for (double x : stage_osnrs) require_positive(x, "stage OSNR");
  const double inv =
      1.0 / initial.value + simd::kernels().sum_reciprocal(stage_osnrs.data(), stage_osnrs.size());
  return OsnrLinear{1.0 / inv};
}

}  // namespace wbnet::osnr
