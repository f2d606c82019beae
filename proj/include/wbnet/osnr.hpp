#pragma once

// Scalar OSNR algebra for uniform amplifier/add-node cascades.
//
// All closed forms assume identical stages: the same amplifier input power and
// noise figure at every node. Non-uniform chains go through the propagation
// engine, which is checked against these forms on uniform chains.

#include <span>

#include "wbnet/units.hpp"

namespace wbnet::osnr {

/// Noise contribution of one amplifier stage, referred to its input.
struct StageNoise {
  double p_in_w = 1e-4;          // per-channel signal power at the amplifier input
  double noise_figure = 3.1623;  // linear
  PhysicalConstants constants;

  /// OSNR of a noiseless signal after this single stage: P_in / (h f B F).
  [[nodiscard]] OsnrLinear stage_osnr() const;
};

/// Stage model of an amplifier whose ASE output is (g - 1) h f B F: the
/// input-referred noise figure is F (1 - 1/g).
StageNoise stage_for_gain(double p_in_w, double noise_figure, double gain, PhysicalConstants c);

/// N unfiltered transmitters of equal OSNR coupled together, each adding its
/// broadband ASE into every slot: OSNR_Tx - 10 log10(N).
OsnrDb coupled_tx_osnr(OsnrDb osnr_tx, int n);

/// Add-path OSNR seen by each of K channels coupled through one K:1 combiner.
OsnrLinear osnr_add_k(OsnrLinear osnr_tx, int k);

/// Harmonic combination of two independent noise sources: a b / (a + b).
OsnrLinear combine_osnr(OsnrLinear a, OsnrLinear b);

/// OSNR after M span/amplifier stages starting from OSNR_Tx,N.
OsnrLinear osnr_after_spans(OsnrLinear osnr_tx_n, const StageNoise& stage, int m);

/// OSNR after M nodes, each contributing one amplifier stage and K unfiltered
/// added transmitters.
OsnrLinear osnr_after_nodes(OsnrLinear osnr_tx_n, const StageNoise& stage, OsnrLinear osnr_add_k,
                            int m);

/// Independent accumulation 1/OSNR = 1/OSNR_0 + sum 1/OSNR_i.
OsnrLinear inverse_osnr_accumulate(OsnrLinear initial, std::span<const double> stage_osnrs);

}  // namespace wbnet::osnr
