#pragma once

// Per-slot arithmetic kernels used by the propagation engine and the batched
// OSNR closed forms.
//
// Every kernel exists as a portable scalar reference and, where the CPU has
// it, an AVX2 (x86-64) or NEON (AArch64) variant. The variants perform the
// same IEEE operations in the same order, including reductions: sums are
// defined over four interleaved partial accumulators combined as
// (acc0 + acc1) + (acc2 + acc3), followed by the sequential tail. Results are
// therefore bit-identical across ISAs, which the equivalence tests assert.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace wbnet::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Closed-form cascade inputs, one element per evaluation. Struct of arrays;
/// all spans must have equal length.
struct CascadeBatch {
  std::span<const double> p_in;          // signal power at amplifier input, W
  std::span<const double> stage_noise;   // h f B_ref F per amplifier, W
  std::span<const double> inv_osnr_add;  // 1 / OSNR_add,K, 0 without adds
  std::span<const double> inv_osnr_tx;   // 1 / OSNR_Tx,N
  std::span<const double> stages;        // M, as double
};

struct KernelTable {
  Isa isa;
  /// s[i] *= f[i]; n[i] *= f[i]
  void (*scale_each)(double* s, double* n, const double* f, std::size_t len);
  /// s[i] *= f; n[i] *= f
  void (*scale_all)(double* s, double* n, double f, std::size_t len);
  /// s[i] *= g; n[i] = g * n[i] + (g - 1) * ase[i]
  void (*amplify)(double* s, double* n, const double* ase, double g, std::size_t len);
  /// n[i] += c
  void (*add_constant)(double* n, double c, std::size_t len);
  /// out[i] = a[i] / b[i]
  void (*divide)(const double* a, const double* b, double* out, std::size_t len);
  double (*sum)(const double* a, std::size_t len);
  /// sum of (a[i] + b[i])
  double (*sum_pair)(const double* a, const double* b, std::size_t len);
  /// sum of 1 / a[i]
  double (*sum_reciprocal)(const double* a, std::size_t len);
  /// out[i] = p / (M q + p (M ia + it))
  void (*cascade_osnr)(const double* p_in, const double* q, const double* ia, const double* it,
                       const double* m, double* out, std::size_t len);
};

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Table for a specific ISA, or nullptr when unavailable.
const KernelTable* kernels_for(Isa isa);

/// Table in effect: the forced ISA when set, otherwise the best available.
const KernelTable& kernels();

/// Pins dispatch to one ISA (tests, benchmarking). Unavailable ISAs are
/// rejected with std::invalid_argument. nullopt restores auto-selection.
void force_isa(std::optional<Isa> isa);

/// Batched closed-form cascade OSNR through the active table.
void cascade_osnr(const CascadeBatch& in, std::span<double> out);

}  // namespace wbnet::simd
