#include <atomic>
#include <stdexcept>

#include "tables.hpp"

namespace wbnet::simd {

namespace {

// -1: auto-select; otherwise static_cast<int>(Isa).
std::atomic<int> g_forced{-1};

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
      // Advanced SIMD is mandatory on AArch64.
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* compiled(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &detail::scalar_table();
    case Isa::Avx2:
      return detail::avx2_table();
    case Isa::Neon:
      return detail::neon_table();
  }
  return nullptr;
}

const KernelTable& best() {
  static const KernelTable& table = [] () -> const KernelTable& {
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
      if (const KernelTable* t = kernels_for(isa)) return *t;
    }
    return detail::scalar_table();
  }();
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) { return compiled(isa) != nullptr && cpu_supports(isa); }

const KernelTable* kernels_for(Isa isa) { return isa_available(isa) ? compiled(isa) : nullptr; }

const KernelTable& kernels() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return *compiled(static_cast<Isa>(forced));
  return best();
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw std::invalid_argument("SIMD variant not available: " + std::string(to_string(*isa)));
  }
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void cascade_osnr(const CascadeBatch& in, std::span<double> out) {
  const std::size_t n = out.size();
  if (in.p_in.size() != n || in.stage_noise.size() != n || in.inv_osnr_add.size() != n ||
      in.inv_osnr_tx.size() != n || in.stages.size() != n) {
    throw std::invalid_argument("cascade_osnr: mismatched batch lengths");
  }
  kernels().cascade_osnr(in.p_in.data(), in.stage_noise.data(), in.inv_osnr_add.data(),
                         in.inv_osnr_tx.data(), in.stages.data(), out.data(), n);
}

}  // namespace wbnet::simd
