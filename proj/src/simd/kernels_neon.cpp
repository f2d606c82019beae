// NEON variants (2 x f64 per register). Reductions keep two registers so the
// four partial sums line up with the scalar reference's accumulators.

#include "tables.hpp"

#if defined(__aarch64__)
#define WBNET_HAVE_NEON 1
#include <arm_neon.h>
#endif

namespace wbnet::simd::detail {

#if WBNET_HAVE_NEON

namespace {

double finish(float64x2_t lo, float64x2_t hi) {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
         (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

void scale_each(double* s, double* n, const double* f, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const float64x2_t vf = vld1q_f64(f + i);
    vst1q_f64(s + i, vmulq_f64(vld1q_f64(s + i), vf));
    vst1q_f64(n + i, vmulq_f64(vld1q_f64(n + i), vf));
  }
  for (; i < len; ++i) {
    s[i] *= f[i];
    n[i] *= f[i];
  }
}

void scale_all(double* s, double* n, double f, std::size_t len) {
  const float64x2_t vf = vdupq_n_f64(f);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    vst1q_f64(s + i, vmulq_f64(vld1q_f64(s + i), vf));
    vst1q_f64(n + i, vmulq_f64(vld1q_f64(n + i), vf));
  }
  for (; i < len; ++i) {
    s[i] *= f;
    n[i] *= f;
  }
}

void amplify(double* s, double* n, const double* ase, double g, std::size_t len) {
  const double gm1 = g - 1.0;
  const float64x2_t vg = vdupq_n_f64(g);
  const float64x2_t vgm1 = vdupq_n_f64(gm1);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    vst1q_f64(s + i, vmulq_f64(vld1q_f64(s + i), vg));
    const float64x2_t kept = vmulq_f64(vg, vld1q_f64(n + i));
    const float64x2_t added = vmulq_f64(vgm1, vld1q_f64(ase + i));
    vst1q_f64(n + i, vaddq_f64(kept, added));
  }
  for (; i < len; ++i) {
    s[i] *= g;
    n[i] = g * n[i] + gm1 * ase[i];
  }
}

void add_constant(double* n, double c, std::size_t len) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) vst1q_f64(n + i, vaddq_f64(vld1q_f64(n + i), vc));
  for (; i < len; ++i) n[i] += c;
}

void divide(const double* a, const double* b, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) vst1q_f64(out + i, vdivq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < len; ++i) out[i] = a[i] / b[i];
}

double sum(const double* a, std::size_t len) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(a + i));
    hi = vaddq_f64(hi, vld1q_f64(a + i + 2));
  }
  double total = finish(lo, hi);
  for (; i < len; ++i) total += a[i];
  return total;
}

double sum_pair(const double* a, const double* b, std::size_t len) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    lo = vaddq_f64(lo, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vaddq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double total = finish(lo, hi);
  for (; i < len; ++i) total += a[i] + b[i];
  return total;
}

double sum_reciprocal(const double* a, std::size_t len) {
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    lo = vaddq_f64(lo, vdivq_f64(one, vld1q_f64(a + i)));
    hi = vaddq_f64(hi, vdivq_f64(one, vld1q_f64(a + i + 2)));
  }
  double total = finish(lo, hi);
  for (; i < len; ++i) total += 1.0 / a[i];
  return total;
}

void cascade_osnr(const double* p, const double* q, const double* ia, const double* it,
                  const double* m, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const float64x2_t vp = vld1q_f64(p + i);
    const float64x2_t vm = vld1q_f64(m + i);
    const float64x2_t ase = vmulq_f64(vm, vld1q_f64(q + i));
    const float64x2_t inv = vaddq_f64(vmulq_f64(vm, vld1q_f64(ia + i)), vld1q_f64(it + i));
    vst1q_f64(out + i, vdivq_f64(vp, vaddq_f64(ase, vmulq_f64(vp, inv))));
  }
  for (; i < len; ++i) out[i] = p[i] / (m[i] * q[i] + p[i] * (m[i] * ia[i] + it[i]));
}

constexpr KernelTable kTable{Isa::Neon,   scale_each,    scale_all, amplify,
                             add_constant, divide,        sum,       sum_pair,
                             sum_reciprocal, cascade_osnr};

}  // namespace

const KernelTable* neon_table() { return &kTable; }

#else

const KernelTable* neon_table() { return nullptr; }

#endif

}  // namespace wbnet::simd::detail
