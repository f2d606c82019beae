// AVX2 variants (4 x f64 per register). Compiled with a per-function target
// attribute so the translation unit needs no global -mavx2; FMA is never
// used, keeping every lane's rounding identical to the scalar reference.

#include "tables.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define WBNET_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace wbnet::simd::detail {

#if WBNET_HAVE_AVX2

namespace {

#define WBNET_AVX2 __attribute__((target("avx2")))

WBNET_AVX2 double finish(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

WBNET_AVX2 void scale_each(double* s, double* n, const double* f, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d vf = _mm256_loadu_pd(f + i);
    _mm256_storeu_pd(s + i, _mm256_mul_pd(_mm256_loadu_pd(s + i), vf));
    _mm256_storeu_pd(n + i, _mm256_mul_pd(_mm256_loadu_pd(n + i), vf));
  }
  for (; i < len; ++i) {
    s[i] *= f[i];
    n[i] *= f[i];
  }
}

WBNET_AVX2 void scale_all(double* s, double* n, double f, std::size_t len) {
  const __m256d vf = _mm256_set1_pd(f);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(s + i, _mm256_mul_pd(_mm256_loadu_pd(s + i), vf));
    _mm256_storeu_pd(n + i, _mm256_mul_pd(_mm256_loadu_pd(n + i), vf));
  }
  for (; i < len; ++i) {
    s[i] *= f;
    n[i] *= f;
  }
}

WBNET_AVX2 void amplify(double* s, double* n, const double* ase, double g, std::size_t len) {
  const double gm1 = g - 1.0;
  const __m256d vg = _mm256_set1_pd(g);
  const __m256d vgm1 = _mm256_set1_pd(gm1);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(s + i, _mm256_mul_pd(_mm256_loadu_pd(s + i), vg));
    const __m256d kept = _mm256_mul_pd(vg, _mm256_loadu_pd(n + i));
    const __m256d added = _mm256_mul_pd(vgm1, _mm256_loadu_pd(ase + i));
    _mm256_storeu_pd(n + i, _mm256_add_pd(kept, added));
  }
  for (; i < len; ++i) {
    s[i] *= g;
    n[i] = g * n[i] + gm1 * ase[i];
  }
}

WBNET_AVX2 void add_constant(double* n, double c, std::size_t len) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) _mm256_storeu_pd(n + i, _mm256_add_pd(_mm256_loadu_pd(n + i), vc));
  for (; i < len; ++i) n[i] += c;
}

WBNET_AVX2 void divide(const double* a, const double* b, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < len; ++i) out[i] = a[i] / b[i];
}

WBNET_AVX2 double sum(const double* a, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double total = finish(acc);
  for (; i < len; ++i) total += a[i];
  return total;
}

WBNET_AVX2 double sum_pair(const double* a, const double* b, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = finish(acc);
  for (; i < len; ++i) total += a[i] + b[i];
  return total;
}

WBNET_AVX2 double sum_reciprocal(const double* a, std::size_t len) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_loadu_pd(a + i)));
  double total = finish(acc);
  for (; i < len; ++i) total += 1.0 / a[i];
  return total;
}

WBNET_AVX2 void cascade_osnr(const double* p, const double* q, const double* ia, const double* it,
                             const double* m, double* out, std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d vp = _mm256_loadu_pd(p + i);
    const __m256d vm = _mm256_loadu_pd(m + i);
    const __m256d ase = _mm256_mul_pd(vm, _mm256_loadu_pd(q + i));
    const __m256d inv = _mm256_add_pd(_mm256_mul_pd(vm, _mm256_loadu_pd(ia + i)),
                                      _mm256_loadu_pd(it + i));
    const __m256d den = _mm256_add_pd(ase, _mm256_mul_pd(vp, inv));
    _mm256_storeu_pd(out + i, _mm256_div_pd(vp, den));
  }
  for (; i < len; ++i) out[i] = p[i] / (m[i] * q[i] + p[i] * (m[i] * ia[i] + it[i]));
}

#undef WBNET_AVX2

constexpr KernelTable kTable{Isa::Avx2,   scale_each,    scale_all, amplify,
                             add_constant, divide,        sum,       sum_pair,
                             sum_reciprocal, cascade_osnr};

}  // namespace

const KernelTable* avx2_table() { return &kTable; }

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace wbnet::simd::detail
