// Portable reference kernels. The vector variants must reproduce these
// results bit for bit, so the reduction order here is the contract.

#include "tables.hpp"

namespace wbnet::simd::detail {

namespace {

void scale_each(double* s, double* n, const double* f, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    s[i] *= f[i];
    n[i] *= f[i];
  }
}

void scale_all(double* s, double* n, double f, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    s[i] *= f;
    n[i] *= f;
  }
}

void amplify(double* s, double* n, const double* ase, double g, std::size_t len) {
  const double gm1 = g - 1.0;
  for (std::size_t i = 0; i < len; ++i) {
    s[i] *= g;
    n[i] = g * n[i] + gm1 * ase[i];
  }
}

void add_constant(double* n, double c, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) n[i] += c;
}

void divide(const double* a, const double* b, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = a[i] / b[i];
}

// Four interleaved accumulators, combined pairwise, then the tail.
template <class Term>
double striped_sum(std::size_t len, Term term) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    acc[0] += term(i);
    acc[1] += term(i + 1);
    acc[2] += term(i + 2);
    acc[3] += term(i + 3);
  }
  double total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < len; ++i) total += term(i);
  return total;
}

double sum(const double* a, std::size_t len) {
  return striped_sum(len, [a](std::size_t i) { return a[i]; });
}

double sum_pair(const double* a, const double* b, std::size_t len) {
  return striped_sum(len, [a, b](std::size_t i) { return a[i] + b[i]; });
}

double sum_reciprocal(const double* a, std::size_t len) {
  return striped_sum(len, [a](std::size_t i) { return 1.0 / a[i]; });
}

void cascade_osnr(const double* p, const double* q, const double* ia, const double* it,
                  const double* m, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = p[i] / (m[i] * q[i] + p[i] * (m[i] * ia[i] + it[i]));
  }
}

constexpr KernelTable kTable{Isa::Scalar, scale_each,     scale_all, amplify,
                             add_constant, divide,        sum,       sum_pair,
                             sum_reciprocal, cascade_osnr};

}  // namespace

const KernelTable& scalar_table() { return kTable; }

}  // namespace wbnet::simd::detail
