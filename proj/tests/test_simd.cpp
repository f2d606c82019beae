#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <vector>

#include "wbnet/osnr.hpp"
#include "wbnet/simd/kernels.hpp"

using namespace wbnet;
using namespace wbnet::simd;

namespace {

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

class ForceGuard {
 public:
  explicit ForceGuard(Isa isa) { force_isa(isa); }
  ~ForceGuard() { force_isa(std::nullopt); }
};

}  // namespace

TEST(Simd, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::Scalar));
  ASSERT_NE(kernels_for(Isa::Scalar), nullptr);
  EXPECT_EQ(kernels_for(Isa::Scalar)->isa, Isa::Scalar);
}

TEST(Simd, ForcingUnavailableIsaThrows) {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!isa_available(isa)) {
      EXPECT_THROW(force_isa(isa), std::invalid_argument);
    }
  }
  force_isa(Isa::Scalar);
  EXPECT_EQ(kernels().isa, Isa::Scalar);
  force_isa(std::nullopt);
}

TEST(Simd, VariantsBitIdenticalToScalar) {
  const KernelTable& ref = *kernels_for(Isa::Scalar);
  std::mt19937_64 rng(99);
  for (Isa isa : vector_isas()) {
    const KernelTable& vk = *kernels_for(isa);
    SCOPED_TRACE(std::string(to_string(isa)));
    for (std::size_t n = 0; n <= 131; ++n) {
      const auto s0 = random_vec(rng, n, 1e-6, 1e-2);
      const auto n0 = random_vec(rng, n, 1e-10, 1e-6);
      const auto f = random_vec(rng, n, 0.01, 1.0);
      const auto ase = random_vec(rng, n, 1e-9, 1e-8);
      const double g = 1.0 + 999.0 * std::uniform_real_distribution<double>(0, 1)(rng);

      auto a_s = s0, a_n = n0, b_s = s0, b_n = n0;
      ref.scale_each(a_s.data(), a_n.data(), f.data(), n);
      vk.scale_each(b_s.data(), b_n.data(), f.data(), n);
      EXPECT_TRUE(same_bits(a_s, b_s) && same_bits(a_n, b_n)) << "scale_each n=" << n;

      a_s = s0, a_n = n0, b_s = s0, b_n = n0;
      ref.scale_all(a_s.data(), a_n.data(), 0.37, n);
      vk.scale_all(b_s.data(), b_n.data(), 0.37, n);
      EXPECT_TRUE(same_bits(a_s, b_s) && same_bits(a_n, b_n)) << "scale_all n=" << n;

      a_s = s0, a_n = n0, b_s = s0, b_n = n0;
      ref.amplify(a_s.data(), a_n.data(), ase.data(), g, n);
      vk.amplify(b_s.data(), b_n.data(), ase.data(), g, n);
      EXPECT_TRUE(same_bits(a_s, b_s) && same_bits(a_n, b_n)) << "amplify n=" << n;

      a_n = n0, b_n = n0;
      ref.add_constant(a_n.data(), 3.3e-9, n);
      vk.add_constant(b_n.data(), 3.3e-9, n);
      EXPECT_TRUE(same_bits(a_n, b_n)) << "add_constant n=" << n;

      std::vector<double> qa(n), qb(n);
      ref.divide(s0.data(), n0.data(), qa.data(), n);
      vk.divide(s0.data(), n0.data(), qb.data(), n);
      EXPECT_TRUE(same_bits(qa, qb)) << "divide n=" << n;

      EXPECT_TRUE(same_bits(ref.sum(s0.data(), n), vk.sum(s0.data(), n))) << "sum n=" << n;
      EXPECT_TRUE(same_bits(ref.sum_pair(s0.data(), n0.data(), n),
                            vk.sum_pair(s0.data(), n0.data(), n)))
          << "sum_pair n=" << n;
      EXPECT_TRUE(same_bits(ref.sum_reciprocal(f.data(), n), vk.sum_reciprocal(f.data(), n)))
          << "sum_reciprocal n=" << n;

      const auto q = random_vec(rng, n, 1e-9, 1e-8);
      const auto ia = random_vec(rng, n, 0.0, 1e-2);
      const auto it = random_vec(rng, n, 1e-4, 1e-1);
      std::vector<double> m(n);
      for (auto& x : m) x = static_cast<double>(rng() % 11);
      std::vector<double> ca(n), cb(n);
      ref.cascade_osnr(s0.data(), q.data(), ia.data(), it.data(), m.data(), ca.data(), n);
      vk.cascade_osnr(s0.data(), q.data(), ia.data(), it.data(), m.data(), cb.data(), n);
      EXPECT_TRUE(same_bits(ca, cb)) << "cascade_osnr n=" << n;
    }
  }
}

TEST(Simd, CascadeMatchesClosedForm) {
  std::mt19937_64 rng(5);
  const std::size_t n = 257;
  const PhysicalConstants c;
  const auto p = random_vec(rng, n, 1e-6, 1e-3);
  const auto nf = random_vec(rng, n, 2.0, 6.0);
  const auto oadd = random_vec(rng, n, 50.0, 5000.0);
  const auto otx = random_vec(rng, n, 20.0, 5000.0);
  std::vector<double> q(n), ia(n), it(n), m(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = c.photon_noise_power() * nf[i];
    ia[i] = 1.0 / oadd[i];
    it[i] = 1.0 / otx[i];
    m[i] = static_cast<double>(i % 11);
  }
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (!isa_available(isa)) continue;
    ForceGuard guard(isa);
    cascade_osnr({p, q, ia, it, m}, out);
    for (std::size_t i = 0; i < n; ++i) {
      const double want = osnr::osnr_after_nodes(OsnrLinear{otx[i]}, {p[i], nf[i], c},
                                                 OsnrLinear{oadd[i]}, static_cast<int>(m[i]))
                              .value;
      EXPECT_NEAR(out[i], want, 1e-14 * want) << i;
    }
  }
  std::vector<double> short_out(n - 1);
  EXPECT_THROW(cascade_osnr({p, q, ia, it, m}, short_out), std::invalid_argument);
}

TEST(Simd, StripedReductionOrder) {
  // (a0 + a1) + (a2 + a3) then the tail: 1e16 cancels only in that order.
  const std::vector<double> v{1e16, 1.0, -1e16, 1.0, 1.0};
  const double want = ((1e16 + 1.0) + (-1e16 + 1.0)) + 1.0;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (const KernelTable* t = kernels_for(isa)) {
      EXPECT_EQ(t->sum(v.data(), v.size()), want) << to_string(isa);
    }
  }
}
