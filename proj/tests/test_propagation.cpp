#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "chains.hpp"
#include "wbnet/osnr.hpp"
#include "wbnet/propagation.hpp"

using namespace wbnet;
using namespace wbnet::prop;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ChannelState lit(std::vector<double> signal_w, std::vector<double> noise_w) {
  ChannelState s(static_cast<int>(signal_w.size()));
  s.signal = std::move(signal_w);
  s.noise = std::move(noise_w);
  for (std::size_t i = 0; i < s.signal.size(); ++i) {
    s.active[i] = 1;
    s.origin[i] = 0;
  }
  return s;
}

Spectrum carrier_only(int n_slots = 1) {
  Spectrum sp;
  sp.plan.n_slots = n_slots;
  sp.plan.f_start_hz = sp.constants.carrier_hz;
  return sp;
}

EdfaParams fixed_gain(double gain_db, double nf_db = 5.0) {
  EdfaParams a;
  a.mode = AmplifierMode::FixedGain;
  a.gain_db = gain_db;
  a.gain_max_db = 40.0;
  a.p_out_max_dbm = 23.0;
  a.noise_figure_db = nf_db;
  return a;
}

bool has_warning(const Warnings& w, const std::string& code) {
  for (const auto& x : w) {
    if (x.code == code) return true;
  }
  return false;
}

}  // namespace

TEST(Attenuation, IdentityAndCommonMode) {
  const ChannelState s = lit({1e-3}, {1e-6});
  const ChannelState same = apply_attenuation(s, 0.0);
  EXPECT_EQ(same.signal, s.signal);
  EXPECT_EQ(same.noise, s.noise);

  const ChannelState t = apply_attenuation(s, 10.0);
  EXPECT_NEAR(t.signal[0], 1e-4, 1e-18);
  EXPECT_NEAR(t.noise[0], 1e-7, 1e-21);
  EXPECT_NEAR(*t.osnr(1), *s.osnr(1), 1e-12 * *s.osnr(1));
  EXPECT_THROW(apply_attenuation(s, -1.0), std::invalid_argument);
}

TEST(Attenuation, PerSlotVector) {
  const ChannelState s = lit({1e-3, 1e-3, 1e-3}, {1e-6, 1e-6, 1e-6});
  const std::vector<double> loss{3.0, 0.0, 0.0};
  const ChannelState t = apply_attenuation(s, loss);
  EXPECT_NEAR(t.signal[0], 1e-3 * std::pow(10.0, -0.3), 1e-18);
  EXPECT_EQ(t.signal[1], 1e-3);
  EXPECT_EQ(t.signal[2], 1e-3);
  const std::vector<double> wrong{1.0};
  EXPECT_THROW(apply_attenuation(s, wrong), std::invalid_argument);
}

TEST(Edfa, SingleChannelStage) {
  const Spectrum sp = carrier_only();
  Warnings w;
  const ChannelState in = lit({1e-4}, {0.0});
  const auto out = apply_edfa(in, fixed_gain(20.0), sp, w);
  const double q = sp.constants.photon_noise_power() * db_to_linear(5.0);
  EXPECT_NEAR(out.state.noise[0], 99.0 * q, 1e-12 * 99.0 * q);
  EXPECT_NEAR(out.state.noise[0], 5.0148472227781e-7, 1e-18);
  const double osnr_db = linear_to_db(*out.state.osnr(1));
  EXPECT_NEAR(osnr_db, 42.9974229321487, 1e-9);
  EXPECT_NEAR(osnr_db, 42.9, 0.15);
  // One-stage closed form with the gain-referred noise figure.
  const auto st = osnr::stage_for_gain(1e-4, db_to_linear(5.0), 100.0, sp.constants);
  EXPECT_LT(rel(*out.state.osnr(1), st.stage_osnr().value), 1e-12);
  EXPECT_TRUE(w.empty());
}

TEST(Edfa, UnityGainAddsNoNoise) {
  Warnings w;
  const auto out = apply_edfa(lit({1e-4}, {1e-9}), fixed_gain(0.0, 3.0), carrier_only(), w);
  EXPECT_EQ(out.state.noise[0], 1e-9);
  EXPECT_EQ(out.state.signal[0], 1e-4);
}

TEST(Edfa, StrictOsnrDegradation) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Warnings w;
    const ChannelState in = lit({1e-6 + 1e-3 * u(rng)}, {1e-12 + 1e-7 * u(rng)});
    const auto out = apply_edfa(in, fixed_gain(0.1 + 30.0 * u(rng), 3.0 + 5.0 * u(rng)),
                                carrier_only(), w);
    EXPECT_LT(*out.state.osnr(1), *in.osnr(1));
  }
}

TEST(Edfa, TargetPowerHitsSetPoint) {
  Spectrum sp;
  sp.plan.n_slots = 96;
  ChannelState s(96);
  for (int i = 0; i < 40; ++i) {
    s.signal[i] = 1e-5;
    s.noise[i] = 1e-9;
    s.active[i] = 1;
  }
  EdfaParams a;
  a.p_out_max_dbm = 20.0;
  a.gain_max_db = 30.0;
  Warnings w;
  const auto out = apply_edfa(s, a, sp, w);
  EXPECT_NEAR(out.state.total_power(), 0.1, 1e-14);
  EXPECT_TRUE(w.empty());

  ChannelState weak = apply_attenuation(s, 20.0);
  Warnings w2;
  const auto clamped = apply_edfa(weak, a, sp, w2);
  EXPECT_TRUE(has_warning(w2, "gain_clamp"));
  EXPECT_DOUBLE_EQ(clamped.gain_db, 30.0);
  EXPECT_LT(clamped.state.total_power(), 0.1);

  ChannelState hot = apply_attenuation(s, 0.0);
  for (int i = 0; i < 40; ++i) hot.signal[i] = 5e-3;
  Warnings w3;
  const auto floored = apply_edfa(hot, a, sp, w3);
  EXPECT_TRUE(has_warning(w3, "gain_floor"));
  EXPECT_EQ(floored.gain_db, 0.0);
}

TEST(Edfa, FixedGainSaturates) {
  Warnings w;
  const auto out = apply_edfa(lit({1e-3}, {0.0}), fixed_gain(25.0), carrier_only(), w);
  EXPECT_TRUE(has_warning(w, "output_saturated"));
  EXPECT_NEAR(out.state.total_power(), to_watts(Dbm{23.0}).value, 1e-12);
}

TEST(Edfa, NoiseFigureTilt) {
  Spectrum sp;
  sp.plan.n_slots = 96;
  EdfaParams a;
  a.nf_tilt_db_per_thz = 0.3;
  const auto ase = ase_unit_power(a, sp);
  for (std::size_t i = 1; i < ase.size(); ++i) EXPECT_GT(ase[i], ase[i - 1]);
  a.nf_tilt_db_per_thz = 0.0;
  const auto flat = ase_unit_power(a, sp);
  const double want = kPlanck * sp.plan.frequency_hz(10) * 12.5e9 * db_to_linear(5.0);
  EXPECT_NEAR(flat[9], want, 1e-12 * want);
}

TEST(Blocker, EqualizesToWeakest) {
  const ChannelState s = lit({1.0e-3, 0.5e-3, 2.0e-3}, {1e-7, 2e-8, 3e-7});
  WavelengthBlockerParams wb;
  wb.insertion_loss_db = 12.0;
  Warnings w;
  const ChannelState t = apply_wb(s, wb, w);
  const double want = 0.5e-3 * db_to_linear(-12.0);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(t.signal[i], want, 1e-15 * want);
    EXPECT_NEAR(*t.osnr(i + 1), *s.osnr(i + 1), 1e-12 * *s.osnr(i + 1));
  }
  EXPECT_TRUE(w.empty());
}

TEST(Blocker, EqualInputsSeePureInsertionLoss) {
  const ChannelState s = lit({1e-3, 1e-3}, {1e-7, 1e-7});
  WavelengthBlockerParams wb;
  Warnings w;
  const ChannelState t = apply_wb(s, wb, w);
  EXPECT_EQ(t.signal[0], 1e-3 * db_to_linear(-12.0));
  EXPECT_EQ(t.signal[1], t.signal[0]);
}

TEST(Blocker, BlockingAndCap) {
  const ChannelState s = lit({1e-3, 1e-6, 1e-3}, {1e-7, 1e-10, 1e-7});
  WavelengthBlockerParams wb;
  wb.blocked = {3};
  Warnings w;
  const ChannelState t = apply_wb(s, wb, w);
  EXPECT_EQ(t.signal[2], 0.0);
  EXPECT_EQ(t.noise[2], 0.0);
  EXPECT_FALSE(t.is_active(3));
  EXPECT_EQ(t.origin[2], -1);
  // 30 dB spread against a 15 dB equalization range.
  EXPECT_TRUE(has_warning(w, "eq_cap"));
  EXPECT_NEAR(t.signal[0], 1e-3 * db_to_linear(-12.0 - 15.0), 1e-18);

  wb.isolation_db = 35.0;
  Warnings w2;
  const ChannelState leak = apply_wb(s, wb, w2);
  EXPECT_NEAR(leak.noise[2], (1e-3 + 1e-7) * db_to_linear(-35.0) * db_to_linear(-12.0), 1e-20);
}

TEST(AddPath, AddedSlotOsnrIsTxOverK) {
  NodeSpec n;
  n.add_coupler = CouplerParams{0.2, 0.0};
  for (int k = 1; k <= 8; ++k) {
    n.adds.clear();
    for (int s = 1; s <= k; ++s) n.adds.push_back({s, TransmitterParams{3.0, 40.0}});
    const ChannelState out = apply_add(ChannelState(8), n, 1);
    for (int s = 1; s <= k; ++s) {
      EXPECT_NEAR(*out.osnr(s), db_to_linear(40.0) / k, 1e-12 * db_to_linear(40.0)) << k;
      EXPECT_EQ(out.origin[s - 1], 1);
    }
  }
}

TEST(AddPath, ZeroAddsOnlyScalesThrough) {
  NodeSpec n;
  n.add_coupler = CouplerParams{0.2, 0.0};
  const ChannelState s = lit({1e-3, 2e-3}, {1e-7, 1e-7});
  const ChannelState t = apply_add(s, n, 1);
  EXPECT_NEAR(t.signal[0], 0.8e-3, 1e-18);
  EXPECT_NEAR(t.noise[1], 0.8e-7, 1e-21);
}

TEST(AddPath, CollisionThrows) {
  NodeSpec n;
  n.add_coupler = CouplerParams{0.2, 0.0};
  n.adds.push_back({1, TransmitterParams{}});
  EXPECT_THROW(apply_add(lit({1e-3}, {0.0}), n, 2), TopologyError);
}

TEST(Coupler, PowerConservation) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> sig(16), noi(16);
    for (int j = 0; j < 16; ++j) {
      sig[j] = 1e-3 * u(rng);
      noi[j] = 1e-7 * u(rng);
    }
    const ChannelState s = lit(sig, noi);
    const CouplerParams c{0.01 + 0.98 * u(rng), 2.0 * u(rng)};
    const auto d = apply_drop(s, c, SplitterParams{1, 0.0}, 0.0);
    const double keep = db_to_linear(-c.excess_loss_db);
    for (int j = 0; j < 16; ++j) {
      EXPECT_LT(rel(d.dropped.signal[j] + d.through.signal[j], sig[j] * keep), 1e-12);
      EXPECT_LT(rel(d.dropped.noise[j] + d.through.noise[j], noi[j] * keep), 1e-12);
    }
  }
}

TEST(Receiver, DropAtUpperBoundSitsAtOverload) {
  // 20 dBm spread over 96 slots, r_drop at the 8-port upper bound.
  ChannelState s(96);
  for (int i = 0; i < 96; ++i) {
    s.signal[i] = 0.1 / 96;
    s.active[i] = 1;
  }
  const double r_max = 0.159620985197510;
  const auto d = apply_drop(s, CouplerParams{r_max, 0.0}, SplitterParams{8, 0.0}, 0.0);
  const std::vector<int> slots{1};
  const auto v = receiver_check(d.dropped, ReceiverParams{-23.0, 3.0}, slots);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1].check, "total_max");
  EXPECT_NEAR(*v[1].margin_db, 0.0, 0.05);
  EXPECT_NEAR(*v[1].power_dbm, 3.0, 1e-9);
}

TEST(Receiver, SensitivityMarginAndDarkSlot) {
  ChannelState s(96);
  for (int i = 0; i < 90; ++i) {
    s.signal[i] = to_watts(Dbm{-17.0}).value;
    s.active[i] = 1;
  }
  const std::vector<int> slots{5, 85, 93};
  const auto v = receiver_check(s, ReceiverParams{-23.0, 3.0}, slots);
  EXPECT_TRUE(v[0].pass);
  EXPECT_NEAR(*v[0].margin_db, 6.0, 1e-9);
  EXPECT_FALSE(v[2].pass);
  EXPECT_EQ(v[2].message, "slot inactive");
  EXPECT_TRUE(v[3].pass);

  const auto dark = receiver_check(ChannelState(4), ReceiverParams{}, slots);
  EXPECT_EQ(dark[0].message, "slot inactive");
  EXPECT_FALSE(dark[0].pass);
}

TEST(Engine, UniformSpanChainMatchesClosedForm) {
  std::mt19937_64 rng(2024);
  const EngineOptions opt;
  for (int i = 0; i < 60; ++i) {
    fixtures::UniformChain c = fixtures::random_chain(rng, false);
    const Topology t = fixtures::make_chain(c, opt.constants);
    const PropagationTrace tr = propagate(t, opt);
    const auto st = fixtures::chain_stage(c, opt.constants);
    for (int m = 1; m <= c.m; ++m) {
      const auto* p = tr.find("n" + std::to_string(m) + "/amp");
      ASSERT_NE(p, nullptr);
      const double want =
          osnr::osnr_after_spans(to_linear(OsnrDb{c.osnr_tx_db}), st, m).value;
      EXPECT_LT(rel(*p->state.osnr(1), want), 1e-9) << "draw " << i << " m " << m;
    }
  }
}

TEST(Engine, UniformNodeChainMatchesClosedForm) {
  std::mt19937_64 rng(4048);
  const EngineOptions opt;
  for (int i = 0; i < 60; ++i) {
    fixtures::UniformChain c = fixtures::random_chain(rng, true);
    const Topology t = fixtures::make_chain(c, opt.constants);
    const PropagationTrace tr = propagate(t, opt);
    const auto st = fixtures::chain_stage(c, opt.constants);
    const auto add = osnr::osnr_add_k(to_linear(OsnrDb{c.add_osnr_db}), c.k);
    for (int m = 1; m <= c.m; ++m) {
      const auto* p = tr.find("n" + std::to_string(m) + "/add");
      ASSERT_NE(p, nullptr);
      EXPECT_NEAR(p->state.signal[0], to_watts(Dbm{c.line_dbm}).value,
                  1e-9 * to_watts(Dbm{c.line_dbm}).value);
      const double want =
          osnr::osnr_after_nodes(to_linear(OsnrDb{c.osnr_tx_db}), st, add, m).value;
      EXPECT_LT(rel(*p->state.osnr(1), want), 1e-9) << "draw " << i << " m " << m;
    }
  }
}

TEST(Engine, FourNodeChainAgainstClosedForm) {
  fixtures::UniformChain c;
  c.m = 4;
  c.k = 4;
  const EngineOptions opt;
  const auto tr = propagate(fixtures::make_chain(c, opt.constants), opt);
  const double want = osnr::osnr_after_nodes(to_linear(OsnrDb{c.osnr_tx_db}),
                                             fixtures::chain_stage(c, opt.constants),
                                             osnr::osnr_add_k(to_linear(OsnrDb{c.add_osnr_db}), 4), 4)
                          .value;
  EXPECT_LT(rel(*tr.find("n4/add")->state.osnr(1), want), 1e-9);
}

TEST(Engine, BackToBack) {
  Topology t;
  for (int s = 1; s <= 8; ++s) t.head.adds.push_back({s, TransmitterParams{0.0, 35.0}});
  t.head.amplifier = EdfaParams{};
  EngineOptions opt;
  opt.booster_noise_in_tx_osnr = false;
  const auto tr = propagate(t, opt);
  ASSERT_EQ(tr.receiver_points().size(), 1u);
  const auto* rx = tr.find("tail/rx");
  ASSERT_NE(rx, nullptr);
  EXPECT_EQ(rx->observed.size(), 8u);

  const auto* booster = tr.find("head/booster");
  const double g = db_to_linear(*booster->gain_db);
  const double p_in = tr.find("head/tx")->state.signal[2];
  PhysicalConstants c;
  c.carrier_hz = t.plan.frequency_hz(3);
  const auto st = osnr::stage_for_gain(p_in, db_to_linear(5.0), g, c);
  const double want =
      osnr::combine_osnr(to_linear(osnr::coupled_tx_osnr(OsnrDb{35.0}, 8)), st.stage_osnr()).value;
  EXPECT_LT(rel(*rx->state.osnr(3), want), 1e-12);

  opt.booster_noise_in_tx_osnr = true;
  const auto quiet = propagate(t, opt);
  EXPECT_NEAR(linear_to_db(*quiet.find("tail/rx")->state.osnr(3)), 35.0 - 10.0 * std::log10(8.0),
              1e-9);
}

TEST(Engine, TraceIsBitIdentical) {
  fixtures::UniformChain c;
  c.k = 3;
  const EngineOptions opt;
  const Topology t = fixtures::make_chain(c, opt.constants);
  const auto a = propagate(t, opt);
  const auto b = propagate(t, opt);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& x = a.points[i].state;
    const auto& y = b.points[i].state;
    EXPECT_EQ(a.points[i].label, b.points[i].label);
    EXPECT_EQ(std::memcmp(x.signal.data(), y.signal.data(), x.signal.size() * sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(x.noise.data(), y.noise.data(), x.noise.size() * sizeof(double)), 0);
  }
}

TEST(Engine, InvalidTopologyRejected) {
  Topology t;
  t.head.adds.push_back({1, TransmitterParams{}});
  t.spans.push_back(SpanSpec{});
  t.spans.push_back(SpanSpec{});
  EXPECT_THROW(propagate(t), TopologyError);
}
