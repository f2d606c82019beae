#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "wbnet/osnr.hpp"

using namespace wbnet;
using namespace wbnet::osnr;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

StageNoise stage(double p_in_dbm, double nf_db) {
  return StageNoise{to_watts(Dbm{p_in_dbm}).value, db_to_linear(nf_db), PhysicalConstants{}};
}

struct Draw {
  OsnrLinear tx;
  StageNoise st;
  OsnrLinear add;
  int m;
};

Draw draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Draw d{to_linear(OsnrDb{10.0 + 35.0 * u(rng)}), stage(-30.0 + 30.0 * u(rng), 3.0 + 7.0 * u(rng)),
         to_linear(OsnrDb{15.0 + 30.0 * u(rng)}), static_cast<int>(rng() % 11)};
  return d;
}

}  // namespace

TEST(CoupledTxOsnr, ChannelCounts) {
  EXPECT_NEAR(coupled_tx_osnr(OsnrDb{40.0}, 96).value, 20.18, 0.005);
  EXPECT_NEAR(coupled_tx_osnr(OsnrDb{40.0}, 8).value, 30.97, 0.005);
  EXPECT_NEAR(40.0 - coupled_tx_osnr(OsnrDb{40.0}, 90).value, 19.54, 0.005);
  EXPECT_EQ(coupled_tx_osnr(OsnrDb{33.3}, 1).value, 33.3);
  EXPECT_THROW(coupled_tx_osnr(OsnrDb{40.0}, 0), std::invalid_argument);
}

TEST(OsnrAddK, Values) {
  EXPECT_NEAR(to_db(osnr_add_k(to_linear(OsnrDb{40.0}), 8)).value, 30.9691001300806, 1e-12);
  EXPECT_NEAR(to_db(osnr_add_k(to_linear(OsnrDb{30.0}), 9)).value, 20.4575749056068, 1e-12);
  EXPECT_EQ(osnr_add_k(OsnrLinear{123.0}, 1).value, 123.0);
}

TEST(CombineOsnr, Values) {
  EXPECT_NEAR(to_db(combine_osnr(to_linear(OsnrDb{25.0}), to_linear(OsnrDb{31.0}))).value,
              24.0267720629130, 1e-12);
  EXPECT_NEAR(combine_osnr(OsnrLinear{200.0}, OsnrLinear{200.0}).value, 100.0, 1e-12);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(combine_osnr(OsnrLinear{200.0}, OsnrLinear{inf}).value, 200.0);
}

TEST(CombineOsnr, Properties) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> db(0.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const OsnrLinear a = to_linear(OsnrDb{db(rng)});
    const OsnrLinear b = to_linear(OsnrDb{db(rng)});
    const OsnrLinear c = to_linear(OsnrDb{db(rng)});
    EXPECT_NEAR(combine_osnr(a, b).value, combine_osnr(b, a).value, 1e-12 * a.value);
    const double left = combine_osnr(combine_osnr(a, b), c).value;
    const double right = combine_osnr(a, combine_osnr(b, c)).value;
    EXPECT_LT(rel(left, right), 1e-12);
    EXPECT_LT(combine_osnr(a, b).value, std::min(a.value, b.value));
  }
}

TEST(OsnrAfterSpans, FourSpanExample) {
  const OsnrLinear tx = to_linear(coupled_tx_osnr(OsnrDb{40.0}, 96));
  const double out = to_db(osnr_after_spans(tx, stage(-10.0, 5.0), 4)).value;
  EXPECT_NEAR(out, 20.09, 0.005);
  EXPECT_NEAR(out, 20.0865782854604, 1e-10);
}

TEST(OsnrAfterSpans, Limits) {
  const OsnrLinear tx{300.0};
  EXPECT_EQ(osnr_after_spans(tx, stage(-10.0, 5.0), 0).value, 300.0);
  EXPECT_LT(rel(osnr_after_spans(tx, stage(90.0, 5.0), 10).value, 300.0), 1e-9);
  EXPECT_THROW(osnr_after_spans(tx, stage(-10.0, 5.0), -1), std::invalid_argument);
}

TEST(OsnrAfterSpans, MonotoneInStagesAndPower) {
  const OsnrLinear tx{500.0};
  for (int m = 0; m < 10; ++m) {
    EXPECT_GT(osnr_after_spans(tx, stage(-15.0, 5.0), m).value,
              osnr_after_spans(tx, stage(-15.0, 5.0), m + 1).value);
    EXPECT_GT(osnr_after_nodes(tx, stage(-15.0, 5.0), OsnrLinear{800.0}, m).value,
              osnr_after_nodes(tx, stage(-15.0, 5.0), OsnrLinear{800.0}, m + 1).value);
  }
  for (double p = -30.0; p < 0.0; p += 1.0) {
    EXPECT_LT(osnr_after_spans(tx, stage(p, 5.0), 3).value,
              osnr_after_spans(tx, stage(p + 1.0, 5.0), 3).value);
    EXPECT_LT(osnr_after_nodes(tx, stage(p, 5.0), OsnrLinear{800.0}, 3).value,
              osnr_after_nodes(tx, stage(p + 1.0, 5.0), OsnrLinear{800.0}, 3).value);
  }
}

TEST(OsnrAfterNodes, Limits) {
  const OsnrLinear tx{300.0};
  const auto st = stage(-12.0, 5.5);
  EXPECT_DOUBLE_EQ(osnr_after_nodes(tx, st, OsnrLinear{50.0}, 0).value, 300.0);
  const double inf = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= 10; ++m) {
    EXPECT_LT(rel(osnr_after_nodes(tx, st, OsnrLinear{inf}, m).value,
                  osnr_after_spans(tx, st, m).value),
              1e-14);
  }
}

TEST(OsnrAfterNodes, EqualsNodeByNodeFold) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Draw d = draw(rng);
    OsnrLinear fold = d.tx;
    for (int j = 0; j < d.m; ++j) fold = combine_osnr(osnr_after_spans(fold, d.st, 1), d.add);
    EXPECT_LT(rel(osnr_after_nodes(d.tx, d.st, d.add, d.m).value, fold.value), 1e-12);
  }
}

TEST(InverseAccumulate, EmptyIsInitial) {
  EXPECT_EQ(inverse_osnr_accumulate(OsnrLinear{42.0}, {}).value, 42.0);
}

TEST(InverseAccumulate, MatchesClosedForms) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Draw d = draw(rng);
    const double s = d.st.stage_osnr().value;
    const std::vector<double> spans(static_cast<std::size_t>(d.m), s);
    EXPECT_LT(rel(osnr_after_spans(d.tx, d.st, d.m).value,
                  inverse_osnr_accumulate(d.tx, spans).value),
              1e-12);

    std::vector<double> nodes;
    for (int j = 0; j < d.m; ++j) {
      nodes.push_back(s);
      nodes.push_back(d.add.value);
    }
    EXPECT_LT(rel(osnr_after_nodes(d.tx, d.st, d.add, d.m).value,
                  inverse_osnr_accumulate(d.tx, nodes).value),
              1e-12);
  }
}

TEST(InverseAccumulate, RejectsNonPositive) {
  const std::vector<double> bad{10.0, 0.0};
  EXPECT_THROW(inverse_osnr_accumulate(OsnrLinear{10.0}, bad), std::invalid_argument);
}

TEST(StageNoise, GainReferredNoiseFigure) {
  const auto s = stage_for_gain(1e-4, db_to_linear(5.0), 100.0, PhysicalConstants{});
  EXPECT_NEAR(s.noise_figure, db_to_linear(5.0) * 0.99, 1e-15);
  EXPECT_NEAR(to_db(s.stage_osnr()).value, 42.9974229321487, 1e-10);
  EXPECT_NEAR(to_db(stage(-10.0, 5.0).stage_osnr()).value, 42.9537748781242, 1e-10);
}
