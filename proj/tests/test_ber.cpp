#include <gtest/gtest.h>

#include <cmath>

#include "chains.hpp"
#include "wbnet/ber.hpp"

using namespace wbnet;
using namespace wbnet::ber;

TEST(ErfcOracle, KnownValue) {
  EXPECT_NEAR(fixtures::erfc_oracle(1.0), 0.157299207050285, 1e-15);
  EXPECT_NEAR(fixtures::erfc_oracle(0.25), 0.723673609831763, 1e-15);
  EXPECT_NEAR(fixtures::erfc_oracle(3.0), 2.20904969985854e-5, 1e-18);
}

TEST(Snr, FromOsnr) {
  EXPECT_DOUBLE_EQ(snr_from_osnr(OsnrLinear{50.0}, 12.5e9, 12.5e9), 50.0);
  EXPECT_NEAR(linear_to_db(snr_from_osnr(OsnrLinear{100.0}, 34e9, 12.5e9)), 15.6543109596580, 1e-12);
  EXPECT_DOUBLE_EQ(snr_from_osnr(OsnrLinear{200.0}, 34e9, 12.5e9),
                   2.0 * snr_from_osnr(OsnrLinear{100.0}, 34e9, 12.5e9));
  EXPECT_THROW(snr_from_osnr(OsnrLinear{0.0}, 34e9, 12.5e9), std::invalid_argument);
}

TEST(BerEstimate, TableAgainstOracle) {
  for (int db = 0; db <= 25; ++db) {
    const double snr = db_to_linear(db);
    const double qpsk = 0.5 * fixtures::erfc_oracle(std::sqrt(snr / 2.0));
    const double qam = 0.375 * fixtures::erfc_oracle(std::sqrt(snr / 10.0));
    EXPECT_NEAR(ber_estimate(snr, ModulationFormat::DpQpsk), qpsk, 1e-12 * qpsk) << db;
    EXPECT_NEAR(ber_estimate(snr, ModulationFormat::Dp16Qam), qam, 1e-12 * qam) << db;
  }
  // Frozen anchors.
  EXPECT_NEAR(ber_estimate(db_to_linear(10.0), ModulationFormat::DpQpsk), 7.82701129001275e-4, 1e-16);
  EXPECT_NEAR(ber_estimate(db_to_linear(15.0), ModulationFormat::Dp16Qam), 4.46540036083399e-3, 1e-15);
}

TEST(BerEstimate, Limits) {
  EXPECT_NEAR(ber_estimate(1e-12, ModulationFormat::DpQpsk), 0.5, 1e-6);
  EXPECT_NEAR(ber_estimate(1e-12, ModulationFormat::Dp16Qam), 0.375, 1e-6);
  EXPECT_EQ(ber_estimate(1e6, ModulationFormat::DpQpsk), 0.0);
  EXPECT_THROW(ber_estimate(0.0, ModulationFormat::DpQpsk), std::invalid_argument);
}

TEST(BerEstimate, MonotoneAndOrdered) {
  for (double db = 0.0; db < 25.0; db += 0.05) {
    const double a = db_to_linear(db);
    const double b = db_to_linear(db + 0.05);
    EXPECT_GT(ber_estimate(a, ModulationFormat::DpQpsk), ber_estimate(b, ModulationFormat::DpQpsk));
    EXPECT_GT(ber_estimate(a, ModulationFormat::Dp16Qam), ber_estimate(b, ModulationFormat::Dp16Qam));
    EXPECT_GT(ber_estimate(a, ModulationFormat::Dp16Qam), ber_estimate(a, ModulationFormat::DpQpsk));
  }
}

TEST(BerEstimate, PenaltyShiftsSnr) {
  const double snr = db_to_linear(12.0);
  EXPECT_DOUBLE_EQ(ber_estimate(snr, ModulationFormat::DpQpsk, 1.5),
                   ber_estimate(snr / db_to_linear(1.5), ModulationFormat::DpQpsk));
}

TEST(BerEstimate, QpskAtThreshold) {
  // erfc(x) = 4e-2 gives a QPSK BER of exactly the default threshold.
  const double x = erfc_inverse(4e-2);
  EXPECT_NEAR(std::erfc(x), 4e-2, 1e-16);
  const double ber = ber_estimate(2.0 * x * x, ModulationFormat::DpQpsk);
  EXPECT_NEAR(ber, 2e-2, 1e-15);
}

TEST(ErfcInverse, RoundTrip) {
  for (double y : {1.0, 0.9, 0.5, 0.1, 1e-3, 1e-10, 1e-100, 1e-300}) {
    const double x = erfc_inverse(y);
    EXPECT_NEAR(std::log(std::erfc(x)), std::log(y), 1e-12 * std::max(1.0, std::abs(std::log(y))));
  }
  EXPECT_THROW(erfc_inverse(0.0), std::invalid_argument);
}

TEST(FecVerdict, Boundary) {
  EXPECT_TRUE(fec_verdict(1e-3).pass);
  EXPECT_GT(fec_verdict(1e-3).margin_db, 0.0);
  const auto at = fec_verdict(2e-2);
  EXPECT_FALSE(at.pass);
  EXPECT_NEAR(at.margin_db, 0.0, 1e-12);
  const auto below = fec_verdict(std::nextafter(2e-2, 0.0));
  EXPECT_TRUE(below.pass);
  const auto worse = fec_verdict(5e-2);
  EXPECT_FALSE(worse.pass);
  EXPECT_LT(worse.margin_db, 0.0);
  EXPECT_TRUE(fec_verdict(0.0).pass);
  EXPECT_THROW(fec_verdict(1e-3, FecPolicy{0.0}), std::invalid_argument);
}

TEST(FecVerdict, QFactor) {
  // Q = sqrt(2) erfcinv(2 BER): BER 1e-3 -> Q 3.0902.
  EXPECT_NEAR(q_from_ber(1e-3), 3.090232306167813, 1e-10);
  EXPECT_NEAR(q_from_ber(0.5), 0.0, 1e-15);
}
