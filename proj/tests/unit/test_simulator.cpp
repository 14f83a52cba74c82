#include <gtest/gtest.h>

#include <cmath>

#include "crowdrate/errors.hpp"
#include "crowdrate/incentives.hpp"
#include "crowdrate/monitored_payoffs.hpp"
#include "crowdrate/rating_dynamics.hpp"
#include "crowdrate/simulator.hpp"

using namespace crowdrate;
using namespace crowdrate::sim;

namespace {

const DesignParams kHalf{0.5, 0.5, 0.0, 0.5};

SimConfig smallChain() {
  SimConfig c;
  c.periods = 20000;
  c.replicates = 10;
  c.seed = 99;
  return c;
}

}  // namespace

TEST(SimConfigCheck, Rejects) {
  SimConfig c;
  c.periods = 0;
  EXPECT_THROW(validate(c), DomainError);
  c = SimConfig{};
  c.population = 0;
  EXPECT_THROW(validate(c), DomainError);
}

TEST(Chain, StationaryWithinThreeSigma) {
  const IntrinsicParams p;
  SimConfig c = smallChain();
  c.periods = 100000;
  c.replicates = 30;
  const auto r = runChain(kHalf, p, c);
  EXPECT_LT(std::abs(r.eta0.mean - 0.24), 3 * r.eta0.stderr);
  EXPECT_NEAR(r.eta0.mean + r.eta1.mean, 1.0, 1e-12);
  EXPECT_TRUE(r.etaSumsToOne);
  EXPECT_LT(std::abs(r.socialUtility.mean - 0.38), 4 * r.socialUtility.stderr);
}

TEST(Chain, NoErrorsStayGood) {
  IntrinsicParams p;
  p.eps1 = p.eps2 = 0.0;
  const auto r = runChain(kHalf, p, smallChain());
  EXPECT_EQ(r.eta1.mean, 1.0);
  EXPECT_EQ(r.demotions, 0);
}

TEST(Chain, NoDemotionWithoutBeta) {
  const auto r = runChain({0.5, 0.0, 0.0, 0.5}, IntrinsicParams{}, smallChain());
  EXPECT_EQ(r.demotions, 0);
  EXPECT_EQ(r.eta1.mean, 1.0);
}

TEST(Chain, SingleReplicateUsesBatchMeans) {
  SimConfig c = smallChain();
  c.replicates = 1;
  const auto r = runChain(kHalf, IntrinsicParams{}, c);
  EXPECT_GT(r.eta0.stderr, 0.0);
  EXPECT_LT(std::abs(r.eta0.mean - 0.24), 4 * r.eta0.stderr);
}

TEST(Chain, Deterministic) {
  const auto a = runChain(kHalf, IntrinsicParams{}, smallChain());
  const auto b = runChain(kHalf, IntrinsicParams{}, smallChain());
  EXPECT_EQ(a.eta0.mean, b.eta0.mean);
  EXPECT_EQ(a.eta0.stderr, b.eta0.stderr);
  EXPECT_EQ(a.demotions, b.demotions);
}

TEST(Chain, ThreadCountDoesNotMatter) {
  SimConfig c = smallChain();
  const auto a = runChain(kHalf, IntrinsicParams{}, c);
  c.threads = 3;
  const auto b = runChain(kHalf, IntrinsicParams{}, c);
  EXPECT_EQ(a.eta0.mean, b.eta0.mean);
  EXPECT_EQ(a.socialUtility.mean, b.socialUtility.mean);
  EXPECT_EQ(a.promotions, b.promotions);
}

TEST(Utility, NoFutureIsOnePeriodMean) {
  IntrinsicParams p;
  p.delta = 0.0;
  SimConfig c;
  c.replicates = 30;
  c.population = 2000;
  const auto r = runUtility(kHalf, p, c);
  EXPECT_EQ(r.horizon, 1);
  for (Worker w : kWorkers) {
    for (Rating th : {Rating::Bad, Rating::Good}) {
      const auto& e = r.vInf[index(w)][index(th)];
      EXPECT_LT(std::abs(e.mean - payoffs::compliant(w, kHalf.price(th), p)), 4 * e.stderr);
    }
  }
}

TEST(Utility, HorizonTruncation) {
  const IntrinsicParams p;
  SimConfig c;
  c.replicates = 2;
  c.population = 1;
  const auto r = runUtility(kHalf, p, c);
  EXPECT_LT(std::pow(p.delta, static_cast<double>(r.horizon)), 1e-6);
  EXPECT_GE(std::pow(p.delta, static_cast<double>(r.horizon - 1)), 1e-6);
  EXPECT_GT(r.truncationBound, 0.0);
  EXPECT_LT(r.truncationBound, 1e-3);
}

TEST(Utility, CompliantAndDeviationNearAnalytic) {
  const IntrinsicParams p;
  SimConfig c;
  c.replicates = 30;
  c.population = 500;
  c.seed = 5;
  c.deviation = Deviation{Worker::One, Rating::Good};
  const auto r = runUtility(kHalf, p, c);
  const auto v = incentives::longTermUtilities(kHalf, p, Worker::One);
  EXPECT_LT(std::abs(r.vInf[0][1].mean - v.vInf1), 4 * r.vInf[0][1].stderr);
  ASSERT_TRUE(r.deviationValue.has_value());
  const double dev = incentives::deviationValue(Rating::Good, kHalf, p, Worker::One);
  EXPECT_LT(std::abs(r.deviationValue->mean - dev), 4 * r.deviationValue->stderr);
}

TEST(Utility, Deterministic) {
  SimConfig c;
  c.replicates = 4;
  c.population = 50;
  const auto a = runUtility(kHalf, IntrinsicParams{}, c);
  c.threads = 2;
  const auto b = runUtility(kHalf, IntrinsicParams{}, c);
  for (int w = 0; w < 2; ++w) {
    for (int t = 0; t < 2; ++t) EXPECT_EQ(a.vInf[w][t].mean, b.vInf[w][t].mean);
  }
}

TEST(Csv, Columns) {
  SimConfig c;
  c.replicates = 3;
  c.population = 10;
  c.periods = 1000;
  auto r = runChain(kHalf, IntrinsicParams{}, c);
  const auto u = runUtility(kHalf, IntrinsicParams{}, c);
  r.vInf = u.vInf;
  const auto csv = comparisonCsv(r, kHalf, IntrinsicParams{}, true, true);
  EXPECT_EQ(csv.rfind("metric,analytic,empirical,stderr,z\n", 0), 0u);
  EXPECT_NE(csv.find("eta0,0.24,"), std::string::npos);
  EXPECT_NE(csv.find("vinf1_worker2,"), std::string::npos);
}
