#include <gtest/gtest.h>

#include <random>

#include "crowdrate/errors.hpp"
#include "crowdrate/rating_dynamics.hpp"
#include "crowdrate/requester.hpp"

using namespace crowdrate;
using namespace crowdrate::requester;

namespace {

// Match utility by explicit enumeration of both ratings, the winner and the
// delivery outcome.
double enumerateHere(const DesignParams& d, const IntrinsicParams& p) {
  const auto eta = rating::stationary(d, p);
  const double Z = 1 - (p.eps1 + p.eps2 - p.eps1 * p.eps2);
  double total = 0.0;
  for (Rating a : {Rating::Bad, Rating::Good}) {
    for (Rating b : {Rating::Bad, Rating::Good}) {
      for (Rating winner : {a, b}) {
        for (bool delivered : {true, false}) {
          const double prob = eta.of(a) * eta.of(b) * 0.5 * (delivered ? Z : 1 - Z);
          total += prob * ((delivered ? 1.0 : 0.0) - d.price(winner));
        }
      }
    }
  }
  return total;
}

}  // namespace

TEST(PerWinner, Examples) {
  IntrinsicParams q;
  q.eps1 = q.eps2 = 0.0;
  EXPECT_EQ(perWinnerUtility(Rating::Bad, {0.5, 0.5, 0.0, 1.0}, q), 1.0);
  EXPECT_EQ(perWinnerUtility(Rating::Good, {0.5, 0.5, 0.0, 1.0}, q), 0.0);
  const IntrinsicParams p;
  EXPECT_NEAR(perWinnerUtility(Rating::Good, {0.5, 0.5, 0.0, 0.5}, p), 0.26, 1e-15);
}

TEST(Pair, Examples) {
  const IntrinsicParams p;
  const DesignParams d{0.3, 0.6, 0.1, 0.7};
  const auto eta = rating::stationary(d, p);
  EXPECT_NEAR(pairUtility(Rating::Good, Rating::Good, d, eta, p),
              eta.eta1 * eta.eta1 * perWinnerUtility(Rating::Good, d, p), 1e-15);
  EXPECT_NEAR(pairUtility(Rating::Bad, Rating::Good, d, eta, p),
              pairUtility(Rating::Good, Rating::Bad, d, eta, p), 1e-15);
  const DesignParams flat{0.3, 0.6, 0.4, 0.4};
  double sum = 0.0;
  for (Rating a : {Rating::Bad, Rating::Good}) {
    for (Rating b : {Rating::Bad, Rating::Good}) sum += pairUtility(a, b, flat, eta, p);
  }
  EXPECT_NEAR(sum, 0.76 - 0.4, 1e-15);
}

TEST(Social, Examples) {
  const IntrinsicParams p;
  EXPECT_NEAR(socialUtility({0.5, 0.5, 0.0, 0.5}, p).closedForm, 0.38, 1e-15);
  EXPECT_NEAR(socialUtility({0.2, 0.7, 0.3, 0.3}, p).closedForm, 0.76 - 0.3, 1e-15);
  IntrinsicParams q;
  q.eps1 = q.eps2 = 0.0;
  EXPECT_NEAR(socialUtility({0.2, 0.7, 0.0, 0.6}, q).closedForm, 0.4, 1e-15);
  EXPECT_THROW(socialUtility({0.0, 0.0, 0.0, 0.5}, p), DegenerateChain);
}

TEST(Social, EnumerationMatchesClosedForm) {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int k = 0; k < 1000; ++k) {
    IntrinsicParams p;
    p.eps1 = 0.49 * u(gen);
    p.eps2 = 0.49 * u(gen);
    const double g0 = 0.5 * u(gen);
    const DesignParams d{u(gen), u(gen), g0, g0 + (1 - g0) * u(gen)};
    const auto s = socialUtility(d, p);
    EXPECT_NEAR(s.residual(), 0.0, 1e-12);
    EXPECT_NEAR(enumerateHere(d, p), s.closedForm, 1e-12);
  }
}

TEST(Social, NonincreasingInPrices) {
  const IntrinsicParams p;
  const double h = 1e-6;
  for (double a = 0.1; a < 1.0; a += 0.3) {
    for (double b = 0.1; b < 1.0; b += 0.3) {
      const DesignParams d{a, b, 0.2, 0.6};
      const double base = socialUtility(d, p).closedForm;
      EXPECT_LE(socialUtility({a, b, 0.2 + h, 0.6}, p).closedForm, base);
      EXPECT_LE(socialUtility({a, b, 0.2, 0.6 + h}, p).closedForm, base);
    }
  }
}

TEST(KFour, RoundTripAndLevelSet) {
  const IntrinsicParams p;
  for (double a = 0.1; a <= 1.0; a += 0.15) {
    for (double b = 0.1; b <= 1.0; b += 0.15) {
      const DesignParams d{a, b, 0.0, 0.6};
      const double U = socialUtility(d, p).closedForm;
      const double k4 = kFour(d, p, U);
      EXPECT_NEAR(k4 * a, b, 1e-9);
      for (int i = 1; i <= 10; ++i) {
        const double a2 = i / 10.0;
        EXPECT_NEAR(socialUtility({a2, k4 * a2, 0.0, 0.6}, p).closedForm, U, 1e-9);
      }
    }
  }
}

TEST(KFour, UtilityRisesWithSlope) {
  // U as a function of K4 along beta = K4 alpha, by central differences.
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int k = 0; k < 100; ++k) {
    IntrinsicParams p;
    p.eps1 = 0.45 * u(gen);
    p.eps2 = 0.45 * u(gen);
    const double g1 = u(gen);
    const double a = u(gen);
    const double k4 = u(gen) / a;
    const double h = 1e-6;
    auto U = [&](double slope) { return socialUtility({a, slope * a, 0.0, g1}, p).closedForm; };
    const double fd = (U(k4 + h) - U(k4 - h)) / (2 * h);
    EXPECT_GT(fd, 0.0);
    const DesignParams d{a, k4 * a, 0.0, g1};
    EXPECT_NEAR(utilitySlopeInK4(d, p, U(k4)), fd, 1e-5 * std::max(1.0, std::abs(fd)));
  }
}
