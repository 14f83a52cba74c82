#include <gtest/gtest.h>

#include <fstream>

#include "crowdrate/domain.hpp"
#include "crowdrate/errors.hpp"

using namespace crowdrate;

TEST(Validate, DefaultsPass) {
  const IntrinsicParams p;
  const auto r = validate(p);
  EXPECT_TRUE(r.ok()) << r.describe();
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Validate, DeltaOneRejected) {
  IntrinsicParams p;
  p.delta = 1.0;
  EXPECT_TRUE(validate(p).mentions("delta out of range"));
}

TEST(Validate, DetectionMarginZeroRejected) {
  // 1 - 0.5 - 2*0.4 + 2*0.5*0.4 = 0.1 still passes the margin test.
  IntrinsicParams p;
  p.eps1 = 0.49;
  p.eps2 = 0.4;
  EXPECT_FALSE(validate(p).mentions("incentive denominator nonpositive"));
  p.eps1 = 0.6;
  p.eps2 = 0.5;
  const auto r = validate(p);
  EXPECT_TRUE(r.mentions("incentive denominator nonpositive"));
  EXPECT_TRUE(r.mentions("eps1 out of range"));
}

TEST(Validate, OpenIntervalsExact) {
  for (double v : {0.0, 1.0}) {
    IntrinsicParams p;
    p.c1 = v;
    EXPECT_TRUE(validate(p).mentions("c1 out of range"));
  }
  IntrinsicParams p;
  p.eps2 = 0.5;
  EXPECT_TRUE(validate(p).mentions("eps2 out of range"));
  p.eps2 = 0.0;
  p.eps1 = 0.0;
  p.delta = 0.0;
  EXPECT_TRUE(validate(p).ok());
}

TEST(Validate, AttackCostAboveDamageWarns) {
  IntrinsicParams p;
  p.s1 = 0.6;
  const auto r = validate(p);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.describe().find("warning"), std::string::npos);
}

TEST(Validate, Idempotent) {
  IntrinsicParams p;
  p.delta = 2.0;
  EXPECT_EQ(validate(p).describe(), validate(p).describe());
  EXPECT_EQ(p.delta, 2.0);
}

TEST(Validate, Design) {
  EXPECT_TRUE(validate(DesignParams{}).ok());
  EXPECT_FALSE(validate(DesignParams{0.0, 0.5, 0.0, 0.5}).ok());
  EXPECT_FALSE(validate(DesignParams{0.5, 1.5, 0.0, 0.5}).ok());
  EXPECT_FALSE(validate(DesignParams{0.5, 0.5, 0.5, 0.5}).ok());
  EXPECT_FALSE(validate(DesignParams{0.5, 0.5, 0.0, 1.1}).ok());
  EXPECT_TRUE(validate(DesignParams{1.0, 1.0, 0.0, 1.0}).ok());
}

TEST(ErrorAggregate, Values) {
  const IntrinsicParams p;
  const auto e = errorAggregate(p);
  EXPECT_NEAR(e.epsAgg, 0.24, 1e-15);
  EXPECT_NEAR(e.zeta, 0.76, 1e-15);
  EXPECT_DOUBLE_EQ(detectionMargin(p), 1 - 0.2 - 0.1 + 0.02);

  IntrinsicParams q;
  q.eps1 = q.eps2 = 0.0;
  EXPECT_EQ(errorAggregate(q).epsAgg, 0.0);
  EXPECT_EQ(errorAggregate(q).zeta, 1.0);
}

TEST(ErrorAggregate, SumsToOne) {
  for (double e1 = 0.0; e1 < 0.5; e1 += 0.07) {
    for (double e2 = 0.0; e2 < 0.5; e2 += 0.07) {
      IntrinsicParams p;
      p.eps1 = e1;
      p.eps2 = e2;
      const auto e = errorAggregate(p);
      EXPECT_EQ(e.epsAgg + e.zeta, 1.0);
      EXPECT_GE(e.epsAgg, 0.0);
      EXPECT_LT(e.epsAgg, 1.0);
    }
  }
}

TEST(Params, GetSet) {
  IntrinsicParams p;
  for (auto key : kParamKeys) {
    setParam(p, key, 0.125);
    EXPECT_EQ(getParam(p, key), 0.125);
  }
  EXPECT_THROW(setParam(p, "c3", 0.1), ParseError);
  EXPECT_THROW(getParam(p, "alpha"), ParseError);
}

TEST(Params, ParseRoundTrip) {
  const IntrinsicParams p;
  EXPECT_EQ(parseParams(formatParams(p)), p);
  const auto q = parseParams("# comment\nc1 = 0.3\nc2=0.2\ns1=0.2\ns2=0.1\nd=0.5\n\ndelta=0.9 # trailing\neps1=0.1\neps2=0.05\n");
  EXPECT_EQ(q.c1, 0.3);
  EXPECT_EQ(q.delta, 0.9);
}

TEST(Params, ParseErrorsNameTheKey) {
  auto message = [](const std::string& text) {
    try {
      parseParams(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string full = "c1=0.1\nc2=0.2\ns1=0.2\ns2=0.1\nd=0.5\ndelta=0.95\neps1=0.2\neps2=0.05\n";
  EXPECT_NE(message("c1=0.1\ns1=0.2\ns2=0.1\nd=0.5\ndelta=0.95\neps1=0.2\neps2=0.05\n").find("c2"),
            std::string::npos);
  EXPECT_NE(message(full + "c1=0.2\n").find("duplicate key 'c1'"), std::string::npos);
  EXPECT_NE(message(full + "zeta=0.2\n").find("zeta"), std::string::npos);
  EXPECT_NE(message("c1=abc\n").find("c1"), std::string::npos);
  EXPECT_NE(message("c1=0x1p-3\n").find("c1"), std::string::npos);
  EXPECT_NE(message("c1\n").find("key=value"), std::string::npos);
}

TEST(Params, LoadMissingFile) {
  EXPECT_THROW(loadParams("/nonexistent/params.conf"), ParseError);
  const std::string path = ::testing::TempDir() + "crowdrate_params.conf";
  std::ofstream(path) << formatParams(IntrinsicParams{});
  EXPECT_EQ(loadParams(path), IntrinsicParams{});
}
