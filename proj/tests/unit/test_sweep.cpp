#include <gtest/gtest.h>

#include <algorithm>

#include "crowdrate/errors.hpp"
#include "crowdrate/sweep.hpp"

using namespace crowdrate;
using namespace crowdrate::sweep;

namespace {

SweepSpec spec(const std::string& key, double from, double to, double step) {
  SweepSpec s;
  s.key = key;
  s.from = from;
  s.to = to;
  s.step = step;
  return s;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Sweep, Validation) {
  EXPECT_THROW(validate(spec("alpha", 0.1, 0.2, 0.1)), DomainError);
  EXPECT_THROW(validate(spec("c1", 0.2, 0.1, 0.1)), DomainError);
  EXPECT_THROW(validate(spec("c1", 0.1, 0.2, 0.0)), DomainError);
}

TEST(Sweep, GridIsInclusive) {
  const auto v = gridValues(spec("c1", 0.05, 0.45, 0.05));
  ASSERT_EQ(v.size(), 9u);
  EXPECT_EQ(v.front(), 0.05);
  EXPECT_EQ(v[3], 0.2);
  EXPECT_EQ(v.back(), 0.45);
}

TEST(Sweep, RowsInGridOrder) {
  auto s = spec("c1", 0.05, 0.45, 0.05);
  const auto rows = run(s);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].valid);
    EXPECT_NEAR(rows[i].params.c1, 0.05 * (i + 1), 1e-12);
  }
  const auto text = csv(rows);
  EXPECT_EQ(lines(text), 10u);
  s.threads = 4;
  EXPECT_EQ(csv(run(s)), text);
}

TEST(Sweep, InvalidPointsFlagged) {
  const auto rows = run(spec("c1", 0.8, 1.2, 0.1));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_TRUE(rows[0].valid);
  EXPECT_FALSE(rows[2].valid);
  EXPECT_FALSE(rows[2].message.empty());
  const auto text = csv(rows);
  EXPECT_NE(text.find(",invalid,0\n"), std::string::npos);
}
