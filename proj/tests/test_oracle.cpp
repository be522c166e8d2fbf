#include <gtest/gtest.h>

#include <algorithm>

#include "cmtk/registry.hpp"
#include "scalar_oracle.hpp"

namespace {

TEST(ScalarOracle, CoversEveryRegisteredFamily) {
  auto covered = oracle::covered_families();
  std::vector<std::string> registered;
  for (const auto& f : cmtk::registry()) registered.push_back(f.spec.id);
  std::sort(covered.begin(), covered.end());
  std::sort(registered.begin(), registered.end());
  EXPECT_EQ(covered, registered);
}

class ScalarOracleFamily : public ::testing::TestWithParam<std::string> {};

TEST_P(ScalarOracleFamily, MatchesDirectArithmetic) {
  const auto o = oracle::check_family(GetParam(), 1000, 20240101, 1e-12);
  EXPECT_EQ(o.tuples, 1000);
  EXPECT_EQ(o.mismatches, 0) << o.first_failure << " (worst " << o.worst << ")";
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, ScalarOracleFamily,
                         ::testing::ValuesIn(oracle::covered_families()),
                         [](const auto& info) { return info.param; });

}  // namespace
