#include <gtest/gtest.h>

#include <algorithm>

#include "dbubble.hpp"

// Every registered property suite, one test per suite.

namespace {

class PropertySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(PropertySuite, AllPropertiesHold) {
  for (const auto& r : dbubble::verify::run(GetParam())) {
    EXPECT_TRUE(r.passed) << r.suite << "/" << r.name << ": " << r.detail;
  }
}

INSTANTIATE_TEST_SUITE_P(Suites, PropertySuite,
                         ::testing::Values("measure", "cgc-ode", "candidates", "equilibrium", "transforms"),
                         [](const auto& info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(SuiteRegistry, UnknownSuiteIsRejected) {
  EXPECT_THROW(dbubble::verify::run("nope"), dbubble::ValidationError);
}

}  // namespace
