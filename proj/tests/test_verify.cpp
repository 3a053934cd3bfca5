#include <gtest/gtest.h>

#include "sigsym/verify.hpp"

using namespace sigsym;

TEST(Verify, SmallRunPasses) {
  VerifyOptions o;
  o.samples = 4;
  o.max_n = 3;
  o.exhaustive_n = 2;
  o.search_n = 3;
  const Report r = run_verify(o);
  EXPECT_EQ(r.checks.size(), all_checks().size());
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.ok()) << c.module << "/" << c.name << ": " << c.first_failure;
    EXPECT_GT(c.cases, 0u) << c.module << "/" << c.name;
  }
}

TEST(Verify, ThreadCountDoesNotChangeTallies) {
  VerifyOptions o;
  o.samples = 6;
  o.max_n = 3;
  o.filter = "matrix/";
  const Report one = run_verify(o);
  o.threads = 3;
  const Report three = run_verify(o);
  ASSERT_EQ(one.checks.size(), three.checks.size());
  for (std::size_t i = 0; i < one.checks.size(); ++i) EXPECT_EQ(one.checks[i].cases, three.checks[i].cases);
}

TEST(Verify, FieldOfOrder) {
  EXPECT_EQ(field_of_order(9), Field::canonical(3, 2));
  EXPECT_EQ(field_of_order(7), Field::prime(7));
  EXPECT_THROW(field_of_order(6), Error);
  EXPECT_THROW(field_of_order(1), Error);
}
