#include <gtest/gtest.h>

#include "clustercrypt/selftest.hpp"

using namespace clustercrypt;

namespace {

// Mutation rule with the sign of row and column k left unchanged.
ExchangeMatrix sign_bug(const ExchangeMatrix& b, int k) {
  auto rows = matrix_mutate(b, k).rows();
  for (int i = 0; i < b.rank(); ++i) {
    rows[i][k] = b(i, k);
    rows[k][i] = b(k, i);
  }
  return ExchangeMatrix::from_rows(rows);
}

const CheckResult& find(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Selftest, PassesOnCorrectBuild) {
  SelftestOptions opts;
  opts.involution_trials = 100;
  opts.roundtrip_trials = 100;
  const auto rs = run_selftest(opts);
  for (const auto& r : rs) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  EXPECT_TRUE(all_passed(rs));
  EXPECT_EQ(rs.size(), 5U);
}

TEST(Selftest, InjectedSignBugFailsInvolution) {
  SelftestOptions opts;
  opts.involution_trials = 100;
  opts.roundtrip_trials = 10;
  opts.mutation = sign_bug;
  const auto rs = run_selftest(opts);
  EXPECT_FALSE(all_passed(rs));
  const auto& inv = find(rs, "involution");
  EXPECT_FALSE(inv.passed);
  EXPECT_NE(inv.detail.find("matrix failures"), std::string::npos);
  EXPECT_TRUE(find(rs, "example-1").passed);
}

TEST(Selftest, ExampleReplay) {
  const auto one = replay(worked_example_one());
  EXPECT_TRUE(one.ok());
  EXPECT_EQ(one.plaintext, "6 (F)");
  const auto two = replay(worked_example_two());
  EXPECT_TRUE(two.ok());
  EXPECT_EQ(two.values[3], "12799379480831");
}

TEST(Selftest, SuitesAreDeterministic) {
  const auto a = run_roundtrip_suite(50, 7);
  const auto b = run_roundtrip_suite(50, 7);
  EXPECT_EQ(a.encrypted, b.encrypted);
  EXPECT_EQ(a.encryption_failures, b.encryption_failures);
  EXPECT_TRUE(a.ok());
  const auto inv = run_involution_suite(50, 7);
  EXPECT_TRUE(inv.ok());
  EXPECT_GT(inv.seed_checks, 0);
}

TEST(Selftest, RandomMatricesAreFiniteType) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) EXPECT_TRUE(is_finite_type(random_finite_type_matrix(rng, 2, 8)).finite());
}
