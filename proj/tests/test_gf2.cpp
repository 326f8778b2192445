#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lsg/acceptance.hpp"
#include "lsg/error.hpp"
#include "lsg/gf2.hpp"

using namespace lsg;

namespace {

// Exhaustive oracle: is there any x in GF(2)^n with Ax = b?
bool brute_solvable(const BinaryLinearSystem& sys) {
  const std::size_t n = sys.cols();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < sys.rows() && ok; ++i) {
      int parity = 0;
      for (std::size_t j = 0; j < n; ++j) parity ^= sys.row(i).test(j) && ((mask >> j) & 1U);
      ok = parity == static_cast<int>(sys.rhs(i));
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(BitRow, SetFlipCount) {
  BitRow r(130);
  r.set(0);
  r.set(64);
  r.set(129);
  EXPECT_EQ(r.count(), 3u);
  EXPECT_EQ(r.find_first(), 0u);
  r.flip(0);
  EXPECT_EQ(r.find_first(), 64u);
  EXPECT_EQ(r.ones(), (std::vector<std::size_t>{64, 129}));
  BitRow s(130);
  s.set(129);
  EXPECT_TRUE(r.dot(s));
  r ^= s;
  EXPECT_EQ(r.ones(), (std::vector<std::size_t>{64}));
  EXPECT_FALSE(r.dot(s));
  EXPECT_EQ(BitRow(5).find_first(), 5u);
}

TEST(Gf2Solve, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 400; ++t) {
    const auto sys = acceptance::random_system(rng, 1 + t % 7, 1 + t % 9);
    const auto x = gf2_solve(sys);
    EXPECT_EQ(x.has_value(), brute_solvable(sys));
    if (x) EXPECT_TRUE(sys.satisfied_by(*x));
  }
}

TEST(Gf2Solve, MagicSquareIsInconsistent) {
  const auto sys = BinaryLinearSystem::from_supports(
      9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}}, {0, 0, 0, 0, 0, 1});
  EXPECT_FALSE(gf2_solve(sys).has_value());
}

TEST(SatisfyingAssignments, CountAndParity) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto sys = acceptance::random_system(rng, 4, 6);
    for (std::size_t i = 0; i < sys.rows(); ++i) {
      const auto support = row_support(sys, i);
      const auto sat = satisfying_assignments(sys, i);
      ASSERT_EQ(sat.size(), std::size_t{1} << (support.size() - 1));
      for (const auto& a : sat) {
        int parity = 0;
        for (auto v : a) parity ^= v;
        EXPECT_EQ(parity, static_cast<int>(sys.rhs(i)));
      }
      for (std::size_t k = 1; k < sat.size(); ++k) EXPECT_LT(sat[k - 1], sat[k]);
    }
  }
}

TEST(Lsys, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto sys = acceptance::random_system(rng, 1 + t % 5, 2 + t % 70);
    std::stringstream ss;
    write_lsys(ss, sys);
    EXPECT_EQ(read_lsys(ss), sys);
  }
}

TEST(Lsys, FormatIsExact) {
  const auto sys = BinaryLinearSystem::from_supports(3, {{0, 2}, {1}}, {1, 0});
  std::stringstream ss;
  write_lsys(ss, sys);
  EXPECT_EQ(ss.str(), "2 3\n101\n010\n10\n");
}

TEST(Lsys, MalformedInputThrows) {
  for (const char* text : {"", "2 3\n101\n", "1 2\n1x\n1\n", "1 2\n00\n0\n", "1 2\n11\n11\n"}) {
    std::stringstream ss(text);
    EXPECT_THROW(read_lsys(ss), ValidationError) << text;
  }
}
