#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "lsg/gf2.hpp"
#include "lsg/presentation.hpp"

namespace lsg::acceptance {

inline constexpr std::uint64_t kDefaultSeed = 20161018;

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// "[PASS] <id> <name>: <detail>", followed by " (<seconds> s)" when `timing` is set.
std::string format(const Result& r, bool timing = true);

Result flagship_sizes();
Result magic_square();
Result stability_bounds(std::uint64_t seed, std::size_t trials = 1000);
Result lift_certification(std::uint64_t seed, std::size_t trials = 500);
Result finite_triviality();
Result amplification(std::uint64_t seed);
Result word_machinery(std::uint64_t seed);
Result bias_identity(std::uint64_t seed);

/// Runs the eight criteria in order, printing one line each to `log` as it finishes.
std::vector<Result> run_all(std::uint64_t seed, std::ostream& log, bool timing = true);

/// m x n system with nonempty random rows and random right-hand side.
BinaryLinearSystem random_system(std::mt19937_64& rng, std::size_t m, std::size_t n);
/// Random LPC with 1..max_n variables, 1..3 rows and 0..max_c triples.
LinearPlusConjugacy random_lpc(std::mt19937_64& rng, std::size_t max_n, std::size_t max_c);

}  // namespace lsg::acceptance
