#include <random>

#include <gtest/gtest.h>

#include "lsg/acceptance.hpp"
#include "lsg/games.hpp"

using namespace lsg;

namespace {

// Exhaustive oracle over all x in GF(2)^n.
bool brute_solvable(const BinaryLinearSystem& sys) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sys.cols()); ++mask) {
    BitRow x(sys.cols());
    for (std::size_t j = 0; j < sys.cols(); ++j) x.set(j, (mask >> j) & 1U);
    if (sys.satisfied_by(x)) return true;
  }
  return false;
}

// (1/d) sum_{kl} A_kl B_kl, i.e. (1/d) tr(A^T B).
double trace_oracle(const CMatrix& a, const CMatrix& b) {
  Complex s = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k)
    for (Eigen::Index l = 0; l < a.cols(); ++l) s += a(k, l) * b(k, l);
  return std::real(s) / static_cast<double>(a.rows());
}

}  // namespace

TEST(Game, MagicSquarePauliStrategyWinsEveryPair) {
  const auto sys = magic_square_system();
  const auto game = game_of(sys);
  EXPECT_FALSE(classical_perfect(sys));
  const auto s = strategy_from_rep(pauli_magic_rep(), sys);
  validate(s, game);
  const auto stats = win_stats(s, game);
  ASSERT_EQ(stats.size(), 18u);
  for (const auto& st : stats) EXPECT_NEAR(st.probability, 1.0, kStrategyTol);
}

TEST(Game, ClassicalPerfectMatchesExhaustiveSearch) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 200; ++t) {
    const auto sys = acceptance::random_system(rng, 1 + t % 4, 1 + t % 6);
    const bool expected = brute_solvable(sys);
    EXPECT_EQ(classical_perfect(sys), expected);
    const auto exhaustive = classical_perfect_exhaustive(sys);
    if (exhaustive) EXPECT_EQ(*exhaustive, expected);
  }
}

TEST(Game, PredicateChecksConsistency) {
  const auto game = game_of(BinaryLinearSystem::from_supports(3, {{0, 2}}, {1}));
  EXPECT_TRUE(game.predicate(0, {0, 1}, 0, 0));
  EXPECT_FALSE(game.predicate(0, {0, 1}, 2, 0));
  EXPECT_TRUE(game.predicate(0, {0, 1}, 1, 1));
  EXPECT_FALSE(game.position(0, 1).has_value());
}

TEST(Strategy, BiasIdentityAndNormalization) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 40; ++t) {
    const auto game = game_of(acceptance::random_system(rng, 1 + t % 3, 2 + t % 4));
    const auto s = random_strategy(game, 1 + t % 8, rng);
    validate(s, game);
    const auto table = correlation(s, game);
    for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
      for (std::size_t j = 0; j < game.bob_inputs(); ++j) {
        double total = 0.0;
        for (std::size_t a = 0; a < game.alice_outputs[i].size(); ++a) {
          for (int b = 0; b < 2; ++b) {
            EXPECT_GE(table.at(i, j, a, b), -1e-12);
            total += table.at(i, j, a, b);
          }
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
      }
    }
    for (const auto& st : win_stats(s, game)) {
      const auto k = *game.position(st.i, st.j);
      EXPECT_NEAR(st.bias, trace_oracle(s.y[st.i][k], s.x[st.j]), 1e-9);
      EXPECT_NEAR(st.bias, st.bias_from_correlation, 1e-9);
    }
  }
}

TEST(Strategy, MeasurementFormRoundTrip) {
  std::mt19937_64 rng(73);
  const auto game = game_of(magic_square_system());
  const auto s = strategy_from_rep(pauli_magic_rep(), game.sys);
  const auto m = observables_to_measurements(s, game);
  validate(m, game);
  const auto back = measurements_to_observables(m, game);
  for (std::size_t j = 0; j < s.x.size(); ++j) EXPECT_LE(hs_distance(back.x[j], s.x[j]), 1e-12);
  const auto a = win_stats(s, game);
  const auto b = win_stats(m, game);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k].probability, b[k].probability, 1e-12);
}

TEST(Strategy, JsonRoundTrip) {
  std::mt19937_64 rng(79);
  const auto game = game_of(acceptance::random_system(rng, 3, 5));
  const auto s = random_strategy(game, 4, rng);
  const auto again = read_strategy_json(strategy_json(s));
  ASSERT_EQ(again.dim, s.dim);
  for (std::size_t j = 0; j < s.x.size(); ++j) EXPECT_LE((again.x[j] - s.x[j]).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Strategy, RejectsRepWithoutCentralSign) {
  auto rep = pauli_magic_rep();
  rep.set("J", CMatrix::Identity(rep.dim(), rep.dim()));
  EXPECT_THROW(strategy_from_rep(rep, magic_square_system()), ValidationError);
}

TEST(Strategy, PerturbedRepsLoseLittleBias) {
  std::mt19937_64 rng(83);
  const auto sys = magic_square_system();
  const auto pres = solution_group(sys);
  const auto game = game_of(sys);
  const auto exact = pauli_magic_rep();
  std::vector<double> worst;
  for (double scale : {0.01, 0.05}) {
    double deficit = 0.0;
    for (int t = 0; t < 20; ++t) {
      ApproxRep approx(exact.dim());
      for (const auto& name : exact.names()) {
        approx.set(name, name == "J" ? exact.at(name) : perturb(exact.at(name), scale, rng));
      }
      const auto s = strategy_from_rep(split_on_j(approx, pres, 1.0).rep, sys);
      validate(s, game);
      for (const auto& st : win_stats(s, game)) deficit = std::max(deficit, 1.0 - st.bias);
    }
    worst.push_back(deficit);
  }
  EXPECT_LT(worst[0], worst[1]);
  EXPECT_LT(worst[0], 0.01);
}
