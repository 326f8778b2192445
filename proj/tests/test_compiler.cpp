#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lsg/acceptance.hpp"
#include "lsg/compiler.hpp"
#include "lsg/replab.hpp"

using namespace lsg;

TEST(Compile, SizesFollowClosedForm) {
  // Oracle: 11n + 8c + 1 variables, 8n + m + 7c equations.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto g = acceptance::random_lpc(rng, 5, 3);
    const std::size_t n = g.sys.cols(), m = g.sys.rows(), c = g.triples.size();
    const auto compiled = compile_lpc(g);
    EXPECT_EQ(compiled.sys.cols(), 11 * n + 8 * c + 1);
    EXPECT_EQ(compiled.sys.rows(), 8 * n + m + 7 * c);
    EXPECT_EQ(compiled.names.size(), compiled.sys.cols());
    EXPECT_EQ(size_forecast(g), compiled.sizes);
  }
}

TEST(Compile, NiceEmbeddingIsNiceAndKeepsGenerators) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto g = acceptance::random_lpc(rng, 4, 2);
    const auto nice = nice_embed(g);
    EXPECT_TRUE(is_nice(nice.group));
    for (std::size_t j = 0; j < g.names.size(); ++j) {
      EXPECT_EQ(nice.group.names[j], g.names[j]);
      EXPECT_EQ(nice.map.image(static_cast<GenId>(j)).size(), 1u);
    }
  }
}

TEST(Compile, GadgetRowsHaveWidthAtMostThree) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    const auto g = acceptance::random_lpc(rng, 4, 2);
    const auto out = compile_lpc(g);
    for (std::size_t i = g.sys.rows(); i < out.sys.rows(); ++i) EXPECT_LE(out.sys.row(i).count(), 3u);
  }
}

TEST(Compile, FlagshipSizes) {
  const auto c = build_counterexample();
  EXPECT_EQ(c.sys.cols(), 235u);
  EXPECT_EQ(c.sys.rows(), 184u);
  EXPECT_EQ(c.hnn.sys.cols(), 14u);
  EXPECT_EQ(c.hnn.sys.rows(), 2u);
  EXPECT_EQ(c.hnn.triples.size(), 10u);
  for (const auto& p : c.report.passes) EXPECT_EQ(p.forecast, p.after) << p.pass;
}

TEST(Compile, ClassifyRecoversLpc) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const auto g = acceptance::random_lpc(rng, 4, 2);
    const auto typed = classify(presentation_of(g));
    ASSERT_TRUE(std::holds_alternative<LinearPlusConjugacy>(typed));
    EXPECT_EQ(sizes_of(std::get<LinearPlusConjugacy>(typed)), sizes_of(g));
  }
}

TEST(Compile, ClassifyRecoversExtendedForm) {
  const auto k = k_group().group;
  const auto typed = classify(presentation_of(k));
  ASSERT_TRUE(std::holds_alternative<ExtendedHomogeneous>(typed));
  EXPECT_EQ(sizes_of(std::get<ExtendedHomogeneous>(typed)), sizes_of(k));
}

TEST(Compile, LoweringMatchesForecast) {
  const auto k = k_group().group;
  EXPECT_EQ(sizes_of(lower_ehlpc(k).group), size_forecast(k));
}

TEST(Lifts, ExactRepresentationsLiftExactly) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 40; ++t) {
    const auto g = acceptance::random_lpc(rng, 3, 2);
    const auto phi = random_exact_rep(g, 1 + t % 2, rng);
    ASSERT_LE(defect(phi, presentation_of(g)).epsilon, 1e-9);
    const auto compiled = compile_lpc(g);
    const auto lifted = lift_compile(g, phi);
    EXPECT_EQ(lifted.dim(), 4 * phi.dim());
    EXPECT_LE(defect(lifted, solution_group(compiled.sys, compiled.names)).epsilon, 1e-9);
  }
}

TEST(Lifts, LoweringLiftIsExactOnExactInputs) {
  // The one-dimensional rep x, y, a, b -> 1 satisfies every relation of K.
  const auto k = k_group().group;
  const auto pres = presentation_of(k);
  const auto phi = trivial_rep(pres.names(), 1);
  const auto lowered = lower_ehlpc(k);
  const auto lifted = lift_ehlpc(k, phi);
  EXPECT_LE(defect(lifted, presentation_of(lowered.group)).epsilon, 1e-9);
}

TEST(Compile, DegenerateTriplesSurviveGrpRoundTrip) {
  // x1 x2 x1 = x1, x2 x2 x2 = x1 and x1 x2 x1 = x2 all stay triples.
  const auto sys = BinaryLinearSystem::from_supports(2, {{0, 1}}, {0});
  const LinearPlusConjugacy g{sys, {{0, 1, 0}, {1, 1, 0}, {0, 1, 1}}, {"x1", "x2"}};
  std::stringstream ss;
  write_grp(ss, presentation_of(g));
  const auto typed = classify(read_grp(ss));
  ASSERT_TRUE(std::holds_alternative<LinearPlusConjugacy>(typed));
  EXPECT_EQ(std::get<LinearPlusConjugacy>(typed).triples, g.triples);
}
