#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lsg/error.hpp"
#include "lsg/presentation.hpp"

using namespace lsg;

namespace {

GroupWord random_word(std::mt19937_64& rng, GenId gens, std::size_t len) {
  GroupWord w;
  for (std::size_t k = 0; k < len; ++k) {
    w.letters.push_back({static_cast<GenId>(rng() % gens), rng() % 2 ? 1 : -1});
  }
  return w;
}

bool is_reduced(const GroupWord& w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w.letters[k].gen == w.letters[k - 1].gen && w.letters[k].exp == -w.letters[k - 1].exp) return false;
  }
  return true;
}

Presentation parse_grp(const std::string& text) {
  std::stringstream ss(text);
  return read_grp(ss);
}

}  // namespace

TEST(Words, ReductionProperties) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const auto w = random_word(rng, 3, t % 20);
    const auto r = reduce(w);
    EXPECT_TRUE(is_reduced(r));
    EXPECT_EQ(reduce(r), r);
    EXPECT_TRUE((w * inverse(w)).empty());
    EXPECT_TRUE((power(w, 3) * power(w, -3)).empty());
    EXPECT_EQ(inverse(inverse(r)), r);
  }
}

TEST(Words, CommutatorAndConjugate) {
  const auto x = GroupWord::gen(0);
  const auto y = GroupWord::gen(1);
  EXPECT_EQ(commutator(x, y), (GroupWord{{0, 1}, {1, 1}, {0, -1}, {1, -1}}));
  EXPECT_EQ(conjugate(x, y), (GroupWord{{1, 1}, {0, 1}, {1, -1}}));
  EXPECT_TRUE(commutator(x, x).empty());
}

TEST(Words, ParsePrintRoundTrip) {
  const auto pres = parse_grp("gen a\ngen b inv\ngen c\n");
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const auto w = reduce(random_word(rng, 3, t % 12));
    EXPECT_EQ(parse_word(to_string(w, pres), pres), w);
  }
  EXPECT_EQ(parse_word("a^3", pres), power(GroupWord::gen(0), 3));
  EXPECT_TRUE(parse_word("e", pres).empty());
  EXPECT_THROW(parse_word("d", pres), ValidationError);
}

TEST(Grp, RoundTripKeepsRelations) {
  const auto pres = parse_grp("gen x inv\ngen y inv\ngen J inv\nrel x y x^-1 y^-1\nrel x y J\n");
  EXPECT_TRUE(pres.over_z2());
  std::stringstream ss;
  write_grp(ss, pres);
  const auto again = read_grp(ss);
  EXPECT_EQ(again.names(), pres.names());
  ASSERT_EQ(again.relations().size(), pres.relations().size());
  for (std::size_t k = 0; k < pres.relations().size(); ++k) {
    EXPECT_EQ(again.relations()[k].word, pres.relations()[k].word);
  }
}

TEST(Grp, MalformedInputThrows) {
  EXPECT_THROW(parse_grp("gen a\ngen a\n"), ValidationError);
  EXPECT_THROW(parse_grp("gen a\nrel b\n"), ValidationError);
  EXPECT_THROW(parse_grp("generator a\n"), ValidationError);
}

TEST(SolutionGroup, RelationCounts) {
  // Oracle: n squares, m products, one commutator per pair sharing a row, J^2 and n [J, x] as central.
  const auto sys = BinaryLinearSystem::from_supports(4, {{0, 1, 2}, {2, 3}}, {1, 0});
  const auto pres = solution_group(sys);
  EXPECT_EQ(pres.generator_count(), 5u);
  EXPECT_EQ(pres.count(RelationKind::Linear), 2u);
  EXPECT_EQ(pres.count(RelationKind::Commutation), 3u + 1u);
  EXPECT_EQ(pres.count(RelationKind::Central), 1u + 4u);
  EXPECT_EQ(pres.count(RelationKind::Involution), 4u);
}

TEST(WordTree, FlattensToBuildW) {
  for (unsigned m = 0; m <= 4; ++m) {
    EXPECT_EQ(build_w_expr(m, 0, 1, 2).flatten(), build_w(m, 0, 1, 2)) << m;
  }
}

TEST(WordTree, StructuredInternalizationUsesFourAncillasPerLevel) {
  Presentation pres;
  const auto z1 = pres.add_generator("z1", true);
  const auto a = pres.add_generator("a", true);
  const auto ap = pres.add_generator("ap", true);
  for (unsigned m = 1; m <= 4; ++m) {
    const auto in = internalize_expr(pres, build_w_expr(m, z1, a, ap), {z1}, {z1, a, ap});
    EXPECT_EQ(in.ancillas.size(), 4u * m);
    EXPECT_EQ(in.definitions.size(), in.ancillas.size());
  }
}

TEST(KGroup, Shape) {
  const auto k = k_group();
  EXPECT_EQ(k.group.num_noninvolutary(), 2u);
  EXPECT_EQ(k.group.names[k.designated], "a");
}
