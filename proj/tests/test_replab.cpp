#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lsg/linalg.hpp"
#include "lsg/presentation.hpp"
#include "lsg/replab.hpp"

using namespace lsg;

namespace {

constexpr double kTol = 1e-9;

// sqrt(tr(M* M) / d) by explicit summation.
double hs_oracle(const CMatrix& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s / static_cast<double>(m.rows()));
}

CMatrix random_involution(Eigen::Index d, std::mt19937_64& rng) {
  const auto u = random_unitary(d, rng);
  Eigen::VectorXcd signs(d);
  for (Eigen::Index i = 0; i < d; ++i) signs(i) = (rng() % 2) ? 1.0 : -1.0;
  return u * signs.asDiagonal() * u.adjoint();
}

bool is_involution(const CMatrix& x) { return involution_defect(x) <= kTol && hs_distance(x, x.adjoint()) <= kTol; }

using Perm = std::vector<int>;

Perm mul(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

std::vector<Perm> all_perms(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Presentation parse_grp(const std::string& text) {
  std::stringstream ss(text);
  return read_grp(ss);
}

}  // namespace

TEST(Linalg, NormMatchesTraceFormula) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index d = 1 + t % 8;
    const CMatrix m = CMatrix::Random(d, d);
    EXPECT_NEAR(hs_norm(m), hs_oracle(m), 1e-12);
    EXPECT_NEAR(hs_norm(random_unitary(d, rng)), 1.0, 1e-12);
  }
}

TEST(Linalg, JointEigenspacesDiagonalize) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index d = 2 + t % 8;
    const auto xs = random_commuting_involutions(3, d, rng);
    const auto blocks = joint_eigenspaces(xs, d);
    Eigen::Index total = 0;
    for (const auto& q : blocks) {
      total += q.cols();
      for (const auto& x : xs) {
        const CMatrix r = q.adjoint() * x * q;
        const double s = std::real(r(0, 0));
        EXPECT_LE((r - s * CMatrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff(), 1e-8);
      }
    }
    EXPECT_EQ(total, d);
  }
}

TEST(Stability, InvolutionRoundingBound) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 500; ++t) {
    const Eigen::Index d = 1 + t % 16;
    const auto x = perturb(random_involution(d, rng), 0.01 * (1 + t % 10), rng);
    const auto r = nearest_involution(x);
    EXPECT_TRUE(is_involution(r));
    EXPECT_LE(hs_distance(r, x), kInvolutionConstant * involution_defect(x) + 1e-12);
  }
}

TEST(Stability, CommutingRoundingBound) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index d = 2 + t % 8;
    const auto xs = random_commuting_involutions(1, d, rng);
    const auto y = random_involution(d, rng);
    const auto z = round_commuting(xs, y);
    EXPECT_TRUE(is_involution(z));
    EXPECT_LE(commutator_norm(xs[0], z), kTol);
    EXPECT_LE(hs_distance(z, y), kCommutingConstant * commutator_norm(xs[0], y) + 1e-12);
  }
}

TEST(Stability, AbelianRoundingBound) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + t % 3;
    const Eigen::Index d = 2 + t % 8;
    auto images = random_commuting_involutions(k, d, rng);
    for (auto& x : images) x = perturb(x, 0.05, rng);
    const auto r = stabilize_abelian(images);
    EXPECT_NEAR(r.input_epsilon, defect_epsilon(images, z2k_presentation(k)), 1e-12);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_TRUE(is_involution(r.images[i]));
      EXPECT_LE(hs_distance(r.images[i], images[i]), r.constant * r.input_epsilon + 1e-12);
      for (std::size_t j = 0; j < i; ++j) EXPECT_LE(commutator_norm(r.images[i], r.images[j]), kTol);
    }
  }
}

TEST(Stability, AbelianConstantGrowth) {
  EXPECT_NEAR(abelian_constant(1), kInvolutionConstant, 1e-12);
  for (std::size_t k = 1; k < 6; ++k) EXPECT_LT(abelian_constant(k), abelian_constant(k + 1));
}

TEST(Amplification, TensorPowerExponentIsMinimal) {
  for (double delta : {0.5, 1.0, 1.5, 2.0}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      unsigned k = 0;
      while (std::pow(1.0 - delta * delta / 4.0, k) > eps * eps / 4.0) ++k;
      EXPECT_EQ(tensor_power_exponent(delta, eps), k) << delta << ' ' << eps;
    }
  }
  EXPECT_EQ(tensor_power_exponent(1.0, 0.5), 10u);
}

TEST(Amplification, TraceIsMultiplicative) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = random_involution(2 + t % 3, rng);
    const CMatrix b = random_involution(2, rng);
    EXPECT_NEAR(normalized_trace(kron(a, b)), normalized_trace(a) * normalized_trace(b), 1e-12);
  }
}

TEST(Constructions, DirectSumAndTensorKeepExactness) {
  const auto sys = magic_square_system();
  const auto pres = solution_group(sys);
  const auto rep = pauli_magic_rep();
  ASSERT_LE(defect(rep, pres).epsilon, kTol);
  EXPECT_LE(defect(direct_sum(rep, rep), pres).epsilon, kTol);
  std::mt19937_64 rng(59);
  EXPECT_LE(defect(conjugated(rep, random_unitary(rep.dim(), rng)), pres).epsilon, kTol);
}

TEST(Constructions, RepJsonRoundTrip) {
  std::mt19937_64 rng(61);
  const auto rep = perturb(pauli_magic_rep(), 0.1, rng);
  const auto again = read_rep_json(rep_json(rep));
  ASSERT_EQ(again.names(), rep.names());
  for (const auto& n : rep.names()) EXPECT_LE((again.at(n) - rep.at(n)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Homs, CountsMatchPermutationSearch) {
  // Oracles: |{x : x^2 = e}| and |{(a, b) : a^2 = b^2 = e, ab = ba}| in S_k.
  const auto z2 = parse_grp("gen x inv\n");
  const auto klein = parse_grp("gen a inv\ngen b inv\nrel a b a^-1 b^-1\n");
  const auto free1 = parse_grp("gen x\n");
  for (int k = 1; k <= 5; ++k) {
    const auto perms = all_perms(k);
    Perm id(k);
    std::iota(id.begin(), id.end(), 0);
    std::size_t invol = 0, pairs = 0;
    for (const auto& p : perms) invol += mul(p, p) == id;
    for (const auto& p : perms)
      for (const auto& q : perms) pairs += mul(p, p) == id && mul(q, q) == id && mul(p, q) == mul(q, p);
    EXPECT_EQ(enumerate_homs(z2, k).size(), invol) << k;
    EXPECT_EQ(enumerate_homs(klein, k).size(), pairs) << k;
    EXPECT_EQ(enumerate_homs(free1, k).size(), perms.size()) << k;
  }
}

TEST(Homs, GuardsAndFormatting) {
  const auto free3 = parse_grp("gen x\ngen y\ngen z\n");
  EXPECT_THROW(enumerate_homs(free3, 8, 1e6), FeasibilityError);
  EXPECT_THROW(enumerate_homs(free3, 0), ValidationError);
  EXPECT_EQ(to_cycle_string(Permutation{0, 1, 2}), "()");
  EXPECT_EQ(to_cycle_string(Permutation{1, 2, 0, 3}), "(1 2 3)");
  EXPECT_TRUE(is_identity(Permutation{0, 1}));
}
