#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lsg/compiler.hpp"
#include "lsg/linalg.hpp"
#include "lsg/presentation.hpp"

namespace lsg {

inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kExactTol = 1e-9;
inline constexpr double kClusterTol = 1e-8;
inline constexpr Eigen::Index kDefaultDimensionCap = 4096;

/// A unitary matrix for each named generator, all of one dimension.
class ApproxRep {
 public:
  ApproxRep() = default;
  explicit ApproxRep(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  /// Adds or replaces an image; checks shape and (unless told otherwise) unitarity.
  void set(const std::string& name, CMatrix image, bool check_unitary = true);
  bool has(const std::string& name) const;
  const CMatrix& at(const std::string& name) const;
  const CMatrix& image(std::size_t k) const { return images_[k]; }

 private:
  Eigen::Index dim_ = 0;
  std::vector<std::string> names_;
  std::vector<CMatrix> images_;
};

/// Images in the generator order of `pres`. A missing J is taken to be -I.
std::vector<CMatrix> align(const ApproxRep& rep, const Presentation& pres);

CMatrix evaluate(const std::vector<CMatrix>& images, const GroupWord& w);
CMatrix evaluate(const ApproxRep& rep, const Presentation& pres, const GroupWord& w);

struct DefectReport {
  std::vector<std::string> relations;
  std::vector<double> defects;
  double epsilon = 0.0;

  std::string to_json() const;
};

DefectReport defect(const ApproxRep& rep, const Presentation& pres);
double defect_epsilon(const std::vector<CMatrix>& images, const Presentation& pres);

// ---------------------------------------------------------------------------
// Stability

inline const double kInvolutionConstant = 1.0 + 1.0 / std::sqrt(2.0);          // C1
inline const double kCommutingConstant = 1.0 + 1.0 / (2.0 * std::sqrt(2.0));   // C0

/// Z with Z^2 = I commuting with every X_i, close to Y. `xs` are commuting
/// involutions; Y is an involution commuting with all but the last of them.
CMatrix round_commuting(const std::vector<CMatrix>& xs, const CMatrix& y);

/// Certified constant for the abelian rounding on k generators.
double abelian_constant(std::size_t k);
/// The closed form printed with the lemma, kept for comparison.
double abelian_constant_as_printed(std::size_t k);

/// <x_1..x_k : x_i^2, [x_i, x_j]>.
Presentation z2k_presentation(std::size_t k);

struct AbelianRounding {
  std::vector<CMatrix> images;
  double input_epsilon = 0.0;
  double constant = 0.0;  // certified: ||psi(x_i) - phi(x_i)|| <= constant * input_epsilon
};

AbelianRounding stabilize_abelian(const std::vector<CMatrix>& images);

struct JSplit {
  ApproxRep rep;
  double rounded_epsilon = 0.0;  // defect after rounding, before splitting
  double epsilon = 0.0;          // measured defect of the returned block
  double certified = 0.0;        // 4 * rounded_epsilon / delta
};

/// Rounds involutary generators and J, makes them commute with J, and keeps
/// the -1 eigenspace of J.
JSplit split_on_j(const ApproxRep& rep, const Presentation& pres, double delta);

// ---------------------------------------------------------------------------
// Constructions

ApproxRep direct_sum(const ApproxRep& a, const ApproxRep& b);
ApproxRep tensor(const ApproxRep& a, const ApproxRep& b);
ApproxRep trivial_rep(const std::vector<std::string>& names, Eigen::Index dim);
/// U rep U*.
ApproxRep conjugated(const ApproxRep& rep, const CMatrix& u);

/// Smallest k with (1 - delta^2/4)^k <= eps^2/4.
unsigned tensor_power_exponent(double delta, double eps);

/// tr(X) / dim.
double normalized_trace(const CMatrix& x);

struct Amplified {
  ApproxRep rep;        // generators of G plus t and J (and Z = J a if requested)
  Presentation hat;     // <G, t : t^2, t a t = J a>_Z2
  unsigned k = 0;
  double trace = 0.0;   // normalized trace of the padded, powered image of a
  double input_epsilon = 0.0;
  double epsilon = 0.0;     // measured defect on `hat`
  double certified = 0.0;   // max(k * input_epsilon, 2 sqrt(trace))
};

Amplified amplify(const ApproxRep& rep, const Presentation& g, const std::string& a, double delta, double eps,
                  Eigen::Index cap = kDefaultDimensionCap, const std::string& z_name = "");

/// Representations of nice_embed(g), gadgetize(nice), compile_lpc(g) and lower_ehlpc(g).
ApproxRep lift_nice(const LinearPlusConjugacy& g, const ApproxRep& phi);
ApproxRep lift_gadget(const LinearPlusConjugacy& nice, const ApproxRep& phi);
ApproxRep lift_compile(const LinearPlusConjugacy& g, const ApproxRep& phi);
ApproxRep lift_ehlpc(const ExtendedHomogeneous& g, const ApproxRep& phi);

inline constexpr double kNiceConstant = 1.0;
inline constexpr double kGadgetConstant = 15.0;
inline constexpr double kCompileConstant = 75.0;

/// The rep sending each ancilla of an internalization to its definition.
ApproxRep extend_internalization(const ApproxRep& rep, const Internalization& in);

// ---------------------------------------------------------------------------
// Finite images

using Permutation = std::vector<std::uint8_t>;

struct Homomorphism {
  std::vector<Permutation> images;  // by generator id
};

/// All homomorphisms into S_k, by backtracking over generator images.
std::vector<Homomorphism> enumerate_homs(const Presentation& pres, unsigned degree,
                                         double budget = 1e9);

bool is_identity(const Permutation& p);
std::string to_cycle_string(const Permutation& p);

// ---------------------------------------------------------------------------
// Fixed representations and random sampling

/// Magic-square system: rows {1,2,3},{4,5,6},{7,8,9}, columns {1,4,7},{2,5,8},{3,6,9};
/// the last column has b = 1.
BinaryLinearSystem magic_square_system();
ApproxRep pauli_magic_rep();

CMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng);
/// Hermitian H with ||H|| = 1 (normalized HS norm).
CMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng);
/// exp(i s H) for Hermitian H.
CMatrix expi(const CMatrix& h, double s);
/// U exp(i s H) for a random Hermitian H of unit norm.
CMatrix perturb(const CMatrix& u, double scale, std::mt19937_64& rng);
ApproxRep perturb(const ApproxRep& rep, double scale, std::mt19937_64& rng);

/// Exact representations of an LPC built from one-dimensional sign
/// representations (J -> -1 when b admits it, +1 otherwise), summed and
/// conjugated by a random unitary. Falls back to the trivial sign rep.
ApproxRep random_exact_rep(const LinearPlusConjugacy& g, Eigen::Index blocks, std::mt19937_64& rng);

/// Commuting involutions conjugated by a random unitary.
std::vector<CMatrix> random_commuting_involutions(std::size_t k, Eigen::Index d, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Files

ApproxRep read_rep_json(const std::string& text);
std::string rep_json(const ApproxRep& rep);
ApproxRep load_rep(const std::string& path);
void save_rep(const std::string& path, const ApproxRep& rep);

}  // namespace lsg
