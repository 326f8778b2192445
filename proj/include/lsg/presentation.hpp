#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lsg/gf2.hpp"

namespace lsg {

/// Index of a generator within its owning presentation.
using GenId = std::uint32_t;

struct Letter {
  GenId gen;
  int exp;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// An element of a free group, stored as a sequence of letters.
struct GroupWord {
  std::vector<Letter> letters;

  GroupWord() = default;
  GroupWord(std::initializer_list<Letter> l) : letters(l) {}
  explicit GroupWord(std::vector<Letter> l) : letters(std::move(l)) {}

  static GroupWord gen(GenId g, int exp = 1) { return GroupWord{Letter{g, exp}}; }

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

/// Free reduction: cancels adjacent g g^-1 pairs until none remain.
GroupWord reduce(const GroupWord& w);
GroupWord inverse(const GroupWord& w);
/// Concatenation followed by free reduction.
GroupWord operator*(const GroupWord& u, const GroupWord& v);
/// w^k for any integer k (reduced).
GroupWord power(const GroupWord& w, int k);
/// [x,y] = x y x^-1 y^-1.
GroupWord commutator(const GroupWord& x, const GroupWord& y);
/// x^y = y x y^-1.
GroupWord conjugate(const GroupWord& x, const GroupWord& y);

enum class RelationKind {
  Involution,   // s^2
  Linear,       // product over an equation's support, times J^-b
  Commutation,  // [s, t]
  Conjugacy,    // x_i x_j x_i x_k^-1
  Action,       // y x_j y^-1 x_k^-1
  Power,        // y_i y_j y_i^-1 y_j^-L
  Central,      // J^2 and [J, s]
  Other,
};

std::string_view to_string(RelationKind kind);

struct Relation {
  GroupWord word;
  RelationKind kind = RelationKind::Other;
};

/// A finite presentation <S : R>. Generators flagged involutary carry an
/// s^2 relation; a presentation over Z2 additionally carries a distinguished
/// generator J with J^2 and [J, s] for every other generator, each exactly once.
class Presentation {
 public:
  Presentation() = default;

  /// Adds a generator; involutary generators get s^2 = e, and over Z2 every
  /// new generator gets [J, s] = e.
  GenId add_generator(std::string name, bool involutary);
  void add_relation(GroupWord word, RelationKind kind);

  /// Adds J with its central-involution relations; idempotent.
  void close_over_z2();

  bool over_z2() const { return j_.has_value(); }
  std::optional<GenId> j() const { return j_; }
  /// Generator J, throwing if the presentation is not over Z2.
  GenId require_j() const;

  std::size_t generator_count() const { return names_.size(); }
  const std::string& name(GenId g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }
  bool involutary(GenId g) const { return involutary_.at(g) != 0; }

  std::optional<GenId> find(std::string_view name) const;
  GenId id(std::string_view name) const;

  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t count(RelationKind kind) const;
  /// Length of the longest relation (the constant M of the small-changes bound).
  std::size_t max_relation_length() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> involutary_;
  std::unordered_map<std::string, GenId> index_;
  std::vector<Relation> relations_;
  std::optional<GenId> j_;
};

/// Text form with tokens `name` and `name^-1`, space separated; "e" when empty.
std::string to_string(const GroupWord& w, const Presentation& pres);
/// Accepts `name`, `name^-1`, `name^k`; `e` denotes the empty word.
GroupWord parse_word(std::string_view text, const Presentation& pres);

/// Lift of a homomorphism between free groups: every source generator is sent
/// to a word over the target generators.
struct GeneratorMap {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<GroupWord> images;  // indexed by source GenId, words over target ids

  const GroupWord& image(GenId g) const;
};

GroupWord apply_map(const GeneratorMap& map, const GroupWord& w);
/// second after first.
GeneratorMap compose(const GeneratorMap& first, const GeneratorMap& second);
/// Sends each source generator to the same-named target generator.
GeneratorMap inclusion_map(const Presentation& source, const Presentation& target);

// ---------------------------------------------------------------------------
// Typed presentations

struct ConjugacyTriple {
  std::size_t i, j, k;  // x_i x_j x_i = x_k
  friend bool operator==(const ConjugacyTriple&, const ConjugacyTriple&) = default;
};

struct ActionTriple {
  std::size_t y, j, k;  // y x_j y^-1 = x_k
  friend bool operator==(const ActionTriple&, const ActionTriple&) = default;
};

/// Solution group of `sys` plus conjugacy relations, over Z2.
struct LinearPlusConjugacy {
  BinaryLinearSystem sys;
  std::vector<ConjugacyTriple> triples;
  std::vector<std::string> names;  // one per variable
};

/// Homogeneous variant: b = 0 and no J.
struct HomogeneousLpc {
  BinaryLinearSystem sys;  // right-hand side ignored, kept zero
  std::vector<ConjugacyTriple> triples;
  std::vector<std::string> names;
};

/// Homogeneous LPC extended by non-involutary generators y_1..y_l acting by
/// conjugation, with power relations y_i y_j y_i^-1 = y_j^{L_ij} for i > j.
struct ExtendedHomogeneous {
  BinaryLinearSystem sys;
  std::vector<ConjugacyTriple> triples;  // C0
  std::vector<ActionTriple> actions;     // C1
  std::vector<std::vector<unsigned>> powers;  // L, l x l, only i > j entries used
  std::vector<std::string> names;        // involutary generators
  std::vector<std::string> y_names;      // non-involutary generators

  std::size_t num_noninvolutary() const { return y_names.size(); }
};

std::vector<std::string> default_names(std::string_view prefix, std::size_t count);

/// True iff every triple's last two variables share an equation.
bool is_nice(const LinearPlusConjugacy& g);

/// Solution group Gamma(A, b): involutions x_j, one product relation per row,
/// commutations for variable pairs sharing a row, closed over Z2.
Presentation solution_group(const BinaryLinearSystem& sys, const std::vector<std::string>& names = {});

Presentation presentation_of(const LinearPlusConjugacy& g);
Presentation presentation_of(const HomogeneousLpc& g);
Presentation presentation_of(const ExtendedHomogeneous& g);

/// The group <x,y,a,b : a^2 = b^2 = e, ab = ba, yay^-1 = a, yby^-1 = ab, xyx^-1 = y^2>
/// in extended homogeneous form with c = ab, together with the index of `a`.
struct KGroup {
  ExtendedHomogeneous group;
  std::size_t designated;
};
KGroup k_group();

/// Z2-HNN extension <G, t : t^2 = e, t x_i t = J x_i>, with the last relation
/// split as t x_i t = Z and Z x_i = J. Adds variables t and Z (in that order).
LinearPlusConjugacy hnn_z2(const HomogeneousLpc& h, std::size_t target);

/// w(0) = z1, w(m) = w(m-1) w(m-1)^{a^-1} w(m-1)^{a} w(m-1)^{a'} with x^y = y x y^-1.
GroupWord build_w(unsigned m, GenId z1, GenId a, GenId a_prime);

/// A word together with the way it was built: a single letter, a conjugate
/// z^e x z^-e, or a product of factors.
struct WordExpr {
  enum class Kind { Letter, Conjugate, Product };

  Kind kind = Kind::Letter;
  Letter letter{0, 1};             // the leaf, or the conjugating letter z^e
  std::vector<WordExpr> children;  // one operand for a conjugate, the factors of a product

  static WordExpr leaf(GenId g, int exp = 1);
  static WordExpr conjugate(Letter z, WordExpr x);
  static WordExpr product(std::vector<WordExpr> factors);

  /// The reduced word.
  GroupWord flatten() const;
};

/// w(m) as a tree, with w(m-1) shared by all four factors.
WordExpr build_w_expr(unsigned m, GenId z1, GenId a, GenId a_prime);

/// Result of rewriting a word of N(S0, S1) into a generator via ancillas.
struct Internalization {
  Presentation extended;           // input presentation plus ancillas and their relations
  std::vector<GenId> ancillas;     // ids in `extended`
  std::vector<Relation> relations; // the added relations (ancilla squares excluded)
  std::vector<GroupWord> definitions;  // value of each ancilla as a word over earlier generators
  GenId target;                    // generator equal to w once the relations hold
};

/// Recursively rewrites `w` (an element of the normal closure of S0 in F(S1))
/// so that it equals a single involutary generator. Identical subwords share
/// one ancilla. Ancillas are named `<prefix><k>`.
Internalization internalize_word(const Presentation& pres, const GroupWord& w, const std::vector<GenId>& s0,
                                 const std::vector<GenId>& s1, std::string_view prefix = "W");

/// Same, following the construction of `e` instead of splitting the flat word:
/// one ancilla per distinct conjugate and product node.
Internalization internalize_expr(const Presentation& pres, const WordExpr& e, const std::vector<GenId>& s0,
                                 const std::vector<GenId>& s1, std::string_view prefix = "W");

// ---------------------------------------------------------------------------
// Files

/// `.grp` text: `gen <name> [inv]` and `rel <word>` lines, `#` comments.
/// A generator named J makes the presentation over Z2.
Presentation read_grp(std::istream& in);
void write_grp(std::ostream& out, const Presentation& pres);
Presentation load_grp(const std::string& path);
void save_grp(const std::string& path, const Presentation& pres);
std::string grp_json(const Presentation& pres);

}  // namespace lsg
