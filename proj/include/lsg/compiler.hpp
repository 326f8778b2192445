#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lsg/gf2.hpp"
#include "lsg/presentation.hpp"

namespace lsg {

/// Sizes of a typed presentation at some point in the pipeline.
struct Sizes {
  std::size_t variables = 0;      // involutary generators (J excluded)
  std::size_t equations = 0;      // linear rows
  std::size_t triples = 0;        // conjugacy triples x_i x_j x_i = x_k
  std::size_t noninvolutary = 0;  // y generators
  std::size_t actions = 0;        // y x_j y^-1 = x_k relations

  friend bool operator==(const Sizes&, const Sizes&) = default;
};

Sizes sizes_of(const LinearPlusConjugacy& g);
Sizes sizes_of(const HomogeneousLpc& g);
Sizes sizes_of(const ExtendedHomogeneous& g);
Sizes sizes_of(const BinaryLinearSystem& sys);

/// Closed-form output sizes of each pass, computed without running it.
namespace forecast {
Sizes nice_embed(const Sizes& in);
Sizes gadgetize(const Sizes& in);
Sizes compile_lpc(const Sizes& in);  // 11n + 8c + 1 variables, 8n + m + 7c equations
Sizes lower_ehlpc(const Sizes& in, std::size_t power_sum, std::size_t power_nonzero);
Sizes hnn_z2(const Sizes& in);
}  // namespace forecast

/// Forecast for compiling an LPC all the way to a solution group.
Sizes size_forecast(const LinearPlusConjugacy& g);
/// Forecast for lowering an EHLPC to a homogeneous LPC.
Sizes size_forecast(const ExtendedHomogeneous& g);

struct NiceEmbedding {
  LinearPlusConjugacy group;
  GeneratorMap map;  // presentation_of(input) -> presentation_of(group)
};

/// Embeds an LPC into a nice one. Adds y_j, z_j, f, w_j per variable and one
/// g per triple, with rows x_j y_j z_j, x_j f w_j, y_j z_k g and conjugacies
/// f y_j f = z_j, w_i y_j w_i = z_k. Original generators map to themselves.
NiceEmbedding nice_embed(const LinearPlusConjugacy& g);

struct SolutionGroupSystem {
  BinaryLinearSystem sys;
  std::vector<std::string> names;
  GeneratorMap map;  // presentation_of(input) -> solution_group(sys, names)
};

/// Replaces every conjugacy triple of a nice LPC by seven fresh variables and
/// six three-variable homogeneous equations.
SolutionGroupSystem gadgetize(const LinearPlusConjugacy& nice);

struct CompiledSystem {
  BinaryLinearSystem sys;
  std::vector<std::string> names;
  GeneratorMap map;  // presentation_of(input) -> solution_group(sys, names)
  Sizes sizes;
};

/// nice_embed followed by gadgetize, with the output sizes checked against
/// the closed-form forecast (a mismatch throws).
CompiledSystem compile_lpc(const LinearPlusConjugacy& g);

/// One ancilla introduced while lowering, defined by a word over earlier
/// involutary generators of the output.
struct AncillaRecipe {
  std::size_t var;
  GroupWord definition;  // over HLPC generator ids
};

/// Elimination of one non-involutary generator.
struct LoweringStep {
  std::size_t source_y;  // index of the eliminated generator in the input
  std::size_t z;
  std::size_t w;
  std::size_t first_var;                 // first output variable created in this step (== z)
  std::vector<AncillaRecipe> ancillas;   // in creation order
};

struct LoweredGroup {
  HomogeneousLpc group;
  GeneratorMap map;  // presentation_of(input) -> presentation_of(group)
  std::vector<LoweringStep> steps;
};

/// Eliminates the non-involutary generators one at a time, first to last,
/// writing y = z w for fresh involutions z, w.
LoweredGroup lower_ehlpc(const ExtendedHomogeneous& g);

struct PassRecord {
  std::string pass;
  Sizes before;
  Sizes forecast;
  Sizes after;
};

struct ProvenanceReport {
  std::vector<PassRecord> passes;
  std::vector<std::pair<std::string, std::string>> generator_images;  // source name -> target word
  std::vector<std::pair<std::string, std::string>> designated;        // role -> generator
  std::size_t max_equation_width = 0;

  std::string to_json() const;
};

struct Counterexample {
  BinaryLinearSystem sys;
  std::vector<std::string> names;
  GeneratorMap map;  // presentation_of(k_group) -> solution_group(sys, names)
  ProvenanceReport report;
  LinearPlusConjugacy hnn;  // the intermediate LPC
};

/// k_group -> lower_ehlpc -> hnn_z2 on the image of a -> compile_lpc.
Counterexample build_counterexample();

/// Compiles an arbitrary LPC with a provenance report.
Counterexample compile_with_report(const LinearPlusConjugacy& g);

/// Recognizes a presentation as one of the typed forms.
using TypedPresentation = std::variant<LinearPlusConjugacy, HomogeneousLpc, ExtendedHomogeneous>;
TypedPresentation classify(const Presentation& pres);

/// The homogeneous group viewed over Z2 with b = 0 (G x Z2).
LinearPlusConjugacy with_trivial_j(const HomogeneousLpc& h);

}  // namespace lsg
