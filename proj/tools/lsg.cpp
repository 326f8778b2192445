// lsg: compile group presentations into linear system games and check
// approximate representations against them.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsg/acceptance.hpp"
#include "lsg/compiler.hpp"
#include "lsg/error.hpp"
#include "lsg/games.hpp"
#include "lsg/gf2.hpp"
#include "lsg/presentation.hpp"
#include "lsg/replab.hpp"

namespace {

using namespace lsg;
using nlohmann::json;

constexpr const char* kBuiltinK = "builtin:K";
constexpr const char* kBuiltinMagic = "builtin:magic";
constexpr const char* kBuiltinPauli = "builtin:pauli";
constexpr const char* kSeedVariable = "LSG_SEED";

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> load_names(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

json sizes_json(const Sizes& s) {
  return {{"variables", s.variables},
          {"equations", s.equations},
          {"triples", s.triples},
          {"noninvolutary", s.noninvolutary},
          {"actions", s.actions}};
}

BinaryLinearSystem load_system(const std::string& path) {
  return path == kBuiltinMagic ? magic_square_system() : load_lsys(path);
}

ApproxRep load_representation(const std::string& path) {
  return path == kBuiltinPauli ? pauli_magic_rep() : load_rep(path);
}

/// A .grp file, a .lsys file (its solution group) or builtin:K.
Presentation load_presentation(const std::string& path, const std::string& names_path) {
  if (path == kBuiltinK) return presentation_of(k_group().group);
  if (path == kBuiltinMagic || ends_with(path, ".lsys")) {
    const auto sys = load_system(path);
    return solution_group(sys, names_path.empty() ? std::vector<std::string>{} : load_names(names_path));
  }
  return load_grp(path);
}

// ---------------------------------------------------------------------------

Counterexample compile_input(const std::string& input) {
  if (input == kBuiltinK) return build_counterexample();
  const auto typed = classify(load_grp(input));
  if (const auto* g = std::get_if<LinearPlusConjugacy>(&typed)) return compile_with_report(*g);
  if (const auto* h = std::get_if<HomogeneousLpc>(&typed)) return compile_with_report(with_trivial_j(*h));
  const auto& e = std::get<ExtendedHomogeneous>(typed);
  const auto lowered = lower_ehlpc(e);
  auto out = compile_with_report(with_trivial_j(lowered.group));
  out.report.passes.insert(out.report.passes.begin(),
                           PassRecord{"lower_ehlpc", sizes_of(e), size_forecast(e), sizes_of(lowered.group)});
  return out;
}

int run_compile(const std::string& input, const std::string& output, const std::string& report,
                const std::string& names) {
  const auto c = compile_input(input);
  if (output.empty()) {
    write_lsys(std::cout, c.sys);
  } else {
    save_lsys(output, c.sys);
  }
  if (!report.empty()) write_text(report, c.report.to_json() + "\n");
  if (!names.empty()) {
    std::ostringstream out;
    for (const auto& n : c.names) out << n << '\n';
    write_text(names, out.str());
  }
  if (!output.empty()) std::cout << c.sys.rows() << ' ' << c.sys.cols() << '\n';
  return 0;
}

int run_forecast(const std::string& input) {
  json out;
  if (input == kBuiltinK) {
    const auto c = build_counterexample();
    auto& passes = out["passes"] = json::array();
    bool match = true;
    for (const auto& p : c.report.passes) {
      passes.push_back({{"pass", p.pass}, {"forecast", sizes_json(p.forecast)}, {"measured", sizes_json(p.after)}});
      match = match && p.forecast == p.after;
    }
    out["match"] = match;
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  const auto typed = classify(load_grp(input));
  Sizes input_sizes, predicted, measured;
  if (const auto* e = std::get_if<ExtendedHomogeneous>(&typed)) {
    input_sizes = sizes_of(*e);
    predicted = size_forecast(*e);
    measured = sizes_of(lower_ehlpc(*e).group);
    out["pass"] = "lower_ehlpc";
  } else {
    const auto g = std::holds_alternative<LinearPlusConjugacy>(typed) ? std::get<LinearPlusConjugacy>(typed)
                                                                       : with_trivial_j(std::get<HomogeneousLpc>(typed));
    input_sizes = sizes_of(g);
    predicted = size_forecast(g);
    measured = compile_lpc(g).sizes;
    out["pass"] = "compile_lpc";
  }
  out["input"] = sizes_json(input_sizes);
  out["forecast"] = sizes_json(predicted);
  out["measured"] = sizes_json(measured);
  out["match"] = predicted == measured;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_defect(const std::string& rep_path, const std::string& pres_path, const std::string& names) {
  const auto rep = load_representation(rep_path);
  std::cout << defect(rep, load_presentation(pres_path, names)).to_json() << '\n';
  return 0;
}

struct RoundOptions {
  std::string lemma;
  std::string output;
  std::string pres;
  std::string names;
  std::string generators;
  std::string xs;
  std::string y;
  double delta = 0.0;
};

int run_round(const std::string& rep_path, const RoundOptions& o) {
  const auto rep = load_representation(rep_path);
  json report;
  report["lemma"] = o.lemma;
  ApproxRep out = rep;

  auto selected = [&] {
    if (!o.generators.empty()) return split_list(o.generators);
    std::vector<std::string> names;
    for (const auto& n : rep.names()) {
      if (n != "J") names.push_back(n);
    }
    return names;
  };

  if (o.lemma == "involution") {
    auto& gens = report["generators"] = json::array();
    double worst = 0.0;
    for (const auto& name : selected()) {
      const auto& x = rep.at(name);
      const auto d = nearest_involution(x);
      const double bound = kInvolutionConstant * involution_defect(x);
      const double dist = hs_distance(d, x);
      worst = std::max(worst, bound);
      gens.push_back({{"generator", name}, {"distance", dist}, {"certified", bound}});
      out.set(name, d);
    }
    report["certified"] = worst;
  } else if (o.lemma == "commuting") {
    if (o.xs.empty() || o.y.empty()) throw ValidationError("round --lemma commuting needs --x and --y");
    std::vector<CMatrix> xs;
    for (const auto& name : split_list(o.xs)) xs.push_back(rep.at(name));
    const auto& y = rep.at(o.y);
    const auto z = round_commuting(xs, y);
    report["generator"] = o.y;
    report["distance"] = hs_distance(z, y);
    report["certified"] = kCommutingConstant * commutator_norm(xs.back(), y);
    out.set(o.y, z);
  } else if (o.lemma == "abelian") {
    const auto names = selected();
    std::vector<CMatrix> images;
    for (const auto& name : names) images.push_back(rep.at(name));
    const auto r = stabilize_abelian(images);
    double dist = 0.0;
    for (std::size_t k = 0; k < names.size(); ++k) {
      dist = std::max(dist, hs_distance(r.images[k], images[k]));
      out.set(names[k], r.images[k]);
    }
    report["input_epsilon"] = r.input_epsilon;
    report["constant"] = r.constant;
    report["distance"] = dist;
    report["certified"] = r.constant * r.input_epsilon;
  } else if (o.lemma == "splitJ") {
    if (o.pres.empty()) throw ValidationError("round --lemma splitJ needs --pres");
    if (o.delta <= 0.0) throw ValidationError("round --lemma splitJ needs --delta > 0");
    const auto r = split_on_j(rep, load_presentation(o.pres, o.names), o.delta);
    report["dimension"] = r.rep.dim();
    report["rounded_epsilon"] = r.rounded_epsilon;
    report["epsilon"] = r.epsilon;
    report["certified"] = r.certified;
    out = r.rep;
  } else {
    throw ValidationError("unknown lemma " + o.lemma);
  }
  if (!o.output.empty()) save_rep(o.output, out);
  std::cout << report.dump(2) << '\n';
  return 0;
}

int run_strategy(const std::string& rep_path, const std::string& sys_path, const std::string& output,
                 const std::string& names) {
  const auto sys = load_system(sys_path);
  const auto s = strategy_from_rep(load_representation(rep_path), sys, names.empty() ? std::vector<std::string>{} : load_names(names));
  validate(s, game_of(sys));
  if (output.empty()) {
    std::cout << strategy_json(s) << '\n';
  } else {
    save_strategy(output, s);
  }
  return 0;
}

int run_evaluate(const std::string& strat_path, const std::string& sys_path, bool pairs, const std::string& csv) {
  const auto game = game_of(load_system(sys_path));
  const auto s = load_strategy(strat_path);
  const auto stats = win_stats(s, game);
  if (!csv.empty()) write_text(csv, correlation_csv(correlation(s, game), game));
  std::cout << std::fixed << std::setprecision(9);
  if (pairs) {
    std::cout << "i,j,p,bias,bias_from_correlation\n";
    for (const auto& st : stats) {
      std::cout << st.i + 1 << ',' << st.j + 1 << ',' << st.probability << ',' << st.bias << ','
                << st.bias_from_correlation << '\n';
    }
    return 0;
  }
  // One line per equation: p averaged over its variables, and the smallest bias.
  std::cout << "i,p,min_bias\n";
  std::size_t k = 0;
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    double p = 0.0;
    double bias = 1.0;
    const auto width = game.supports[i].size();
    for (std::size_t c = 0; c < width; ++c, ++k) {
      p += stats[k].probability;
      bias = std::min(bias, stats[k].bias);
    }
    std::cout << i + 1 << ',' << p / static_cast<double>(width) << ',' << bias << '\n';
  }
  return 0;
}

int run_game(const std::string& sys_path) {
  const auto sys = load_system(sys_path);
  auto j = json::parse(game_json(game_of(sys)));
  j["classical_perfect"] = classical_perfect(sys);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_homs(const std::string& input, unsigned degree, std::string generator) {
  const auto pres = input == kBuiltinK ? presentation_of(k_group().group) : load_grp(input);
  if (generator.empty() && input == kBuiltinK) generator = k_group().group.names[k_group().designated];
  const auto homs = enumerate_homs(pres, degree);
  json out;
  out["degree"] = degree;
  out["count"] = homs.size();
  if (!generator.empty()) {
    const auto g = pres.id(generator);
    std::map<std::string, std::size_t> images;
    for (const auto& h : homs) ++images[to_cycle_string(h.images[g])];
    out["generator"] = generator;
    out["images"] = images;
    out["all_identity"] = images.size() <= 1 && (images.empty() || images.begin()->first == "()");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_selftest(std::uint64_t seed, bool timing) {
  const auto results = acceptance::run_all(seed, std::cout, timing);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? 0 : 1;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedVariable)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string(kSeedVariable) + " is not an unsigned integer");
    }
  }
  return acceptance::kDefaultSeed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear system games from group presentations"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, std::string("random seed (default: $") + kSeedVariable + " or a fixed value)");

  std::string input, output, report, names, rep_path, pres_path, sys_path, strat_path, csv, generator;
  bool pairs = false;
  bool timing = false;
  unsigned degree = 0;
  RoundOptions round;

  auto* compile = app.add_subcommand("compile", "lower a presentation to a linear system");
  compile->add_option("input", input, ".grp file or builtin:K")->required();
  compile->add_option("-o,--output", output, "output .lsys (stdout if omitted)");
  compile->add_option("--report", report, "provenance report (JSON)");
  compile->add_option("--names", names, "write output variable names, one per line");

  auto* forecast = app.add_subcommand("forecast", "closed-form sizes against measured sizes");
  forecast->add_option("input", input, ".grp file or builtin:K")->required();

  auto* defect_cmd = app.add_subcommand("defect", "per-relation defects of a representation");
  defect_cmd->add_option("rep", rep_path, "representation (JSON) or builtin:pauli")->required();
  defect_cmd->add_option("pres", pres_path, ".grp, .lsys or builtin:K")->required();
  defect_cmd->add_option("--names", names, "variable names for a .lsys presentation");

  auto* round_cmd = app.add_subcommand("round", "apply a stability rounding");
  round_cmd->add_option("rep", rep_path, "representation (JSON) or builtin:pauli")->required();
  round_cmd->add_option("--lemma", round.lemma, "involution | commuting | abelian | splitJ")
      ->required()
      ->check(CLI::IsMember({"involution", "commuting", "abelian", "splitJ"}));
  round_cmd->add_option("-o,--output", round.output, "rounded representation (JSON)");
  round_cmd->add_option("--pres", round.pres, "presentation for splitJ");
  round_cmd->add_option("--names", round.names, "variable names for a .lsys presentation");
  round_cmd->add_option("--delta", round.delta, "lower bound on ||phi(J) - I|| for splitJ");
  round_cmd->add_option("--generators", round.generators, "comma-separated generators (default: all but J)");
  round_cmd->add_option("--x", round.xs, "comma-separated commuting involutions, X_n last");
  round_cmd->add_option("--y", round.y, "generator to round against the X's");

  auto* strategy = app.add_subcommand("strategy", "strategy from a representation with J = -I");
  strategy->add_option("rep", rep_path, "representation (JSON) or builtin:pauli")->required();
  strategy->add_option("sys", sys_path, ".lsys file or builtin:magic")->required();
  strategy->add_option("-o,--output", output, "strategy (JSON, stdout if omitted)");
  strategy->add_option("--names", names, "variable names, one per line");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "winning probabilities of a strategy (CSV)");
  evaluate_cmd->add_option("strategy", strat_path, "strategy (JSON)")->required();
  evaluate_cmd->add_option("sys", sys_path, ".lsys file or builtin:magic")->required();
  evaluate_cmd->add_flag("--pairs", pairs, "one line per (equation, variable) pair");
  evaluate_cmd->add_option("--correlation", csv, "write p(a,b|i,j) as CSV");

  auto* game = app.add_subcommand("game", "describe the game of a linear system (JSON)");
  game->add_option("sys", sys_path, ".lsys file or builtin:magic")->required();

  auto* homs = app.add_subcommand("homs", "homomorphisms into a symmetric group");
  homs->add_option("pres", input, ".grp file or builtin:K")->required();
  homs->add_option("--degree", degree, "k for S_k")->required()->check(CLI::Range(1, 8));
  homs->add_option("--generator", generator, "generator whose images are tallied");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_flag("--timing", timing, "append run times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto seed = seed_flag ? *seed_flag : default_seed();
    if (*compile) return run_compile(input, output, report, names);
    if (*forecast) return run_forecast(input);
    if (*defect_cmd) return run_defect(rep_path, pres_path, names);
    if (*round_cmd) return run_round(rep_path, round);
    if (*strategy) return run_strategy(rep_path, sys_path, output, names);
    if (*evaluate_cmd) return run_evaluate(strat_path, sys_path, pairs, csv);
    if (*game) return run_game(sys_path);
    if (*homs) return run_homs(input, degree, generator);
    if (*selftest) return run_selftest(seed, timing);
  } catch (const FeasibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
