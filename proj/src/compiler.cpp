#include "lsg/compiler.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "lsg/error.hpp"

namespace lsg {

namespace {

std::size_t choose2(std::size_t l) { return l < 2 ? 0 : l * (l - 1) / 2; }

class NameTable {
 public:
  explicit NameTable(const std::vector<std::string>& names) : names_(names) {
    for (const auto& n : names_) taken_.insert(n);
  }

  std::size_t add(const std::string& base) {
    auto name = base;
    for (int k = 1; taken_.count(name) != 0; ++k) name = base + "_" + std::to_string(k);
    taken_.insert(name);
    names_.push_back(name);
    return names_.size() - 1;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  std::vector<std::string> release() { return std::move(names_); }

 private:
  std::vector<std::string> names_;
  std::unordered_set<std::string> taken_;
};

std::vector<std::vector<std::size_t>> supports_of(const BinaryLinearSystem& sys) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(sys.rows());
  for (std::size_t i = 0; i < sys.rows(); ++i) out.push_back(sys.row(i).ones());
  return out;
}

std::vector<int> rhs_of(const BinaryLinearSystem& sys) {
  std::vector<int> b(sys.rows());
  for (std::size_t i = 0; i < sys.rows(); ++i) b[i] = sys.rhs(i) ? 1 : 0;
  return b;
}

std::string word_text(const GroupWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += names.at(l.gen);
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

nlohmann::json sizes_json(const Sizes& s) {
  return {{"variables", s.variables},
          {"equations", s.equations},
          {"triples", s.triples},
          {"noninvolutary", s.noninvolutary},
          {"actions", s.actions}};
}

void check_forecast(const std::string& pass, const Sizes& forecast, const Sizes& measured) {
  if (!(forecast == measured)) {
    throw std::logic_error(pass + ": measured sizes differ from the closed-form forecast (" +
                           std::to_string(measured.variables) + " vars / " + std::to_string(measured.equations) +
                           " rows vs " + std::to_string(forecast.variables) + " / " +
                           std::to_string(forecast.equations) + ")");
  }
}

std::size_t max_width(const BinaryLinearSystem& sys) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < sys.rows(); ++i) w = std::max(w, sys.row(i).count());
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sizes

Sizes sizes_of(const LinearPlusConjugacy& g) { return Sizes{g.sys.cols(), g.sys.rows(), g.triples.size(), 0, 0}; }
Sizes sizes_of(const HomogeneousLpc& g) { return Sizes{g.sys.cols(), g.sys.rows(), g.triples.size(), 0, 0}; }
Sizes sizes_of(const ExtendedHomogeneous& g) {
  return Sizes{g.sys.cols(), g.sys.rows(), g.triples.size(), g.y_names.size(), g.actions.size()};
}
Sizes sizes_of(const BinaryLinearSystem& sys) { return Sizes{sys.cols(), sys.rows(), 0, 0, 0}; }

namespace forecast {

Sizes nice_embed(const Sizes& in) {
  const auto n = in.variables;
  const auto c = in.triples;
  return Sizes{4 * n + 1 + c, in.equations + 2 * n + c, n + c, 0, 0};
}

Sizes gadgetize(const Sizes& in) {
  return Sizes{in.variables + 7 * in.triples, in.equations + 6 * in.triples, 0, 0, 0};
}

Sizes compile_lpc(const Sizes& in) {
  const auto n = in.variables;
  const auto m = in.equations;
  const auto c = in.triples;
  return Sizes{11 * n + 8 * c + 1, 8 * n + m + 7 * c, 0, 0, 0};
}

Sizes lower_ehlpc(const Sizes& in, std::size_t power_sum, std::size_t power_nonzero) {
  const auto l = in.noninvolutary;
  const auto c1 = in.actions;
  return Sizes{in.variables + 2 * l + choose2(l) + c1 + power_sum,
               in.equations,
               in.triples + 2 * c1 + 2 * choose2(l) + power_sum + power_nonzero,
               0,
               0};
}

Sizes hnn_z2(const Sizes& in) { return Sizes{in.variables + 2, in.equations + 1, in.triples + 1, 0, 0}; }

}  // namespace forecast

namespace {

std::pair<std::size_t, std::size_t> power_stats(const ExtendedHomogeneous& g) {
  std::size_t sum = 0;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < g.powers.size(); ++i) {
    for (std::size_t j = 0; j < i && j < g.powers[i].size(); ++j) {
      sum += g.powers[i][j];
      nonzero += g.powers[i][j] > 0 ? 1 : 0;
    }
  }
  return {sum, nonzero};
}

}  // namespace

Sizes size_forecast(const LinearPlusConjugacy& g) { return forecast::compile_lpc(sizes_of(g)); }

Sizes size_forecast(const ExtendedHomogeneous& g) {
  const auto [sum, nonzero] = power_stats(g);
  return forecast::lower_ehlpc(sizes_of(g), sum, nonzero);
}

// ---------------------------------------------------------------------------
// nice_embed

NiceEmbedding nice_embed(const LinearPlusConjugacy& g) {
  const auto n = g.sys.cols();
  const auto source = presentation_of(g);

  NameTable names(g.names);
  std::vector<std::size_t> y(n), z(n), w(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = names.add("nice.y[" + g.names[j] + "]");
  for (std::size_t j = 0; j < n; ++j) z[j] = names.add("nice.z[" + g.names[j] + "]");
  const auto f = names.add("nice.f");
  for (std::size_t j = 0; j < n; ++j) w[j] = names.add("nice.w[" + g.names[j] + "]");
  std::vector<std::size_t> gs;
  for (std::size_t t = 0; t < g.triples.size(); ++t) gs.push_back(names.add("nice.g" + std::to_string(t + 1)));

  auto supports = supports_of(g.sys);
  auto rhs = rhs_of(g.sys);
  for (std::size_t j = 0; j < n; ++j) {
    supports.push_back({j, y[j], z[j]});
    rhs.push_back(0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    supports.push_back({j, f, w[j]});
    rhs.push_back(0);
  }
  std::vector<ConjugacyTriple> triples;
  for (std::size_t j = 0; j < n; ++j) triples.push_back(ConjugacyTriple{f, y[j], z[j]});
  for (std::size_t t = 0; t < g.triples.size(); ++t) {
    const auto& tr = g.triples[t];
    supports.push_back({y[tr.j], z[tr.k], gs[t]});
    rhs.push_back(0);
    triples.push_back(ConjugacyTriple{w[tr.i], y[tr.j], z[tr.k]});
  }

  const auto total = names.size();
  LinearPlusConjugacy out{BinaryLinearSystem::from_supports(total, supports, rhs), std::move(triples), names.release()};
  auto map = inclusion_map(source, presentation_of(out));
  return NiceEmbedding{std::move(out), std::move(map)};
}

// ---------------------------------------------------------------------------
// gadgetize

SolutionGroupSystem gadgetize(const LinearPlusConjugacy& nice) {
  if (!is_nice(nice)) throw ValidationError("gadgetize: input is not nice");
  const auto source = presentation_of(nice);

  NameTable names(nice.names);
  auto supports = supports_of(nice.sys);
  auto rhs = rhs_of(nice.sys);
  for (std::size_t t = 0; t < nice.triples.size(); ++t) {
    const auto& tr = nice.triples[t];
    std::size_t v[8];
    for (int s = 1; s <= 7; ++s) v[s] = names.add("gad" + std::to_string(t + 1) + ".y" + std::to_string(s));
    const std::vector<std::vector<std::size_t>> rows = {
        {tr.i, v[1], v[2]}, {tr.j, v[2], v[3]}, {v[3], v[4], v[5]},
        {tr.i, v[5], v[6]}, {tr.k, v[6], v[7]}, {v[1], v[4], v[7]},
    };
    for (const auto& r : rows) {
      supports.push_back(r);
      rhs.push_back(0);
    }
  }
  const auto total = names.size();
  auto sys = BinaryLinearSystem::from_supports(total, supports, rhs);
  auto out_names = names.release();
  auto map = inclusion_map(source, solution_group(sys, out_names));
  return SolutionGroupSystem{std::move(sys), std::move(out_names), std::move(map)};
}

// ---------------------------------------------------------------------------
// compile_lpc

namespace {

struct CompileTrace {
  CompiledSystem compiled;
  Sizes nice_sizes;
};

CompileTrace compile_traced(const LinearPlusConjugacy& g) {
  const auto in = sizes_of(g);
  auto nice = nice_embed(g);
  const auto nice_sizes = sizes_of(nice.group);
  check_forecast("nice_embed", forecast::nice_embed(in), nice_sizes);
  auto gad = gadgetize(nice.group);
  const auto out = sizes_of(gad.sys);
  check_forecast("gadgetize", forecast::gadgetize(nice_sizes), out);
  check_forecast("compile_lpc", forecast::compile_lpc(in), out);
  auto map = compose(nice.map, gad.map);
  return CompileTrace{CompiledSystem{std::move(gad.sys), std::move(gad.names), std::move(map), out}, nice_sizes};
}

}  // namespace

CompiledSystem compile_lpc(const LinearPlusConjugacy& g) { return compile_traced(g).compiled; }

// ---------------------------------------------------------------------------
// lower_ehlpc

LoweredGroup lower_ehlpc(const ExtendedHomogeneous& g) {
  const auto n = g.sys.cols();
  const auto l = g.num_noninvolutary();
  if (g.names.size() != n) throw ValidationError("expected one name per involutary generator");
  if (g.powers.size() != l) throw ValidationError("power matrix must be l x l");
  for (std::size_t i = 0; i < l; ++i) {
    if (g.powers[i].size() != l) throw ValidationError("power matrix must be l x l");
    for (std::size_t j = i; j < l; ++j) {
      if (g.powers[i][j] != 0) throw ValidationError("L not strictly lower-triangular");
    }
  }
  for (const auto& a : g.actions) {
    if (a.y >= l || a.j >= n || a.k >= n) throw ValidationError("action triple index out of range");
  }
  const auto source = presentation_of(g);

  NameTable names(g.names);
  auto triples = g.triples;
  // Working state over the remaining generators; `alive[p]` is the input index of current y_p.
  std::vector<std::size_t> alive(l);
  for (std::size_t p = 0; p < l; ++p) alive[p] = p;
  auto actions = g.actions;
  auto powers = g.powers;
  std::vector<LoweringStep> steps;
  std::vector<std::pair<std::size_t, std::size_t>> zw(l);

  while (!alive.empty()) {
    const auto label = std::to_string(alive.front() + 1);
    LoweringStep step;
    step.source_y = alive.front();
    step.z = names.add("low" + label + ".z");
    step.w = names.add("low" + label + ".w");
    step.first_var = step.z;
    const auto z = step.z;
    const auto w = step.w;
    zw[step.source_y] = {z, w};
    auto ancilla = [&](const std::string& tag, GroupWord def) {
      const auto v = names.add("low" + label + "." + tag);
      step.ancillas.push_back(AncillaRecipe{v, std::move(def)});
      return v;
    };
    auto gen = [](std::size_t v) { return Letter{static_cast<GenId>(v), 1}; };

    std::vector<ActionTriple> next_actions;
    std::size_t zcount = 0;
    for (const auto& a : actions) {
      if (a.y != 0) {
        next_actions.push_back(a);
        continue;
      }
      // y1 x_j y1^-1 = x_k with y1 = z w:  w x_j w = Z and z Z z = x_k.
      const auto zv = ancilla("Z" + std::to_string(++zcount), GroupWord{gen(w), gen(a.j), gen(w)});
      triples.push_back(ConjugacyTriple{w, a.j, zv});
      triples.push_back(ConjugacyTriple{z, zv, a.k});
    }
    const auto remaining = alive.size();
    for (std::size_t i = 1; i < remaining; ++i) {
      // z commutes with y_i.
      next_actions.push_back(ActionTriple{i, z, z});
      const auto v = powers[i][0];
      if (v == 0) continue;
      // y_i w y_i^-1 = w (z w)^{v-1}, a palindrome of length 2v-1 built from the centre out.
      std::size_t last = w;
      if (v >= 2) {
        auto letter = [&](std::size_t pos) { return pos % 2 == 0 ? w : z; };
        const std::size_t centre = v - 1;
        GroupWord value{gen(letter(centre - 1)), gen(letter(centre)), gen(letter(centre + 1))};
        const auto tag = "W" + std::to_string(alive[i] + 1) + ".";
        last = ancilla(tag + "0", value);
        triples.push_back(ConjugacyTriple{letter(centre - 1), letter(centre), last});
        for (std::size_t r = 1; r + 1 < v; ++r) {
          const auto outer = letter(centre - 1 - r);
          value = GroupWord{gen(outer), gen(last), gen(outer)};
          const auto next = ancilla(tag + std::to_string(r), value);
          triples.push_back(ConjugacyTriple{outer, last, next});
          last = next;
        }
      }
      next_actions.push_back(ActionTriple{i, w, last});
    }

    // Drop y1 and relabel.
    for (auto& a : next_actions) --a.y;
    actions = std::move(next_actions);
    std::vector<std::vector<unsigned>> next_powers(remaining - 1, std::vector<unsigned>(remaining - 1, 0));
    for (std::size_t i = 1; i < remaining; ++i) {
      for (std::size_t j = 1; j < remaining; ++j) next_powers[i - 1][j - 1] = powers[i][j];
    }
    powers = std::move(next_powers);
    alive.erase(alive.begin());
    steps.push_back(std::move(step));
  }

  const auto total = names.size();
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < g.sys.rows(); ++i) {
    BitRow r(total);
    for (auto j : g.sys.row(i).ones()) r.set(j);
    rows.push_back(std::move(r));
  }
  HomogeneousLpc out{BinaryLinearSystem(std::move(rows), BitRow(g.sys.rows())), std::move(triples), names.release()};

  const auto target = presentation_of(out);
  GeneratorMap map{source.names(), target.names(), {}};
  for (GenId s = 0; s < source.generator_count(); ++s) {
    if (s < n) {
      map.images.push_back(GroupWord::gen(s));
    } else {
      const auto [z, w] = zw[s - n];
      map.images.push_back(GroupWord{{static_cast<GenId>(z), 1}, {static_cast<GenId>(w), 1}});
    }
  }
  return LoweredGroup{std::move(out), std::move(map), std::move(steps)};
}

// ---------------------------------------------------------------------------
// Pipelines and reports

std::string ProvenanceReport::to_json() const {
  nlohmann::json j;
  auto& passes_json = j["passes"] = nlohmann::json::array();
  for (const auto& p : passes) {
    passes_json.push_back({{"pass", p.pass},
                           {"before", sizes_json(p.before)},
                           {"forecast", sizes_json(p.forecast)},
                           {"after", sizes_json(p.after)},
                           {"forecast_matches", p.forecast == p.after}});
  }
  auto& map_json = j["generator_map"] = nlohmann::json::array();
  for (const auto& [src, img] : generator_images) map_json.push_back({{"source", src}, {"image", img}});
  auto& designated_json = j["designated"] = nlohmann::json::object();
  for (const auto& [role, gen] : designated) designated_json[role] = gen;
  j["max_equation_width"] = max_equation_width;
  j["max_alice_outputs"] = max_equation_width == 0 ? 0 : (std::size_t{1} << (max_equation_width - 1));
  return j.dump(2);
}

namespace {

void fill_images(ProvenanceReport& report, const GeneratorMap& map) {
  for (GenId s = 0; s < map.source.size(); ++s) {
    report.generator_images.emplace_back(map.source[s], word_text(map.image(s), map.target));
  }
}

void append_compile_passes(ProvenanceReport& report, const LinearPlusConjugacy& g, const CompileTrace& trace) {
  const auto in = sizes_of(g);
  report.passes.push_back(PassRecord{"nice_embed", in, forecast::nice_embed(in), trace.nice_sizes});
  report.passes.push_back(
      PassRecord{"gadgetize", trace.nice_sizes, forecast::gadgetize(trace.nice_sizes), trace.compiled.sizes});
}

}  // namespace

Counterexample compile_with_report(const LinearPlusConjugacy& g) {
  auto trace = compile_traced(g);
  ProvenanceReport report;
  append_compile_passes(report, g, trace);
  fill_images(report, trace.compiled.map);
  report.designated.emplace_back("J", "J");
  report.max_equation_width = max_width(trace.compiled.sys);
  auto& c = trace.compiled;
  return Counterexample{std::move(c.sys), std::move(c.names), std::move(c.map), std::move(report), g};
}

Counterexample build_counterexample() {
  const auto k = k_group();
  ProvenanceReport report;

  auto lowered = lower_ehlpc(k.group);
  const auto lowered_sizes = sizes_of(lowered.group);
  const auto lower_forecast = size_forecast(k.group);
  check_forecast("lower_ehlpc", lower_forecast, lowered_sizes);
  report.passes.push_back(PassRecord{"lower_ehlpc", sizes_of(k.group), lower_forecast, lowered_sizes});

  // Generators of the input keep their index, so the designated generator is unchanged.
  const auto a = k.designated;
  auto hnn = hnn_z2(lowered.group, a);
  const auto hnn_sizes = sizes_of(hnn);
  check_forecast("hnn_z2", forecast::hnn_z2(lowered_sizes), hnn_sizes);
  report.passes.push_back(PassRecord{"hnn_z2", lowered_sizes, forecast::hnn_z2(lowered_sizes), hnn_sizes});

  auto trace = compile_traced(hnn);
  append_compile_passes(report, hnn, trace);

  auto to_hnn = inclusion_map(presentation_of(lowered.group), presentation_of(hnn));
  auto map = compose(compose(lowered.map, to_hnn), trace.compiled.map);
  fill_images(report, map);

  const auto& compiled = trace.compiled;
  report.designated.emplace_back("a", word_text(map.image(static_cast<GenId>(a)), map.target));
  report.designated.emplace_back("t", hnn.names[hnn.sys.cols() - 2]);
  report.designated.emplace_back("Z", hnn.names[hnn.sys.cols() - 1]);
  report.designated.emplace_back("J", "J");
  report.max_equation_width = max_width(compiled.sys);

  auto& c = trace.compiled;
  return Counterexample{std::move(c.sys), std::move(c.names), std::move(map), std::move(report), std::move(hnn)};
}

LinearPlusConjugacy with_trivial_j(const HomogeneousLpc& h) {
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < h.sys.rows(); ++i) rows.push_back(h.sys.row(i));
  return LinearPlusConjugacy{BinaryLinearSystem(std::move(rows), BitRow(h.sys.rows())), h.triples, h.names};
}

// ---------------------------------------------------------------------------
// classify

namespace {

[[noreturn]] void unrecognized(const GroupWord& w, const Presentation& p, const std::string& why) {
  throw ValidationError("relation '" + to_string(w, p) + "' " + why);
}

}  // namespace

TypedPresentation classify(const Presentation& p) {
  const auto j = p.j();
  std::vector<long> xi(p.generator_count(), -1);
  std::vector<long> yi(p.generator_count(), -1);
  std::vector<std::string> xnames;
  std::vector<std::string> ynames;
  for (GenId g = 0; g < p.generator_count(); ++g) {
    if (j == g) continue;
    if (p.involutary(g)) {
      xi[g] = static_cast<long>(xnames.size());
      xnames.push_back(p.name(g));
    } else {
      yi[g] = static_cast<long>(ynames.size());
      ynames.push_back(p.name(g));
    }
  }
  if (j && !ynames.empty()) throw ValidationError("presentations over Z2 must have only involutary generators");
  if (xnames.empty()) throw ValidationError("presentation has no involutary generators");

  auto is_x = [&](GenId g) { return xi[g] >= 0; };
  auto is_y = [&](GenId g) { return yi[g] >= 0; };
  auto is_j = [&](GenId g) { return j == g; };

  std::vector<std::vector<std::size_t>> supports;
  std::vector<int> rhs;
  std::vector<ConjugacyTriple> triples;
  std::vector<ActionTriple> actions;
  std::set<std::pair<std::size_t, std::size_t>> commuting;
  const auto l = ynames.size();
  std::vector<std::vector<unsigned>> powers(l, std::vector<unsigned>(l, 0));

  for (const auto& rel : p.relations()) {
    // Tagged triples are read before reduction, which would hide i == j or i == k.
    const auto& raw = rel.word.letters;
    if (rel.kind == RelationKind::Conjugacy && raw.size() == 4 && raw[0] == raw[2] &&
        std::all_of(raw.begin(), raw.end(), [&](const Letter& x) { return is_x(x.gen); })) {
      triples.push_back(ConjugacyTriple{static_cast<std::size_t>(xi[raw[0].gen]), static_cast<std::size_t>(xi[raw[1].gen]),
                                        static_cast<std::size_t>(xi[raw[3].gen])});
      continue;
    }
    const auto w = reduce(rel.word);
    if (w.empty()) continue;
    std::vector<Letter> s = w.letters;
    for (auto& letter : s) {
      if (p.involutary(letter.gen)) letter.exp = 1;
    }
    const auto n = s.size();

    if (n == 2 && s[0].gen == s[1].gen && p.involutary(s[0].gen)) continue;

    if (n >= 4 && s[0].gen == s[2].gen && s[0].gen != s[1].gen) {
      const auto a = s[0].gen;
      const auto b = s[1].gen;
      const bool tail_b = std::all_of(s.begin() + 3, s.end(), [&](const Letter& x) { return x.gen == b; });
      if (n == 4 && s[3].gen == b && (is_j(a) || is_j(b))) continue;  // [J, s]
      if (n == 4 && is_x(a) && is_x(b) && s[3].gen == b) {
        commuting.emplace(std::min(xi[a], xi[b]), std::max(xi[a], xi[b]));
        continue;
      }
      if (n == 4 && is_x(a) && is_x(b) && is_x(s[3].gen)) {
        triples.push_back(ConjugacyTriple{static_cast<std::size_t>(xi[a]), static_cast<std::size_t>(xi[b]),
                                          static_cast<std::size_t>(xi[s[3].gen])});
        continue;
      }
      if (n == 4 && is_y(a) && is_x(b) && is_x(s[3].gen) && s[0].exp == -s[2].exp) {
        const auto y = static_cast<std::size_t>(yi[a]);
        const auto from = static_cast<std::size_t>(xi[b]);
        const auto to = static_cast<std::size_t>(xi[s[3].gen]);
        actions.push_back(s[0].exp > 0 ? ActionTriple{y, from, to} : ActionTriple{y, to, from});
        continue;
      }
      if (n == 4 && is_x(a) && is_y(b) && s[3].gen == b && s[1].exp == -s[3].exp) {
        // x y x y^-1: y commutes with x.
        actions.push_back(ActionTriple{static_cast<std::size_t>(yi[b]), static_cast<std::size_t>(xi[a]),
                                       static_cast<std::size_t>(xi[a])});
        continue;
      }
      if (is_y(a) && is_y(b) && tail_b && s[0].exp == -s[2].exp) {
        // y_a^e y_b^f y_a^-e y_b^(-f v) = e.
        const auto v = n - 3;
        const bool positive = std::all_of(s.begin() + 3, s.end(), [&](const Letter& x) { return x.exp == -s[1].exp; });
        if (!positive) unrecognized(w, p, "is not a power relation");
        auto ia = static_cast<std::size_t>(yi[a]);
        auto ib = static_cast<std::size_t>(yi[b]);
        if (v == 1 && ia < ib) std::swap(ia, ib);  // commutation reads either way
        if (ia <= ib) unrecognized(w, p, "acts on a later non-involutary generator");
        if (s[0].exp < 0 && v != 1) unrecognized(w, p, "is not of the form y_i y_j y_i^-1 y_j^-L");
        powers[ia][ib] = static_cast<unsigned>(v);
        continue;
      }
    }

    // Linear relation: distinct involutary generators, optionally one J.
    std::vector<std::size_t> support;
    std::set<GenId> seen;
    int b = 0;
    bool linear = true;
    for (const auto& letter : s) {
      if (!seen.insert(letter.gen).second) {
        linear = false;
        break;
      }
      if (is_j(letter.gen)) {
        b = 1;
      } else if (is_x(letter.gen)) {
        support.push_back(static_cast<std::size_t>(xi[letter.gen]));
      } else {
        linear = false;
        break;
      }
    }
    if (!linear || support.empty()) unrecognized(w, p, "does not fit the linear-plus-conjugacy shapes");
    std::sort(support.begin(), support.end());
    supports.push_back(std::move(support));
    rhs.push_back(b);
  }

  if (supports.empty()) throw ValidationError("presentation has no linear relations");

  // Declared commutations: implied by a shared row, otherwise a conjugacy x_a x_b x_a = x_b.
  std::set<std::pair<std::size_t, std::size_t>> row_pairs;
  for (const auto& r : supports) {
    for (std::size_t u = 0; u < r.size(); ++u) {
      for (std::size_t v = u + 1; v < r.size(); ++v) row_pairs.emplace(r[u], r[v]);
    }
  }
  for (const auto& pr : row_pairs) {
    if (commuting.count(pr) == 0) {
      throw ValidationError("missing commutation [" + xnames[pr.first] + ", " + xnames[pr.second] +
                            "] required by a linear relation");
    }
  }
  for (const auto& pr : commuting) {
    if (row_pairs.count(pr) == 0) triples.push_back(ConjugacyTriple{pr.first, pr.second, pr.second});
  }

  auto sys = BinaryLinearSystem::from_supports(xnames.size(), supports, rhs);
  if (j) return LinearPlusConjugacy{std::move(sys), std::move(triples), std::move(xnames)};
  if (l == 0) return HomogeneousLpc{std::move(sys), std::move(triples), std::move(xnames)};
  return ExtendedHomogeneous{std::move(sys), std::move(triples), std::move(actions), std::move(powers),
                             std::move(xnames), std::move(ynames)};
}

}  // namespace lsg
