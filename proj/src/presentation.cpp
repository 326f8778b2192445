#include "lsg/presentation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lsg/error.hpp"

namespace lsg {

// ---------------------------------------------------------------------------
// Words

GroupWord reduce(const GroupWord& w) {
  std::vector<Letter> out;
  out.reserve(w.letters.size());
  for (const auto& l : w.letters) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return GroupWord(std::move(out));
}

GroupWord inverse(const GroupWord& w) {
  std::vector<Letter> out(w.letters.rbegin(), w.letters.rend());
  for (auto& l : out) l.exp = -l.exp;
  return GroupWord(std::move(out));
}

GroupWord operator*(const GroupWord& u, const GroupWord& v) {
  GroupWord out = u;
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  return reduce(out);
}

GroupWord power(const GroupWord& w, int k) {
  const GroupWord base = k < 0 ? inverse(w) : w;
  GroupWord out;
  for (int i = 0; i < std::abs(k); ++i) out.letters.insert(out.letters.end(), base.letters.begin(), base.letters.end());
  return reduce(out);
}

GroupWord commutator(const GroupWord& x, const GroupWord& y) { return x * y * inverse(x) * inverse(y); }

GroupWord conjugate(const GroupWord& x, const GroupWord& y) { return y * x * inverse(y); }

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Involution: return "involution";
    case RelationKind::Linear: return "linear";
    case RelationKind::Commutation: return "commutation";
    case RelationKind::Conjugacy: return "conjugacy";
    case RelationKind::Action: return "action";
    case RelationKind::Power: return "power";
    case RelationKind::Central: return "central";
    case RelationKind::Other: return "other";
  }
  return "other";
}

// ---------------------------------------------------------------------------
// Presentation

GenId Presentation::add_generator(std::string name, bool involutary) {
  if (name.empty() || name.find_first_of(" \t\n^") != std::string::npos) {
    throw ValidationError("invalid generator name '" + name + "'");
  }
  if (index_.count(name) != 0) throw ValidationError("duplicate generator '" + name + "'");
  const auto g = static_cast<GenId>(names_.size());
  index_.emplace(name, g);
  names_.push_back(std::move(name));
  involutary_.push_back(involutary ? 1 : 0);
  if (involutary) add_relation(GroupWord{{g, 1}, {g, 1}}, RelationKind::Involution);
  if (j_) add_relation(commutator(GroupWord::gen(*j_), GroupWord::gen(g)), RelationKind::Central);
  return g;
}

void Presentation::add_relation(GroupWord word, RelationKind kind) {
  for (const auto& l : word.letters) {
    if (l.gen >= names_.size()) throw ValidationError("relation mentions undeclared generator");
    if (l.exp != 1 && l.exp != -1) throw ValidationError("letter exponent must be +1 or -1");
  }
  relations_.push_back(Relation{std::move(word), kind});
}

void Presentation::close_over_z2() {
  if (j_) return;
  if (index_.count("J") != 0) throw ValidationError("generator name J is reserved");
  const auto j = static_cast<GenId>(names_.size());
  index_.emplace("J", j);
  names_.emplace_back("J");
  involutary_.push_back(1);
  j_ = j;
  add_relation(GroupWord{{j, 1}, {j, 1}}, RelationKind::Central);
  for (GenId g = 0; g < j; ++g) add_relation(commutator(GroupWord::gen(j), GroupWord::gen(g)), RelationKind::Central);
}

GenId Presentation::require_j() const {
  if (!j_) throw ValidationError("presentation is not over Z2");
  return *j_;
}

std::optional<GenId> Presentation::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GenId Presentation::id(std::string_view name) const {
  auto g = find(name);
  if (!g) throw ValidationError("unknown generator '" + std::string(name) + "'");
  return *g;
}

std::size_t Presentation::count(RelationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(relations_.begin(), relations_.end(), [kind](const Relation& r) { return r.kind == kind; }));
}

std::size_t Presentation::max_relation_length() const {
  std::size_t m = 0;
  for (const auto& r : relations_) m = std::max(m, r.word.size());
  return m;
}

std::string to_string(const GroupWord& w, const Presentation& pres) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += pres.name(l.gen);
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

GroupWord parse_word(std::string_view text, const Presentation& pres) {
  std::istringstream in{std::string(text)};
  std::string tok;
  GroupWord out;
  while (in >> tok) {
    const auto caret = tok.find('^');
    const std::string name = tok.substr(0, caret);
    int exp = 1;
    if (caret != std::string::npos) {
      const auto digits = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exp);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
        throw ValidationError("bad exponent in token '" + tok + "'");
      }
    }
    if (name == "e" && !pres.find("e")) {
      if (caret != std::string::npos) throw ValidationError("identity token takes no exponent");
      continue;
    }
    const auto g = pres.id(name);
    const int sign = exp < 0 ? -1 : 1;
    for (int i = 0; i < std::abs(exp); ++i) out.letters.push_back(Letter{g, sign});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generator maps

const GroupWord& GeneratorMap::image(GenId g) const {
  if (g >= images.size()) throw ValidationError("generator " + std::to_string(g) + " is not mapped");
  return images[g];
}

GroupWord apply_map(const GeneratorMap& map, const GroupWord& w) {
  GroupWord out;
  for (const auto& l : w.letters) {
    const auto& img = map.image(l.gen);
    if (l.exp > 0) {
      out.letters.insert(out.letters.end(), img.letters.begin(), img.letters.end());
    } else {
      const auto inv = inverse(img);
      out.letters.insert(out.letters.end(), inv.letters.begin(), inv.letters.end());
    }
  }
  return reduce(out);
}

GeneratorMap compose(const GeneratorMap& first, const GeneratorMap& second) {
  if (first.target != second.source) throw ValidationError("generator maps do not compose");
  GeneratorMap out;
  out.source = first.source;
  out.target = second.target;
  out.images.reserve(first.images.size());
  for (const auto& img : first.images) out.images.push_back(apply_map(second, img));
  return out;
}

GeneratorMap inclusion_map(const Presentation& source, const Presentation& target) {
  GeneratorMap out;
  out.source = source.names();
  out.target = target.names();
  for (const auto& name : source.names()) out.images.push_back(GroupWord::gen(target.id(name)));
  return out;
}

// ---------------------------------------------------------------------------
// Typed presentations

std::vector<std::string> default_names(std::string_view prefix, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::string(prefix) + std::to_string(i + 1));
  return out;
}

bool is_nice(const LinearPlusConjugacy& g) {
  for (const auto& t : g.triples) {
    bool found = false;
    for (std::size_t r = 0; r < g.sys.rows() && !found; ++r) {
      found = g.sys.row(r).test(t.j) && g.sys.row(r).test(t.k);
    }
    if (!found) return false;
  }
  return true;
}

namespace {

void check_triples(const std::vector<ConjugacyTriple>& triples, std::size_t n) {
  for (const auto& t : triples) {
    if (t.i >= n || t.j >= n || t.k >= n) throw ValidationError("conjugacy triple index out of range");
  }
}

void check_names(const std::vector<std::string>& names, std::size_t n) {
  if (names.size() != n) throw ValidationError("expected one name per variable");
}

// Involutions, linear rows (optionally with J^-b), and row commutations.
void add_linear_part(Presentation& p, const BinaryLinearSystem& sys, const std::vector<GenId>& x, bool with_j) {
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    GroupWord w;
    for (auto j : sys.row(i).ones()) w.letters.push_back(Letter{x[j], 1});
    if (with_j && sys.rhs(i)) w.letters.push_back(Letter{p.require_j(), -1});
    p.add_relation(std::move(w), RelationKind::Linear);
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    const auto support = sys.row(i).ones();
    for (std::size_t a = 0; a < support.size(); ++a) {
      for (std::size_t b = a + 1; b < support.size(); ++b) {
        if (!seen.emplace(support[a], support[b]).second) continue;
        p.add_relation(commutator(GroupWord::gen(x[support[a]]), GroupWord::gen(x[support[b]])),
                       RelationKind::Commutation);
      }
    }
  }
}

void add_conjugacies(Presentation& p, const std::vector<ConjugacyTriple>& triples, const std::vector<GenId>& x) {
  for (const auto& t : triples) {
    p.add_relation(GroupWord{{x[t.i], 1}, {x[t.j], 1}, {x[t.i], 1}, {x[t.k], -1}}, RelationKind::Conjugacy);
  }
}

std::vector<GenId> add_involutions(Presentation& p, const std::vector<std::string>& names) {
  std::vector<GenId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(p.add_generator(n, true));
  return ids;
}

std::string unique_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
  if (!used(base)) return base;
  for (int k = 1;; ++k) {
    auto candidate = base + "_" + std::to_string(k);
    if (!used(candidate)) return candidate;
  }
}

}  // namespace

Presentation solution_group(const BinaryLinearSystem& sys, const std::vector<std::string>& names) {
  const auto n = sys.cols();
  const auto resolved = names.empty() ? default_names("x", n) : names;
  check_names(resolved, n);
  Presentation p;
  const auto x = add_involutions(p, resolved);
  p.close_over_z2();
  add_linear_part(p, sys, x, true);
  return p;
}

Presentation presentation_of(const LinearPlusConjugacy& g) {
  check_triples(g.triples, g.sys.cols());
  auto p = solution_group(g.sys, g.names);
  std::vector<GenId> x(g.sys.cols());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<GenId>(j);
  add_conjugacies(p, g.triples, x);
  return p;
}

Presentation presentation_of(const HomogeneousLpc& g) {
  check_names(g.names, g.sys.cols());
  check_triples(g.triples, g.sys.cols());
  Presentation p;
  const auto x = add_involutions(p, g.names);
  add_linear_part(p, g.sys, x, false);
  add_conjugacies(p, g.triples, x);
  return p;
}

Presentation presentation_of(const ExtendedHomogeneous& g) {
  const auto n = g.sys.cols();
  const auto l = g.num_noninvolutary();
  check_names(g.names, n);
  check_triples(g.triples, n);
  if (g.powers.size() != l) throw ValidationError("power matrix must be l x l");
  Presentation p;
  const auto x = add_involutions(p, g.names);
  add_linear_part(p, g.sys, x, false);
  add_conjugacies(p, g.triples, x);
  std::vector<GenId> y;
  for (const auto& name : g.y_names) y.push_back(p.add_generator(name, false));
  for (const auto& a : g.actions) {
    if (a.y >= l || a.j >= n || a.k >= n) throw ValidationError("action triple index out of range");
    p.add_relation(GroupWord{{y[a.y], 1}, {x[a.j], 1}, {y[a.y], -1}, {x[a.k], -1}}, RelationKind::Action);
  }
  for (std::size_t i = 0; i < l; ++i) {
    if (g.powers[i].size() != l) throw ValidationError("power matrix must be l x l");
    for (std::size_t j = 0; j < i; ++j) {
      const auto v = g.powers[i][j];
      if (v == 0) continue;
      auto w = GroupWord{{y[i], 1}, {y[j], 1}, {y[i], -1}};
      for (unsigned r = 0; r < v; ++r) w.letters.push_back(Letter{y[j], -1});
      p.add_relation(std::move(w), RelationKind::Power);
    }
  }
  return p;
}

KGroup k_group() {
  // a, b, c involutary with abc = e; y1 = y, y2 = x.
  auto sys = BinaryLinearSystem::from_supports(3, {{0, 1, 2}}, {0});
  ExtendedHomogeneous g{std::move(sys), {}, {{0, 0, 0}, {0, 1, 2}}, {{0, 0}, {2, 0}}, {"a", "b", "c"}, {"y", "x"}};
  return KGroup{std::move(g), 0};
}

LinearPlusConjugacy hnn_z2(const HomogeneousLpc& h, std::size_t target) {
  const auto n = h.sys.cols();
  if (target >= n) throw ValidationError("HNN target is not an involutary generator");
  check_names(h.names, n);
  const auto t = n;
  const auto z = n + 1;
  std::vector<BitRow> rows;
  for (std::size_t i = 0; i < h.sys.rows(); ++i) {
    BitRow r(n + 2);
    for (auto j : h.sys.row(i).ones()) r.set(j);
    rows.push_back(std::move(r));
  }
  BitRow extra(n + 2);
  extra.set(target);
  extra.set(z);
  rows.push_back(std::move(extra));
  BitRow b(rows.size());
  b.set(rows.size() - 1);

  auto names = h.names;
  names.push_back(unique_name("t", names));
  names.push_back(unique_name("Z", names));
  auto triples = h.triples;
  triples.push_back(ConjugacyTriple{t, target, z});
  return LinearPlusConjugacy{BinaryLinearSystem(std::move(rows), std::move(b)), std::move(triples), std::move(names)};
}

GroupWord build_w(unsigned m, GenId z1, GenId a, GenId a_prime) {
  GroupWord w = GroupWord::gen(z1);
  const auto ga = GroupWord::gen(a);
  const auto gap = GroupWord::gen(a_prime);
  for (unsigned level = 0; level < m; ++level) {
    w = w * conjugate(w, inverse(ga)) * conjugate(w, ga) * conjugate(w, gap);
  }
  return w;
}

WordExpr WordExpr::leaf(GenId g, int exp) { return WordExpr{Kind::Letter, Letter{g, exp}, {}}; }

WordExpr WordExpr::conjugate(Letter z, WordExpr x) { return WordExpr{Kind::Conjugate, z, {std::move(x)}}; }

WordExpr WordExpr::product(std::vector<WordExpr> factors) {
  return WordExpr{Kind::Product, Letter{0, 1}, std::move(factors)};
}

GroupWord WordExpr::flatten() const {
  switch (kind) {
    case Kind::Letter:
      return GroupWord{letter};
    case Kind::Conjugate: {
      GroupWord z{letter};
      return z * children.front().flatten() * inverse(z);
    }
    case Kind::Product:
      break;
  }
  GroupWord out;
  for (const auto& c : children) out = out * c.flatten();
  return out;
}

WordExpr build_w_expr(unsigned m, GenId z1, GenId a, GenId a_prime) {
  auto w = WordExpr::leaf(z1);
  for (unsigned level = 0; level < m; ++level) {
    auto prev = w;
    w = WordExpr::product({prev, WordExpr::conjugate(Letter{a, -1}, prev), WordExpr::conjugate(Letter{a, 1}, prev),
                           WordExpr::conjugate(Letter{a_prime, 1}, prev)});
  }
  return w;
}

// ---------------------------------------------------------------------------
// Word internalization

namespace {

class Internalizer {
 public:
  Internalizer(const Presentation& pres, const std::vector<GenId>& s0, const std::vector<GenId>& s1,
               std::string_view prefix)
      : ext_(pres), prefix_(prefix) {
    for (auto g : s1) {
      if (g >= pres.generator_count()) throw ValidationError("S1 mentions an unknown generator");
      s1_.insert(g);
    }
    for (auto g : s0) {
      if (s1_.count(g) == 0) throw ValidationError("S0 must be contained in S1");
      if (!pres.involutary(g)) throw ValidationError("S0 generators must be involutary");
      s0_.insert(g);
    }
  }

  Internalization run(const GroupWord& w) {
    const auto reduced = reduce(w);
    if (reduced.empty()) throw ValidationError("cannot internalize the trivial word");
    for (const auto& l : reduced.letters) {
      if (s1_.count(l.gen) == 0) throw ValidationError("word leaves F(S1): " + ext_.name(l.gen));
    }
    const auto target = intern(reduced.letters);
    return finish(target);
  }

  Internalization run(const WordExpr& e) {
    if (e.flatten().empty()) throw ValidationError("cannot internalize the trivial word");
    return finish(intern(e));
  }

 private:
  using Key = std::vector<std::pair<GenId, int>>;

  static Key key_of(const std::vector<Letter>& w) {
    Key k;
    k.reserve(w.size());
    for (const auto& l : w) k.emplace_back(l.gen, l.exp);
    return k;
  }

  // Splits at every point where the word with S0 letters removed is freely trivial.
  std::vector<std::vector<Letter>> split(const std::vector<Letter>& w) const {
    std::vector<std::vector<Letter>> factors;
    std::vector<Letter> stack;
    std::size_t start = 0;
    for (std::size_t p = 0; p < w.size(); ++p) {
      const auto& l = w[p];
      if (s0_.count(l.gen) == 0) {
        if (!stack.empty() && stack.back().gen == l.gen && stack.back().exp == -l.exp) {
          stack.pop_back();
        } else {
          stack.push_back(l);
        }
      }
      if (stack.empty()) {
        factors.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(start), w.begin() + static_cast<std::ptrdiff_t>(p + 1));
        start = p + 1;
      }
    }
    if (!stack.empty()) throw ValidationError("word is not in the normal closure of S0");
    return factors;
  }

  Internalization finish(GenId target) {
    return Internalization{std::move(ext_), std::move(ancillas_), std::move(added_), std::move(definitions_), target};
  }

  GenId intern(const WordExpr& e) {
    if (e.kind == WordExpr::Kind::Letter) {
      if (s0_.count(e.letter.gen) == 0) throw ValidationError("leaf " + ext_.name(e.letter.gen) + " is not in S0");
      return e.letter.gen;
    }
    const auto key = key_of(e.flatten().letters);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    GenId result = 0;
    if (e.kind == WordExpr::Kind::Conjugate) {
      if (e.children.size() != 1) throw ValidationError("a conjugate has exactly one operand");
      if (s1_.count(e.letter.gen) == 0 || s0_.count(e.letter.gen) != 0) {
        throw ValidationError("conjugating letter must be in S1 \\ S0");
      }
      result = conjugation(e.letter, intern(e.children.front()));
    } else {
      if (e.children.size() < 2) throw ValidationError("a product has at least two factors");
      std::vector<GenId> xs;
      for (const auto& c : e.children) xs.push_back(intern(c));
      result = product(xs);
    }
    memo_.emplace(key, result);
    return result;
  }

  // W with W X_1 ... X_k = e, commuting with every X_i.
  GenId product(const std::vector<GenId>& xs) {
    GroupWord value;
    for (auto x : xs) value.letters.push_back(Letter{x, 1});
    const auto result = fresh(inverse(value));
    GroupWord relation = GroupWord::gen(result);
    for (auto x : xs) relation.letters.push_back(Letter{x, 1});
    relate(relation, RelationKind::Linear);
    for (auto x : xs) {
      if (x != result) relate(commutator(GroupWord::gen(result), GroupWord::gen(x)), RelationKind::Commutation);
    }
    std::set<std::pair<GenId, GenId>> seen;
    for (std::size_t a = 0; a < xs.size(); ++a) {
      for (std::size_t b = a + 1; b < xs.size(); ++b) {
        if (xs[a] == xs[b] || !seen.emplace(std::min(xs[a], xs[b]), std::max(xs[a], xs[b])).second) continue;
        relate(commutator(GroupWord::gen(xs[a]), GroupWord::gen(xs[b])), RelationKind::Commutation);
      }
    }
    return result;
  }

  // W = z^e X z^-e.
  GenId conjugation(Letter z, GenId x) {
    const auto result = fresh(GroupWord{{z.gen, z.exp}, {x, 1}, {z.gen, -z.exp}});
    const int back = ext_.involutary(z.gen) ? 1 : -1;
    const auto kind = ext_.involutary(z.gen) ? RelationKind::Conjugacy : RelationKind::Action;
    if (z.exp > 0) {
      // W = z X z^-1
      relate(GroupWord{{z.gen, 1}, {x, 1}, {z.gen, back}, {result, -1}}, kind);
    } else {
      // z W z^-1 = X
      relate(GroupWord{{z.gen, 1}, {result, 1}, {z.gen, back}, {x, -1}}, kind);
    }
    return result;
  }

  GenId fresh(GroupWord definition) {
    const auto name = prefix_ + std::to_string(ancillas_.size() + 1);
    const auto g = ext_.add_generator(name, true);
    ancillas_.push_back(g);
    definitions_.push_back(std::move(definition));
    return g;
  }

  void relate(GroupWord w, RelationKind kind) {
    ext_.add_relation(w, kind);
    added_.push_back(Relation{std::move(w), kind});
  }

  GenId intern(const std::vector<Letter>& w) {
    if (w.size() == 1 && s0_.count(w.front().gen) != 0) return w.front().gen;
    const auto key = key_of(w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto factors = split(w);
    GenId result = 0;
    if (factors.size() >= 2) {
      std::vector<GenId> xs;
      xs.reserve(factors.size());
      for (const auto& f : factors) xs.push_back(intern(f));
      result = product(xs);
    } else {
      const auto& first = w.front();
      const auto& last = w.back();
      if (w.size() < 3 || s0_.count(first.gen) != 0 || first.gen != last.gen || first.exp != -last.exp) {
        throw ValidationError("word is not in the normal closure of S0");
      }
      const std::vector<Letter> inner(w.begin() + 1, w.end() - 1);
      result = conjugation(first, intern(inner));
    }
    memo_.emplace(key, result);
    return result;
  }

  Presentation ext_;
  std::string prefix_;
  std::set<GenId> s0_;
  std::set<GenId> s1_;
  std::map<Key, GenId> memo_;
  std::vector<GenId> ancillas_;
  std::vector<Relation> added_;
  std::vector<GroupWord> definitions_;
};

}  // namespace

Internalization internalize_word(const Presentation& pres, const GroupWord& w, const std::vector<GenId>& s0,
                                 const std::vector<GenId>& s1, std::string_view prefix) {
  return Internalizer(pres, s0, s1, prefix).run(w);
}

Internalization internalize_expr(const Presentation& pres, const WordExpr& e, const std::vector<GenId>& s0,
                                 const std::vector<GenId>& s1, std::string_view prefix) {
  return Internalizer(pres, s0, s1, prefix).run(e);
}

// ---------------------------------------------------------------------------
// Files

namespace {

bool is_square(const GroupWord& w, GenId g) {
  return w.size() == 2 && w.letters[0].gen == g && w.letters[1].gen == g && w.letters[0].exp == w.letters[1].exp;
}

RelationKind guess_kind(const GroupWord& w, const Presentation& p) {
  if (w.size() == 2 && w.letters[0] == w.letters[1]) return RelationKind::Involution;
  if (w.size() == 4 && w.letters[0].exp == 1 && w.letters[1].exp == 1 && w.letters[2] == Letter{w.letters[0].gen, -1} &&
      w.letters[3] == Letter{w.letters[1].gen, -1}) {
    return RelationKind::Commutation;
  }
  if (w.size() == 4 && w.letters[0] == w.letters[2] && p.involutary(w.letters[0].gen)) return RelationKind::Conjugacy;
  return RelationKind::Other;
}

// Relations implied by the `gen` lines themselves.
bool implied(const GroupWord& w, const Presentation& p) {
  for (const auto& r : p.relations()) {
    if ((r.kind == RelationKind::Central || r.kind == RelationKind::Involution) && r.word == w) return true;
  }
  return false;
}

}  // namespace

Presentation read_grp(std::istream& in) {
  Presentation p;
  std::vector<std::string> pending;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "gen") {
      if (!pending.empty()) throw ValidationError("grp line " + std::to_string(lineno) + ": gen after rel");
      std::string name;
      std::string flag;
      if (!(ls >> name)) throw ValidationError("grp line " + std::to_string(lineno) + ": missing name");
      const bool inv = static_cast<bool>(ls >> flag);
      if (inv && flag != "inv") throw ValidationError("grp line " + std::to_string(lineno) + ": unknown flag " + flag);
      if (name == "J") {
        p.close_over_z2();
      } else {
        p.add_generator(name, inv);
      }
    } else if (head == "rel") {
      std::string rest;
      std::getline(ls, rest);
      pending.push_back(rest);
    } else {
      throw ValidationError("grp line " + std::to_string(lineno) + ": expected gen or rel");
    }
  }
  for (const auto& text : pending) {
    auto w = parse_word(text, p);
    if (w.empty()) throw ValidationError("grp: empty relation");
    if (implied(w, p)) continue;
    const auto kind = guess_kind(w, p);
    if (kind == RelationKind::Involution && is_square(w, w.letters[0].gen) && p.involutary(w.letters[0].gen)) continue;
    p.add_relation(std::move(w), kind);
  }
  return p;
}

void write_grp(std::ostream& out, const Presentation& p) {
  for (GenId g = 0; g < p.generator_count(); ++g) {
    if (p.j() == g) continue;
    out << "gen " << p.name(g) << (p.involutary(g) ? " inv" : "") << '\n';
  }
  if (p.over_z2()) out << "gen J\n";
  for (const auto& r : p.relations()) {
    if (r.kind == RelationKind::Central) continue;
    if (r.kind == RelationKind::Involution && r.word.size() == 2 && p.involutary(r.word.letters[0].gen)) continue;
    out << "rel " << to_string(r.word, p) << '\n';
  }
}

Presentation load_grp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return read_grp(in);
}

void save_grp(const std::string& path, const Presentation& pres) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  write_grp(out, pres);
}

std::string grp_json(const Presentation& p) {
  nlohmann::json j;
  j["over_z2"] = p.over_z2();
  auto& gens = j["generators"] = nlohmann::json::array();
  for (GenId g = 0; g < p.generator_count(); ++g) {
    gens.push_back({{"name", p.name(g)}, {"involutary", p.involutary(g)}});
  }
  auto& rels = j["relations"] = nlohmann::json::array();
  for (const auto& r : p.relations()) {
    rels.push_back({{"word", to_string(r.word, p)}, {"kind", std::string(to_string(r.kind))}});
  }
  return j.dump(2);
}

}  // namespace lsg
