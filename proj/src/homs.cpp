#include <cmath>
#include <numeric>
#include <sstream>

#include "lsg/replab.hpp"

namespace lsg {

namespace {

// (p q)(i) = p(q(i)): q acts first.
Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i]];
  return out;
}

Permutation invert(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint8_t>(i);
  return out;
}

bool relation_holds(const GroupWord& w, const std::vector<Permutation>& images,
                    const std::vector<Permutation>& inverses, unsigned degree) {
  Permutation acc(degree);
  std::iota(acc.begin(), acc.end(), std::uint8_t{0});
  for (const auto& l : w.letters) acc = compose(acc, l.exp > 0 ? images[l.gen] : inverses[l.gen]);
  return is_identity(acc);
}

}  // namespace

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

std::string to_cycle_string(const Permutation& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    out << '(';
    std::size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = true;
      if (!first) out << ' ';
      out << i + 1;
      first = false;
      i = p[i];
    }
    out << ')';
  }
  const auto s = out.str();
  return s.empty() ? "()" : s;
}

std::vector<Homomorphism> enumerate_homs(const Presentation& pres, unsigned degree, double budget) {
  if (degree == 0 || degree > 8) throw ValidationError("enumerate_homs: degree must be in 1..8");
  const auto gens = pres.generator_count();
  double group_order = 1.0;
  for (unsigned i = 2; i <= degree; ++i) group_order *= i;
  const double search = std::pow(group_order, static_cast<double>(gens));
  if (search > budget) {
    throw FeasibilityError("enumerate_homs: search space " + std::to_string(search) + " exceeds the budget");
  }

  std::vector<Permutation> all;
  Permutation p(degree);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // A relation is checked as soon as its largest generator is assigned.
  std::vector<std::vector<const GroupWord*>> due(gens);
  for (const auto& r : pres.relations()) {
    GenId top = 0;
    for (const auto& l : r.word.letters) top = std::max(top, l.gen);
    if (r.word.empty()) continue;
    due[top].push_back(&r.word);
  }

  std::vector<Homomorphism> out;
  std::vector<Permutation> images(gens, Permutation(degree));
  std::vector<Permutation> inverses(gens, Permutation(degree));
  auto recurse = [&](auto&& self, std::size_t g) -> void {
    if (g == gens) {
      out.push_back(Homomorphism{images});
      return;
    }
    for (const auto& cand : all) {
      images[g] = cand;
      inverses[g] = invert(cand);
      bool ok = true;
      for (const auto* w : due[g]) {
        if (!relation_holds(*w, images, inverses, degree)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, g + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace lsg
