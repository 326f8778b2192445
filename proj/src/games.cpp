#include "lsg/games.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lsg/matrix_json.hpp"

namespace lsg {

// ---------------------------------------------------------------------------
// Game

std::optional<std::size_t> Game::position(std::size_t i, std::size_t j) const {
  const auto& v = supports.at(i);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == j) return k;
  }
  return std::nullopt;
}

bool Game::predicate(std::size_t i, const BitAssignment& a, std::size_t j, int b) const {
  const auto k = position(i, j);
  return !k || a.at(*k) == b;
}

Game game_of(const BinaryLinearSystem& sys) {
  Game g{sys, {}, {}};
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    g.supports.push_back(row_support(sys, i));
    g.alice_outputs.push_back(satisfying_assignments(sys, i));
  }
  return g;
}

namespace {

std::string bits(const BitAssignment& a) {
  std::string s;
  for (auto v : a) s.push_back(v ? '1' : '0');
  return s;
}

}  // namespace

std::string game_json(const Game& game) {
  nlohmann::json j;
  j["alice_inputs"] = game.alice_inputs();
  j["bob_inputs"] = game.bob_inputs();
  auto& rows = j["rows"] = nlohmann::json::array();
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    std::vector<std::size_t> cols;
    for (auto c : game.supports[i]) cols.push_back(c + 1);
    std::vector<std::string> outs;
    for (const auto& a : game.alice_outputs[i]) outs.push_back(bits(a));
    rows.push_back({{"input", i + 1}, {"variables", cols}, {"rhs", game.sys.rhs(i) ? 1 : 0}, {"outputs", outs}});
  }
  j["bob_outputs"] = {0, 1};
  j["predicate"] = "consistent: j not in V_i, or a_j == b";
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Strategies

namespace {

CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

void require_shape(const CMatrix& m, Eigen::Index d, const std::string& what) {
  if (m.rows() != d || m.cols() != d) throw ValidationError(what + " has the wrong shape");
}

void require_layout(const Game& game, std::size_t x_count, const std::vector<std::size_t>& row_sizes) {
  if (x_count != game.bob_inputs()) throw ValidationError("strategy has the wrong number of Bob observables");
  if (row_sizes.size() != game.alice_inputs()) throw ValidationError("strategy has the wrong number of Alice inputs");
}

}  // namespace

void validate(const ObservableStrategy& s, const Game& game) {
  std::vector<std::size_t> sizes;
  for (const auto& row : s.y) sizes.push_back(row.size());
  require_layout(game, s.x.size(), sizes);
  const auto d = s.dim;
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    const auto what = "X_" + std::to_string(j + 1);
    require_shape(s.x[j], d, what);
    if (involution_defect(s.x[j]) > kStrategyTol) throw ValidationError(what + " is not an involution");
  }
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    const auto& row = s.y[i];
    if (row.size() != game.supports[i].size()) throw ValidationError("row " + std::to_string(i + 1) + " has the wrong number of observables");
    CMatrix prod = identity(d);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto what = "Y_" + std::to_string(i + 1) + "," + std::to_string(game.supports[i][k] + 1);
      require_shape(row[k], d, what);
      if (involution_defect(row[k]) > kStrategyTol) throw ValidationError(what + " is not an involution");
      for (std::size_t l = 0; l < k; ++l) {
        if (commutator_norm(row[k], row[l]) > kStrategyTol) throw ValidationError(what + " does not commute within its row");
      }
      prod = prod * row[k];
    }
    const double sign = game.sys.rhs(i) ? -1.0 : 1.0;
    if (hs_distance(prod, (sign * identity(d)).eval()) > kStrategyTol) {
      throw ValidationError("row " + std::to_string(i + 1) + ": product of observables is not (-1)^b");
    }
  }
}

void validate(const MeasurementStrategy& s, const Game& game) {
  std::vector<std::size_t> sizes;
  for (const auto& row : s.alice) sizes.push_back(row.size());
  require_layout(game, s.bob.size(), sizes);
  const auto d = s.dim;
  auto check_measurement = [&](const std::vector<CMatrix>& ps, const std::string& what) {
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t a = 0; a < ps.size(); ++a) {
      require_shape(ps[a], d, what);
      if (hs_distance(ps[a], ps[a].adjoint().eval()) > kStrategyTol) throw ValidationError(what + " is not Hermitian");
      if (hs_distance((ps[a] * ps[a]).eval(), ps[a]) > kStrategyTol) throw ValidationError(what + " is not a projector");
      for (std::size_t b = 0; b < a; ++b) {
        if (hs_norm((ps[a] * ps[b]).eval()) > kStrategyTol) throw ValidationError(what + " has overlapping outcomes");
      }
      sum += ps[a];
    }
    if (identity_defect(sum) > kStrategyTol) throw ValidationError(what + " does not sum to I");
  };
  for (std::size_t i = 0; i < s.alice.size(); ++i) {
    if (s.alice[i].size() != game.alice_outputs[i].size()) throw ValidationError("row " + std::to_string(i + 1) + " has the wrong number of outcomes");
    check_measurement(s.alice[i], "Alice measurement " + std::to_string(i + 1));
  }
  for (std::size_t j = 0; j < s.bob.size(); ++j) {
    check_measurement({s.bob[j][0], s.bob[j][1]}, "Bob measurement " + std::to_string(j + 1));
  }
}

MeasurementStrategy observables_to_measurements(const ObservableStrategy& s, const Game& game) {
  validate(s, game);
  const auto d = s.dim;
  MeasurementStrategy out;
  out.dim = d;
  for (const auto& x : s.x) out.bob.push_back({(identity(d) + x) / 2.0, (identity(d) - x) / 2.0});
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    std::vector<CMatrix> row;
    for (const auto& a : game.alice_outputs[i]) {
      CMatrix m = identity(d);
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double sign = a[k] ? -1.0 : 1.0;
        m = m * ((identity(d) + sign * s.y[i][k]) / 2.0);
      }
      row.push_back(std::move(m));
    }
    out.alice.push_back(std::move(row));
  }
  return out;
}

ObservableStrategy measurements_to_observables(const MeasurementStrategy& s, const Game& game) {
  validate(s, game);
  const auto d = s.dim;
  ObservableStrategy out;
  out.dim = d;
  for (const auto& n : s.bob) out.x.push_back(n[0] - n[1]);
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    std::vector<CMatrix> row(game.supports[i].size(), CMatrix::Zero(d, d));
    for (std::size_t a = 0; a < game.alice_outputs[i].size(); ++a) {
      const auto& bits = game.alice_outputs[i][a];
      for (std::size_t k = 0; k < bits.size(); ++k) row[k] += (bits[k] ? -1.0 : 1.0) * s.alice[i][a];
    }
    out.y.push_back(std::move(row));
  }
  return out;
}

ObservableStrategy strategy_from_rep(const ApproxRep& rep, const BinaryLinearSystem& sys,
                                     const std::vector<std::string>& names) {
  const auto n = sys.cols();
  const auto resolved = names.empty() ? default_names("x", n) : names;
  if (resolved.size() != n) throw ValidationError("strategy_from_rep: expected one name per variable");
  const auto d = rep.dim();
  if (rep.has("J") && hs_distance(rep.at("J"), (-identity(d)).eval()) > kExactTol) {
    throw ValidationError("strategy_from_rep: rep(J) is not -I; apply split_on_j first");
  }
  ObservableStrategy out;
  out.dim = d;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& x = rep.at(resolved[j]);
    if (involution_defect(x) > kExactTol) throw ValidationError("strategy_from_rep: " + resolved[j] + " is not an involution; round first");
    out.x.push_back(x);
  }
  for (std::size_t i = 0; i < sys.rows(); ++i) {
    const auto v = row_support(sys, i);
    // v is ascending, so the last entry is the maximal element.
    std::vector<CMatrix> w_images;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) w_images.push_back(out.x[v[k]]);
    auto psi = stabilize_abelian(w_images).images;
    std::vector<CMatrix> row;
    CMatrix last = (sys.rhs(i) ? -1.0 : 1.0) * identity(d);
    for (auto& m : psi) {
      row.push_back(m.transpose());
      last = last * row.back();
    }
    row.push_back(std::move(last));
    out.y.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correlations

CorrelationTable correlation(const MeasurementStrategy& s, const Game& game) {
  if (s.bob.size() != game.bob_inputs() || s.alice.size() != game.alice_inputs()) {
    throw ValidationError("correlation: strategy does not match the game");
  }
  const auto d = static_cast<double>(s.dim);
  CorrelationTable t;
  t.p.resize(game.alice_inputs());
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    t.p[i].resize(game.bob_inputs());
    for (std::size_t j = 0; j < game.bob_inputs(); ++j) {
      for (const auto& m : s.alice[i]) {
        std::array<double, 2> entry{};
        for (int b = 0; b < 2; ++b) {
          const auto& nb = s.bob[j][static_cast<std::size_t>(b)];
          if (m.rows() != nb.rows() || m.cols() != nb.cols()) throw ValidationError("correlation: dimension mismatch");
          // tr(M^T N) = sum of the entrywise product.
          entry[static_cast<std::size_t>(b)] = m.cwiseProduct(nb).sum().real() / d;
        }
        t.p[i][j].push_back(entry);
      }
    }
  }
  return t;
}

CorrelationTable correlation(const ObservableStrategy& s, const Game& game) {
  return correlation(observables_to_measurements(s, game), game);
}

std::string correlation_csv(const CorrelationTable& table, const Game& game) {
  std::ostringstream out;
  out << "i,j,a,b,p\n" << std::fixed << std::setprecision(12);
  for (std::size_t i = 0; i < table.p.size(); ++i) {
    for (std::size_t j = 0; j < table.p[i].size(); ++j) {
      for (std::size_t a = 0; a < table.p[i][j].size(); ++a) {
        for (int b = 0; b < 2; ++b) {
          double p = table.at(i, j, a, b);
          if (p < 0.0 && p >= -kStrategyTol) p = 0.0;
          out << i + 1 << ',' << j + 1 << ',' << bits(game.alice_outputs[i][a]) << ',' << b << ',' << p << '\n';
        }
      }
    }
  }
  return out.str();
}

namespace {

std::vector<PairStat> stats_from(const CorrelationTable& table, const ObservableStrategy& obs, const Game& game) {
  std::vector<PairStat> out;
  const auto d = static_cast<double>(obs.dim);
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    for (std::size_t k = 0; k < game.supports[i].size(); ++k) {
      const auto j = game.supports[i][k];
      PairStat s;
      s.i = i;
      s.j = j;
      for (std::size_t a = 0; a < game.alice_outputs[i].size(); ++a) {
        s.probability += table.at(i, j, a, game.alice_outputs[i][a][k]);
      }
      s.bias = obs.y[i][k].cwiseProduct(obs.x[j]).sum().real() / d;
      s.bias_from_correlation = 2.0 * s.probability - 1.0;
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

std::vector<PairStat> win_stats(const ObservableStrategy& s, const Game& game) {
  return stats_from(correlation(s, game), s, game);
}

std::vector<PairStat> win_stats(const MeasurementStrategy& s, const Game& game) {
  return stats_from(correlation(s, game), measurements_to_observables(s, game), game);
}

// ---------------------------------------------------------------------------
// Classical baseline

bool classical_perfect(const BinaryLinearSystem& sys) { return gf2_solve(sys).has_value(); }

std::optional<bool> classical_perfect_exhaustive(const BinaryLinearSystem& sys, double limit) {
  const auto game = game_of(sys);
  double count = 1.0;
  for (const auto& outs : game.alice_outputs) count *= static_cast<double>(outs.size());
  if (count > limit) return std::nullopt;

  const auto m = game.alice_inputs();
  std::vector<std::size_t> choice(m, 0);
  std::vector<int> value(sys.cols());
  while (true) {
    std::fill(value.begin(), value.end(), -1);
    bool consistent = true;
    for (std::size_t i = 0; i < m && consistent; ++i) {
      const auto& a = game.alice_outputs[i][choice[i]];
      for (std::size_t k = 0; k < a.size(); ++k) {
        auto& v = value[game.supports[i][k]];
        if (v >= 0 && v != a[k]) {
          consistent = false;
          break;
        }
        v = a[k];
      }
    }
    // Bob answers with Alice's common value (or anything for unused columns).
    if (consistent) return true;
    std::size_t i = 0;
    while (i < m && ++choice[i] == game.alice_outputs[i].size()) choice[i++] = 0;
    if (i == m) return false;
  }
}

// ---------------------------------------------------------------------------
// Sampling and files

ObservableStrategy random_strategy(const Game& game, Eigen::Index d, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  auto signs = [&] {
    Eigen::VectorXcd v(d);
    for (Eigen::Index k = 0; k < d; ++k) v(k) = coin(rng) ? -1.0 : 1.0;
    return v;
  };
  ObservableStrategy s;
  s.dim = d;
  for (std::size_t j = 0; j < game.bob_inputs(); ++j) {
    const auto u = random_unitary(d, rng);
    s.x.push_back(u * signs().asDiagonal() * u.adjoint());
  }
  for (std::size_t i = 0; i < game.alice_inputs(); ++i) {
    const auto u = random_unitary(d, rng);
    Eigen::VectorXcd last = Eigen::VectorXcd::Constant(d, game.sys.rhs(i) ? -1.0 : 1.0);
    std::vector<CMatrix> row;
    for (std::size_t k = 0; k + 1 < game.supports[i].size(); ++k) {
      const auto v = signs();
      last = last.cwiseProduct(v);
      row.push_back(u * v.asDiagonal() * u.adjoint());
    }
    row.push_back(u * last.asDiagonal() * u.adjoint());
    s.y.push_back(std::move(row));
  }
  return s;
}

std::string strategy_json(const ObservableStrategy& s) {
  nlohmann::json j;
  j["dimension"] = s.dim;
  auto& x = j["x"] = nlohmann::json::array();
  for (const auto& m : s.x) x.push_back(matrix_to_json(m));
  auto& y = j["y"] = nlohmann::json::array();
  for (const auto& row : s.y) {
    auto r = nlohmann::json::array();
    for (const auto& m : row) r.push_back(matrix_to_json(m));
    y.push_back(std::move(r));
  }
  return j.dump();
}

ObservableStrategy read_strategy_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ObservableStrategy s;
    s.dim = j.at("dimension").get<Eigen::Index>();
    if (s.dim <= 0) throw ValidationError("strategy json: dimension must be positive");
    std::size_t col = 0;
    for (const auto& m : j.at("x")) s.x.push_back(matrix_from_json(m, s.dim, "X_" + std::to_string(++col)));
    std::size_t row_index = 0;
    for (const auto& row : j.at("y")) {
      ++row_index;
      std::vector<CMatrix> r;
      for (const auto& m : row) r.push_back(matrix_from_json(m, s.dim, "row " + std::to_string(row_index) + " observable"));
      s.y.push_back(std::move(r));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("strategy json: ") + e.what());
  }
}

ObservableStrategy load_strategy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_strategy_json(ss.str());
}

void save_strategy(const std::string& path, const ObservableStrategy& s) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << strategy_json(s) << '\n';
}

}  // namespace lsg
