#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lsg/gf2.hpp"
#include "lsg/linalg.hpp"
#include "lsg/replab.hpp"

namespace lsg {

inline constexpr double kStrategyTol = 1e-9;

/// Linear system game: Alice gets a row i and answers a satisfying assignment
/// of V_i, Bob gets a column j and answers a bit. They win iff j is not in V_i
/// or Alice's value for x_j equals Bob's bit.
struct Game {
  BinaryLinearSystem sys;
  std::vector<std::vector<std::size_t>> supports;            // V_i, ascending
  std::vector<std::vector<BitAssignment>> alice_outputs;     // S_i, in support order

  std::size_t alice_inputs() const { return supports.size(); }
  std::size_t bob_inputs() const { return sys.cols(); }
  /// Position of column j in V_i, if present.
  std::optional<std::size_t> position(std::size_t i, std::size_t j) const;
  bool predicate(std::size_t i, const BitAssignment& a, std::size_t j, int b) const;
};

Game game_of(const BinaryLinearSystem& sys);
std::string game_json(const Game& game);

/// Observables on the maximally entangled state of C^d (x) C^d.
struct ObservableStrategy {
  Eigen::Index dim = 0;
  std::vector<CMatrix> x;               // Bob, one per column
  std::vector<std::vector<CMatrix>> y;  // Alice, y[i][k] for the k-th column of V_i
};

/// Throws ValidationError if involution, row-product or commutation constraints fail.
void validate(const ObservableStrategy& s, const Game& game);

struct MeasurementStrategy {
  Eigen::Index dim = 0;
  std::vector<std::vector<CMatrix>> alice;  // alice[i][a], a indexing S_i
  std::vector<std::array<CMatrix, 2>> bob;  // bob[j][b]
};

void validate(const MeasurementStrategy& s, const Game& game);

MeasurementStrategy observables_to_measurements(const ObservableStrategy& s, const Game& game);
ObservableStrategy measurements_to_observables(const MeasurementStrategy& s, const Game& game);

/// Strategy from a representation of the solution group with J -> -I and
/// exact involutions. Alice's observables for the row minus its largest column
/// come from stabilize_abelian, transposed; the last one is fixed by the row.
ObservableStrategy strategy_from_rep(const ApproxRep& rep, const BinaryLinearSystem& sys,
                                     const std::vector<std::string>& names = {});

/// p[i][j][a][b] = (1/d) tr((M^i_a)^T N^j_b).
struct CorrelationTable {
  std::vector<std::vector<std::vector<std::array<double, 2>>>> p;

  double at(std::size_t i, std::size_t j, std::size_t a, int b) const { return p[i][j][a][static_cast<std::size_t>(b)]; }
};

CorrelationTable correlation(const MeasurementStrategy& s, const Game& game);
CorrelationTable correlation(const ObservableStrategy& s, const Game& game);
/// CSV with header i,j,a,b,p; indices one-based, a as a bit string over V_i.
/// Negative values down to -1e-9 are printed as 0.
std::string correlation_csv(const CorrelationTable& table, const Game& game);

struct PairStat {
  std::size_t i = 0;
  std::size_t j = 0;
  double probability = 0.0;          // p_ij from the correlation
  double bias = 0.0;                 // (1/d) tr(Y_ij^T X_j)
  double bias_from_correlation = 0.0;  // 2 p_ij - 1
};

/// One entry per pair with j in V_i, rows first.
std::vector<PairStat> win_stats(const ObservableStrategy& s, const Game& game);
std::vector<PairStat> win_stats(const MeasurementStrategy& s, const Game& game);

/// Perfect classical strategy exists iff the system is solvable.
bool classical_perfect(const BinaryLinearSystem& sys);
/// Exhaustive search over Alice's deterministic strategies; nullopt when
/// there are more than `limit` of them.
std::optional<bool> classical_perfect_exhaustive(const BinaryLinearSystem& sys, double limit = 1e6);

/// Random involutions for Bob and random commuting involutions per row for Alice.
ObservableStrategy random_strategy(const Game& game, Eigen::Index d, std::mt19937_64& rng);

std::string strategy_json(const ObservableStrategy& s);
ObservableStrategy read_strategy_json(const std::string& text);
ObservableStrategy load_strategy(const std::string& path);
void save_strategy(const std::string& path, const ObservableStrategy& s);

}  // namespace lsg
