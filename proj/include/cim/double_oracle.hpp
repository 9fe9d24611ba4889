#pragma once

// Double Oracle equilibrium search for the allocation game.
//
// The restricted game holds a growing list of pure actions per player. Each
// iteration solves it exactly, asks the best-response oracle for each side's
// reply to the other's restricted equilibrium strategy, and adds the replies.
// v1 is player 1's best-reply payoff against nash2 and v2 is player 1's
// payoff when player 2 best-replies to nash1; v1 >= value >= v2, so v1 - v2
// bounds how far the restricted equilibrium is from the full one.

#include <chrono>
#include <functional>
#include <string_view>
#include <vector>

#include "cim/game.hpp"
#include "cim/zero_sum.hpp"

namespace cim {

class RestrictedGame {
 public:
  explicit RestrictedGame(const GameSpec& spec) : spec_(&spec) {}

  std::span<const Allocation> rows() const { return rows_; }
  std::span<const Allocation> cols() const { return cols_; }
  const PayoffMatrix& matrix() const { return matrix_; }

  bool has_row(const Allocation& a) const;
  bool has_col(const Allocation& a) const;

  // Adds a player-1 (row) or player-2 (column) action, filling only the new
  // row or column. Returns false if the action was already present.
  bool add_row(const Allocation& a);
  bool add_col(const Allocation& a);

  // Restricted equilibrium expressed as mixed strategies over the actions.
  struct Solution {
    MixedStrategy nash1;
    MixedStrategy nash2;
    double value;
  };
  Solution solve() const;

 private:
  const GameSpec* spec_;
  std::vector<Allocation> rows_;
  std::vector<Allocation> cols_;
  PayoffMatrix matrix_;
};

enum class Termination { kConverged, kGapEpsilon, kMaxIterations };
std::string_view to_string(Termination t);

struct IterationRecord {
  int iteration;
  double v1;
  double v2;
  double restricted_value;
  std::size_t rows;
  std::size_t cols;
  std::size_t support1;
  std::size_t support2;
};

struct EquilibriumResult {
  MixedStrategy nash1;
  MixedStrategy nash2;
  double game_value = 0.0;
  int iterations = 0;
  double gap = 0.0;  // v1 - v2 at termination
  double wall_time_s = 0.0;
  Termination termination = Termination::kMaxIterations;
  std::vector<IterationRecord> trace;

  bool converged() const { return termination != Termination::kMaxIterations; }
};

struct DoubleOracleOptions {
  // Stop once v1 - v2 < epsilon. 0 runs to exact convergence.
  double epsilon = 0.0;
  int max_iterations = 10000;
  std::function<void(const IterationRecord&)> on_iteration;
};

EquilibriumResult double_oracle(const GameSpec& spec, const Allocation& init1,
                                const Allocation& init2,
                                const DoubleOracleOptions& options = {});

}  // namespace cim
