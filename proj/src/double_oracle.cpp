#include "cim/double_oracle.hpp"

#include <algorithm>
#include <optional>

#include "cim/best_response.hpp"

namespace cim {

bool RestrictedGame::has_row(const Allocation& a) const {
  return std::find(rows_.begin(), rows_.end(), a) != rows_.end();
}

bool RestrictedGame::has_col(const Allocation& a) const {
  return std::find(cols_.begin(), cols_.end(), a) != cols_.end();
}

bool RestrictedGame::add_row(const Allocation& a) {
  if (has_row(a)) return false;
  spec_->check_feasible(a, Player::kOne);
  rows_.push_back(a);
  if (cols_.empty()) return true;
  std::vector<double> entries(cols_.size());
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    entries[j] = contest_payoff(a, cols_[j], spec_->values());
  }
  matrix_.add_row(entries);
  return true;
}

bool RestrictedGame::add_col(const Allocation& a) {
  if (has_col(a)) return false;
  spec_->check_feasible(a, Player::kTwo);
  cols_.push_back(a);
  std::vector<double> entries(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    entries[i] = contest_payoff(rows_[i], a, spec_->values());
  }
  if (cols_.size() == 1) {
    // First column: the matrix starts here, rows_.size() x 1.
    matrix_ = PayoffMatrix(rows_.size(), 1, std::move(entries));
  } else {
    matrix_.add_col(entries);
  }
  return true;
}

RestrictedGame::Solution RestrictedGame::solve() const {
  if (rows_.empty() || cols_.empty()) throw Error("restricted game has no actions");
  const ZeroSumSolution sol = solve_zero_sum(matrix_);
  auto to_mixed = [](std::span<const Allocation> actions, std::span<const double> w) {
    std::vector<Allocation> support;
    std::vector<double> probs;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (w[i] > 0.0) {
        support.push_back(actions[i]);
        probs.push_back(w[i]);
      }
    }
    return MixedStrategy(std::move(support), std::move(probs));
  };
  return {to_mixed(rows_, sol.row_strategy), to_mixed(cols_, sol.col_strategy),
          sol.value};
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kGapEpsilon:
      return "gap_epsilon";
    case Termination::kMaxIterations:
      return "max_iterations";
  }
  return "unknown";
}

EquilibriumResult double_oracle(const GameSpec& spec, const Allocation& init1,
                                const Allocation& init2,
                                const DoubleOracleOptions& options) {
  if (options.epsilon < 0.0) throw Error("epsilon must be >= 0");
  if (options.max_iterations < 1) throw Error("max_iterations must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  RestrictedGame game(spec);
  game.add_row(init1);
  game.add_col(init2);

  EquilibriumResult result;
  for (int iter = 1;; ++iter) {
    RestrictedGame::Solution sol = game.solve();
    const BestResponse br1 = best_response(sol.nash2, spec, Player::kOne);
    const BestResponse br2 = best_response(sol.nash1, spec, Player::kTwo);
    const double v1 = br1.payoff;
    const double v2 = -br2.payoff;

    IterationRecord rec{iter,
                        v1,
                        v2,
                        sol.value,
                        game.rows().size(),
                        game.cols().size(),
                        sol.nash1.size(),
                        sol.nash2.size()};
    result.trace.push_back(rec);
    if (options.on_iteration) options.on_iteration(rec);

    const bool known1 = game.has_row(br1.allocation);
    const bool known2 = game.has_col(br2.allocation);
    std::optional<Termination> stop;
    if (known1 && known2) {
      stop = Termination::kConverged;
    } else if (v1 - v2 < options.epsilon) {
      stop = Termination::kGapEpsilon;
    } else if (iter >= options.max_iterations) {
      stop = Termination::kMaxIterations;
    }
    if (stop) {
      result.nash1 = std::move(sol.nash1);
      result.nash2 = std::move(sol.nash2);
      result.game_value = sol.value;
      result.iterations = iter;
      result.gap = v1 - v2;
      result.termination = *stop;
      break;
    }
    game.add_row(br1.allocation);
    game.add_col(br2.allocation);
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace cim
