#pragma once

// Exact solution of finite two-player zero-sum matrix games by linear
// programming.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cim/common.hpp"

namespace cim {

// Dense row-major payoff matrix from the row player's perspective.
class PayoffMatrix {
 public:
  PayoffMatrix() = default;
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  // Grows the matrix by one row or column; `entries` must match the other
  // dimension (an empty matrix accepts any length for its first row).
  void add_row(std::span<const double> entries);
  void add_col(std::span<const double> entries);

  std::string dump() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct ZeroSumSolution {
  std::vector<double> row_strategy;  // maximin for the row player
  std::vector<double> col_strategy;  // minimax for the column player
  double value = 0.0;
};

// Probabilities below this are dropped and the rest renormalized.
inline constexpr double kSupportCutoff = 1e-12;

// Solves max_p min_q p'Mq. The LP is max 1'y s.t. (M - c + 1) y <= 1, y >= 0
// with c = min M, solved by a dense tableau simplex (largest coefficient
// entering rule, switching to Bland's rule on degenerate stalls). The row
// strategy is read off the dual. Throws Error, with the matrix in the
// message, if the result fails the optimality certificate
//   max_i (Mq)_i <= v + 1e-6  and  min_j (p'M)_j >= v - 1e-6.
ZeroSumSolution solve_zero_sum(const PayoffMatrix& m);

}  // namespace cim
