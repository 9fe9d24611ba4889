#include "cim/zero_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cim {

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw Error("payoff matrix size mismatch");
}

PayoffMatrix::PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  for (const auto& r : rows) add_row(std::vector<double>(r));
}

void PayoffMatrix::add_row(std::span<const double> entries) {
  if (rows_ == 0 && cols_ == 0) {
    cols_ = entries.size();
  } else if (entries.size() != cols_) {
    throw Error("row length does not match payoff matrix");
  }
  data_.insert(data_.end(), entries.begin(), entries.end());
  ++rows_;
}

void PayoffMatrix::add_col(std::span<const double> entries) {
  if (rows_ == 0 && cols_ == 0) {
    rows_ = entries.size();
    data_.assign(entries.begin(), entries.end());
    cols_ = 1;
    return;
  }
  if (entries.size() != rows_) throw Error("column length does not match payoff matrix");
  std::vector<double> grown;
  grown.reserve(rows_ * (cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    grown.insert(grown.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    grown.push_back(entries[i]);
  }
  data_ = std::move(grown);
  ++cols_;
}

std::string PayoffMatrix::dump() const {
  std::ostringstream out;
  out.precision(17);
  out << rows_ << "x" << cols_ << " [";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j);
  }
  out << "]";
  return out.str();
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kOptimalityTol = 1e-11;
constexpr double kCertificateTol = 1e-6;

// Dense tableau for max 1'y s.t. A y <= 1, y >= 0 with A > 0 entrywise.
class Tableau {
 public:
  Tableau(const PayoffMatrix& m, double shift)
      : rows_(m.rows()), vars_(m.cols()), width_(m.cols() + m.rows() + 1),
        t_((rows_ + 1) * width_, 0.0), basis_(rows_) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < vars_; ++j) at(i, j) = m(i, j) - shift;
      at(i, vars_ + i) = 1.0;
      at(i, rhs()) = 1.0;
      basis_[i] = vars_ + i;
    }
    for (std::size_t j = 0; j < vars_; ++j) at(rows_, j) = -1.0;
  }

  void solve() {
    const std::size_t max_pivots = 100 * (rows_ + vars_) + 1000;
    std::size_t degenerate_streak = 0;
    for (std::size_t pivots = 0; pivots < max_pivots; ++pivots) {
      const bool bland = degenerate_streak > 2 * (rows_ + vars_);
      std::size_t enter = width_;
      double most_negative = -kOptimalityTol;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        const double rc = at(rows_, j);
        if (rc < most_negative) {
          enter = j;
          if (bland) break;
          most_negative = rc;
        }
      }
      if (enter == width_) return;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = at(i, rhs()) / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leave < rows_ && basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == rows_) throw Error("simplex: unbounded direction");
      degenerate_streak = best_ratio <= 1e-15 ? degenerate_streak + 1 : 0;
      pivot(leave, enter);
    }
    throw Error("simplex: pivot limit reached");
  }

  double objective() const { return t_[rows_ * width_ + rhs()]; }

  std::vector<double> primal() const {
    std::vector<double> y(vars_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) y[basis_[i]] = t_[i * width_ + rhs()];
    }
    return y;
  }

  std::vector<double> dual() const {
    std::vector<double> x(rows_);
    for (std::size_t i = 0; i < rows_; ++i) x[i] = t_[rows_ * width_ + vars_ + i];
    return x;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  std::size_t rhs() const { return width_ - 1; }

  void pivot(std::size_t r, std::size_t c) {
    double* prow = t_.data() + r * width_;
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = t_.data() + i * width_;
      const double factor = row[c];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= factor * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  std::size_t rows_, vars_, width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

std::vector<double> normalize(std::vector<double> w) {
  for (double& x : w) x = std::max(x, 0.0);
  double sum = 0.0;
  for (double x : w) sum += x;
  if (!(sum > 0.0)) throw Error("degenerate strategy weights");
  for (double& x : w) x /= sum;
  for (double& x : w) {
    if (x < kSupportCutoff) x = 0.0;
  }
  sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

ZeroSumSolution solve_zero_sum(const PayoffMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error("payoff matrix is empty");
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j))) throw Error("non-finite payoff: " + m.dump());
      low = std::min(low, m(i, j));
    }
  }
  // Shifted entries are >= 1, so the shifted game value is >= 1 and the LP
  // is bounded and feasible at the origin.
  const double shift = low - 1.0;
  Tableau tab(m, shift);
  try {
    tab.solve();
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + " on matrix " + m.dump());
  }

  ZeroSumSolution out;
  out.value = 1.0 / tab.objective() + shift;
  out.col_strategy = normalize(tab.primal());
  out.row_strategy = normalize(tab.dual());

  double worst_row = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * out.col_strategy[j];
    worst_row = std::max(worst_row, s);
  }
  double worst_col = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * out.row_strategy[i];
    worst_col = std::min(worst_col, s);
  }
  if (worst_row > out.value + kCertificateTol || worst_col < out.value - kCertificateTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "zero-sum LP failed its optimality certificate (value " << out.value
        << ", best row reply " << worst_row << ", best column reply " << worst_col
        << ") on matrix " << m.dump();
    throw Error(msg.str());
  }
  return out;
}

}  // namespace cim
