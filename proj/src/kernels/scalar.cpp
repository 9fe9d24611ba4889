#include <algorithm>

#include "cim/kernels.hpp"

namespace cim::kernels {

namespace {

double contest_sum_scalar(const Amount* mine, const Amount* theirs,
                          const double* values, std::size_t n) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (mine[j] > theirs[j]) {
      sum += values[j];
    } else if (mine[j] < theirs[j]) {
      sum -= values[j];
    }
  }
  return sum;
}

double signed_weight_sum_scalar(Amount offer, const Amount* theirs,
                                const double* weights, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (offer > theirs[i]) {
      sum += weights[i];
    } else if (offer < theirs[i]) {
      sum -= weights[i];
    }
  }
  return sum;
}

void max_plus_scalar(double* dst, const double* src, double gain,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = std::max(dst[i], src[i] + gain);
  }
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", contest_sum_scalar,
                             signed_weight_sum_scalar, max_plus_scalar};
  return set;
}

}  // namespace cim::kernels
