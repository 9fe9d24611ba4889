#pragma once

// Data-parallel inner loops of the game solver.
//
// Each kernel exists as a portable scalar reference and, where the target
// supports it, an AVX2 or NEON variant. The variant is chosen once at first
// use from the CPU's capabilities; setting CIM_KERNELS=scalar in the
// environment forces the reference path.
//
// Variants agree exactly for max_plus. The two summing kernels reassociate
// their sums and agree with the reference to rounding only.

#include <cstddef>
#include <string_view>
#include <vector>

#include "cim/common.hpp"

namespace cim::kernels {

struct KernelSet {
  std::string_view name;

  // sum_j sign(mine[j] - theirs[j]) * values[j]
  double (*contest_sum)(const Amount* mine, const Amount* theirs,
                        const double* values, std::size_t n);

  // sum_i sign(offer - theirs[i]) * weights[i]
  double (*signed_weight_sum)(Amount offer, const Amount* theirs,
                              const double* weights, std::size_t n);

  // dst[i] = max(dst[i], src[i] + gain)
  void (*max_plus)(double* dst, const double* src, double gain, std::size_t n);
};

const KernelSet& scalar();

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelSet* avx2();
const KernelSet* neon();

// Every variant usable on this machine, scalar first.
std::vector<const KernelSet*> available();

const KernelSet& active();

}  // namespace cim::kernels
