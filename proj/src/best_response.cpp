#include "cim/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cim/kernels.hpp"

namespace cim {

std::vector<StepProfile> build_step_profiles(const MixedStrategy& opponent,
                                             const GameSpec& spec, Player responder,
                                             Pruning pruning) {
  const Player other = cim::opponent(responder);
  for (const auto& a : opponent.support()) spec.check_feasible(a, other);

  const PackageSet& packages = spec.player(responder).packages;
  const std::size_t n = spec.node_count();
  const std::size_t m = opponent.size();
  const auto& kern = kernels::active();

  std::vector<Amount> column(m);
  std::vector<Amount> offers;
  std::vector<StepProfile> profiles(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) column[i] = opponent.support()[i].amounts[j];

    offers.assign(1, 0);
    if (pruning == Pruning::kNone) {
      offers.insert(offers.end(), packages.values().begin(), packages.values().end());
    } else {
      for (Amount a : column) {
        if (a > 0 && packages.contains(a)) offers.push_back(a);
        if (Amount up = packages.next_above(a); up > 0) offers.push_back(up);
      }
      std::sort(offers.begin(), offers.end());
      offers.erase(std::unique(offers.begin(), offers.end()), offers.end());
    }

    const double value = spec.values()[j];
    StepProfile& profile = profiles[j];
    for (Amount x : offers) {
      const double gain =
          value * kern.signed_weight_sum(x, column.data(), opponent.probs().data(), m);
      // Offers with an equal sign pattern produce bit-identical gains, so an
      // exact comparison finds the start of each gain level.
      if (pruning == Pruning::kThresholds && !profile.empty() &&
          !(gain > profile.back().gain)) {
        continue;
      }
      profile.push_back({x, gain});
    }
  }
  return profiles;
}

ProfileOptimum optimize_profiles(std::span<const StepProfile> profiles, Amount budget) {
  if (budget < 0) throw Error("budget must be non-negative");
  const std::size_t n = profiles.size();
  const std::size_t width = static_cast<std::size_t>(budget) + 1;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const auto& kern = kernels::active();

  // best[j][s]: max sum of F over nodes j..n-1 spending exactly s.
  std::vector<double> best((n + 1) * width, kNegInf);
  auto row = [&](std::size_t j) { return best.data() + j * width; };
  row(n)[0] = 0.0;

  double scale = 0.0;
  for (std::size_t jj = n; jj-- > 0;) {
    const StepProfile& profile = profiles[jj];
    if (profile.empty() || profile.front().offer != 0) {
      throw Error("step profile must start at offer 0");
    }
    double largest = 0.0;
    for (const StepPoint& pt : profile) {
      largest = std::max(largest, std::abs(pt.gain));
      if (pt.offer > budget) break;
      const std::size_t shift = static_cast<std::size_t>(pt.offer);
      kern.max_plus(row(jj) + shift, row(jj + 1), pt.gain, width - shift);
    }
    scale += largest;
  }

  // Objective values within `tol` are treated as ties.
  const double tol = 1e-12 * (1.0 + scale);
  const double top = *std::max_element(row(0), row(0) + width);
  std::size_t spend = 0;
  while (row(0)[spend] < top - tol) ++spend;

  ProfileOptimum out;
  out.objective = row(0)[spend];
  out.allocation.amounts.assign(n, 0);
  std::size_t left = spend;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = row(j)[left];
    bool chosen = false;
    for (const StepPoint& pt : profiles[j]) {
      const std::size_t c = static_cast<std::size_t>(pt.offer);
      if (c > left) break;
      const double rest = row(j + 1)[left - c];
      if (rest != kNegInf && rest + pt.gain >= target - tol) {
        out.allocation.amounts[j] = pt.offer;
        left -= c;
        chosen = true;
        break;
      }
    }
    if (!chosen) throw Error("best-response reconstruction failed");
  }
  return out;
}

BestResponse best_response(const MixedStrategy& opponent, const GameSpec& spec,
                           Player responder) {
  const auto profiles = build_step_profiles(opponent, spec, responder);
  ProfileOptimum opt = optimize_profiles(profiles, spec.player(responder).budget);
  const double payoff = expected_payoff(opt.allocation, opponent, spec.values());
  return {std::move(opt.allocation), payoff};
}

}  // namespace cim
