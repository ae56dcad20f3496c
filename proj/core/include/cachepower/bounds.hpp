#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cachepower/model.hpp"
#include "cachepower/power.hpp"

namespace cachepower {

/// Per-position residual rates of the uncoded-placement lower bound:
/// term i = R * (1 - min{i*M/N, 1}) for i = 1..count. count must lie in [1, K].
std::vector<double> lb_rate_terms(const SystemConfig& cfg, int count);

/// Lower bound on the average power under uncoded placement: the class
/// multiplicity sum with the residual-rate stack evaluated over each leader
/// set's gains (leaders are index-sorted, and gains are ascending by
/// construction, so the gain permutation is the identity on the leaders).
double lower_bound_average(const SystemConfig& cfg);

/// Lower bound on the peak power: max over nonempty subsets S of the worst
/// min{N,K} users. The analytic maximizer is the full set; the enumeration
/// asserts it rather than assuming it, and returns the enumerated max.
/// min{N,K} above 20 is rejected (subset explosion).
double lower_bound_peak(const SystemConfig& cfg);

/// Midpoint-convexity probe of the stacked power function
/// f(s) = sum_i (2^{2 s_i}-1)/h_i^2 * prod_{j<i} 2^{2 s_j}.
struct ConvexityReport {
  int trials = 0;
  int violations = 0;         ///< midpoint tests failing beyond tolerance
  double max_violation = 0.0; ///< max of f(mid) - (f(a)+f(b))/2 over trials
  double tolerance = 1e-9;
};

/// Draws `trials` random pairs in [0, rate_ceiling]^dim (seeded, reproducible)
/// and checks f((a+b)/2) <= (f(a)+f(b))/2 + tolerance. Violations are
/// reported, never thrown.
ConvexityReport convexity_probe(int dim, std::span<const double> gains, int trials,
                                std::uint64_t seed, double rate_ceiling = 1.0);

/// Lower bounds plus multiplicative gaps at one cache size. A gap is absent
/// (undefined) when its lower bound is zero, which happens exactly at M = N
/// where the upper bounds are zero as well.
struct BoundPoint {
  double cache = 0.0;  ///< M
  double avg_lb = 0.0;
  double peak_lb = 0.0;
  std::optional<double> gap_avg_c;
  std::optional<double> gap_avg_d;
  std::optional<double> gap_peak_c;
  std::optional<double> gap_peak_d;
};

BoundPoint gaps(const SystemConfig& cfg, const TradeoffPoint& upper);
BoundPoint gaps(const SystemConfig& cfg);

}  // namespace cachepower
