#pragma once

#include <span>
#include <vector>

#include "cachepower/model.hpp"
#include "cachepower/rates.hpp"

namespace cachepower {

/// Minimum superposition-coding power for a stack of per-user target rates
/// over a degraded Gaussian broadcast channel with unit noise variance.
/// layer_shares[k-1] is the Gaussian codebook power of layer k; the shares
/// sum to total, and a zero-rate layer gets exactly zero power.
struct PowerResult {
  double total = 0.0;
  double log2_total = 0.0;  ///< log-domain accumulator; finite when total overflows
  std::vector<double> layer_shares;
};

/// Total power sum_k (2^{2R_k}-1)/h_k^2 * prod_{i<k} 2^{2R_i} and the per-layer
/// allocation that meets every layer's SINR target with equality. Switches to
/// a log-domain accumulation when partial products pass 1e300.
PowerResult min_power(std::span<const double> rates, std::span<const double> gains);

/// Power required to serve one demand class under one scheme.
PowerResult class_power(const DemandClass& cls, const SystemConfig& cfg, Scheme s);

/// Expected power over uniform demands, reduced to a demand-class enumeration
/// (power depends on a demand only through its class). Class weights switch to
/// log-space probabilities when N^K leaves the exact 64-bit range.
double average_power(const SystemConfig& cfg, Scheme s);

enum class PeakMethod {
  enumerate,    ///< maximize over every demand class
  closed_form,  ///< evaluate the worst class U_d = [min{N,K}] directly
};

/// Worst-case power over demand combinations.
double peak_power(const SystemConfig& cfg, Scheme s,
                  PeakMethod method = PeakMethod::enumerate);

/// The four achievable bounds at one cache size.
struct TradeoffPoint {
  double cache = 0.0;  ///< M
  double avg_ub_c = 0.0;
  double peak_ub_c = 0.0;
  double avg_ub_d = 0.0;
  double peak_ub_d = 0.0;
};

TradeoffPoint tradeoff_point(const SystemConfig& cfg,
                             PeakMethod method = PeakMethod::enumerate);

}  // namespace cachepower
