#pragma once

#include <vector>

#include "cachepower/model.hpp"

namespace cachepower {

enum class Scheme { centralized, decentralized };

const char* scheme_name(Scheme s);

/// Per-user target rates for one demand class under one caching scheme.
struct RateVector {
  Scheme scheme = Scheme::centralized;
  std::vector<double> rates;  ///< bits per channel use, entry k-1 for user k
};

/// Centralized scheme rates at any real t = MK/N. Integer t uses the single
/// subfile system; fractional t splits the library across the floor(t) and
/// floor(t)+1 systems with weights floor(t)+1-t and t-floor(t). Binomial
/// ratios are formed from exact integers and divided once, so the
/// leader/non-leader difference never cancels in floating point.
RateVector centralized_rates(const DemandClass& cls, const SystemConfig& cfg);

/// Decentralized scheme rates: q^k R for leaders and q^k (1 - q^{N_{d,k}}) R
/// otherwise, with q = 1 - M/N.
RateVector decentralized_rates(const DemandClass& cls, const SystemConfig& cfg);

RateVector scheme_rates(const DemandClass& cls, const SystemConfig& cfg, Scheme s);

/// Rates of the worst demand class U_d = [min{N,K}].
RateVector worst_case_rates(const SystemConfig& cfg, Scheme s);

}  // namespace cachepower
