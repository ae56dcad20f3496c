#include "cachepower/power.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cachepower/combinatorics.hpp"
#include "cachepower/parallel.hpp"

namespace cachepower {

namespace {

constexpr double kLn2 = 0.693147180559945309417;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 2^x - 1, accurate down to tiny x
double pow2m1(double x) { return std::expm1(x * kLn2); }

// log2(2^x - 1)
double log2_pow2m1(double x) {
  if (x <= 0.0) return kNegInf;
  if (x >= 1.0) return x + std::log1p(-std::exp2(-x)) / kLn2;
  return std::log2(std::expm1(x * kLn2));
}

// log2(2^a + 2^b)
double log2_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp2(lo - hi)) / kLn2;
}

}  // namespace

PowerResult min_power(std::span<const double> rates, std::span<const double> gains) {
  const std::size_t n = rates.size();
  if (gains.size() != n)
    throw std::invalid_argument("min_power: rates and gains lengths differ");

  std::vector<double> a(n), la(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rates[i] >= 0.0))
      throw std::invalid_argument("min_power: rates must be non-negative");
    if (!(gains[i] > 0.0))
      throw std::invalid_argument("min_power: gains must be positive");
    a[i] = pow2m1(2.0 * rates[i]) / gains[i];
    la[i] = log2_pow2m1(2.0 * rates[i]) - std::log2(gains[i]);
  }

  PowerResult res;
  res.layer_shares.assign(n, 0.0);

  // total: sum_k a_k * 2^{2 sum_{i<k} R_i}; the prefix product is carried in
  // the exponent so the log accumulator sees the exact same terms
  double prefix = 0.0;
  double total = 0.0;
  double ltotal = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (rates[i] > 0.0) {
      ltotal = log2_add(ltotal, la[i] + prefix);
      total += a[i] * std::exp2(prefix);
    }
    prefix += 2.0 * rates[i];
  }
  res.log2_total = ltotal;
  res.total = std::isfinite(total) ? total : std::exp2(ltotal);

  // shares: alpha_k P = a_k (1 + h_k^2 S_k) with the suffix recurrence
  // S_k = a_{k+1} + 2^{2R_{k+1}} S_{k+1}
  bool finite = std::isfinite(total);
  double suffix = 0.0;
  for (std::size_t i = n; i-- > 0 && finite;) {
    const double share = rates[i] > 0.0 ? a[i] * (1.0 + gains[i] * suffix) : 0.0;
    res.layer_shares[i] = share;
    suffix = a[i] + std::exp2(2.0 * rates[i]) * suffix;
    if (!std::isfinite(share) || !std::isfinite(suffix)) finite = false;
  }
  if (!finite) {
    double lsuffix = kNegInf;
    for (std::size_t i = n; i-- > 0;) {
      res.layer_shares[i] =
          rates[i] > 0.0
              ? std::exp2(la[i] + log2_add(0.0, std::log2(gains[i]) + lsuffix))
              : 0.0;
      lsuffix = log2_add(la[i], 2.0 * rates[i] + lsuffix);
    }
  }
  return res;
}

PowerResult class_power(const DemandClass& cls, const SystemConfig& cfg, Scheme s) {
  const RateVector rv = scheme_rates(cls, cfg, s);
  return min_power(rv.rates, cfg.gains);
}

double average_power(const SystemConfig& cfg, Scheme s) {
  const SystemConfig c = validate_config(cfg);
  const WeightMode mode = c.users * std::log2(static_cast<double>(c.files)) <= 62.0
                              ? WeightMode::exact
                              : WeightMode::log_space;
  const std::uint32_t space = detail::class_space_size(c.users);
  return parallel_indexed_sum(space, [&](std::size_t i) {
    ClassWeight w;
    if (!detail::class_weight_at(static_cast<std::uint32_t>(i), c.users, c.files, mode, w))
      return 0.0;
    return w.probability * class_power(w.cls, c, s).total;
  });
}

double peak_power(const SystemConfig& cfg, Scheme s, PeakMethod method) {
  const SystemConfig c = validate_config(cfg);
  if (method == PeakMethod::closed_form)
    return class_power(worst_case_class(c), c, s).total;
  const std::uint32_t space = detail::class_space_size(c.users);
  return parallel_indexed_max(space, 0.0, [&](std::size_t i) {
    ClassWeight w;
    if (!detail::class_weight_at(static_cast<std::uint32_t>(i), c.users, c.files,
                                 WeightMode::log_space, w))
      return 0.0;
    return class_power(w.cls, c, s).total;
  });
}

TradeoffPoint tradeoff_point(const SystemConfig& cfg, PeakMethod method) {
  TradeoffPoint p;
  p.cache = cfg.cache;
  p.avg_ub_c = average_power(cfg, Scheme::centralized);
  p.peak_ub_c = peak_power(cfg, Scheme::centralized, method);
  p.avg_ub_d = average_power(cfg, Scheme::decentralized);
  p.peak_ub_d = peak_power(cfg, Scheme::decentralized, method);
  return p;
}

}  // namespace cachepower
