#include "cachepower/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "cachepower/combinatorics.hpp"
#include "cachepower/parallel.hpp"

namespace cachepower {

std::vector<double> lb_rate_terms(const SystemConfig& cfg, int count) {
  if (count < 1 || count > cfg.users)
    throw std::invalid_argument("lb_rate_terms: count out of [1, K]");
  std::vector<double> terms(count);
  for (int i = 1; i <= count; ++i) {
    const double cached = std::min(i * cfg.cache / cfg.files, 1.0);
    terms[i - 1] = cfg.rate * (1.0 - cached);
  }
  return terms;
}

double lower_bound_average(const SystemConfig& cfg) {
  const SystemConfig c = validate_config(cfg);
  const WeightMode mode = c.users * std::log2(static_cast<double>(c.files)) <= 62.0
                              ? WeightMode::exact
                              : WeightMode::log_space;
  const std::vector<double> terms = lb_rate_terms(c, std::min(c.files, c.users));
  const std::uint32_t space = detail::class_space_size(c.users);
  return parallel_indexed_sum(space, [&](std::size_t i) {
    ClassWeight w;
    if (!detail::class_weight_at(static_cast<std::uint32_t>(i), c.users, c.files, mode, w))
      return 0.0;
    const int nd = w.cls.distinct();
    std::vector<double> leader_gains(nd);
    for (int j = 0; j < nd; ++j) leader_gains[j] = c.gains[w.cls.leaders[j] - 1];
    const PowerResult f = min_power(std::span(terms).first(nd), leader_gains);
    return w.probability * f.total;
  });
}

double lower_bound_peak(const SystemConfig& cfg) {
  const SystemConfig c = validate_config(cfg);
  const int worst = std::min(c.files, c.users);
  if (worst > 20)
    throw std::invalid_argument("lower_bound_peak: subset enumeration capped at K <= 20");
  const std::vector<double> terms = lb_rate_terms(c, worst);

  const auto subset_value = [&](std::uint32_t mask) {
    std::vector<double> sub_gains;
    sub_gains.reserve(std::popcount(mask));
    for (int u = 0; u < worst; ++u)
      if (mask & (1u << u)) sub_gains.push_back(c.gains[u]);
    return min_power(std::span(terms).first(sub_gains.size()), sub_gains).total;
  };

  const std::uint32_t full = (1u << worst) - 1;
  const double best = parallel_indexed_max(
      full, 0.0, [&](std::size_t i) { return subset_value(static_cast<std::uint32_t>(i) + 1); });
  const double at_full = subset_value(full);
  if (!(at_full >= best * (1.0 - 1e-9)))
    throw std::logic_error("lower_bound_peak: maximizer is not the full worst-user set");
  return best;
}

ConvexityReport convexity_probe(int dim, std::span<const double> gains, int trials,
                                std::uint64_t seed, double rate_ceiling) {
  if (dim < 1 || dim > static_cast<int>(gains.size()))
    throw std::invalid_argument("convexity_probe: dim out of [1, |gains|]");
  for (std::size_t i = 1; i < gains.size(); ++i)
    if (gains[i] < gains[i - 1])
      throw std::invalid_argument("convexity_probe: gains must be ascending");
  if (!(rate_ceiling > 0.0))
    throw std::invalid_argument("convexity_probe: rate ceiling must be positive");

  std::mt19937_64 rng(seed);
  const auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53 * rate_ceiling; };
  const auto f = [&](std::span<const double> s) {
    return min_power(s, gains.first(dim)).total;
  };

  ConvexityReport rep;
  rep.trials = trials;
  std::vector<double> a(dim), b(dim), mid(dim);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < dim; ++i) {
      a[i] = uniform();
      b[i] = uniform();
      mid[i] = 0.5 * (a[i] + b[i]);
    }
    const double excess = f(mid) - 0.5 * (f(a) + f(b));
    rep.max_violation = std::max(rep.max_violation, excess);
    if (excess > rep.tolerance) ++rep.violations;
  }
  return rep;
}

namespace {

std::optional<double> gap_ratio(double upper, double lower, const char* what) {
  if (lower > 0.0) return upper / lower;
  if (upper > 1e-12)
    throw std::logic_error(std::string("gaps: zero lower bound with positive ") + what);
  return std::nullopt;
}

}  // namespace

BoundPoint gaps(const SystemConfig& cfg, const TradeoffPoint& upper) {
  BoundPoint b;
  b.cache = cfg.cache;
  b.avg_lb = lower_bound_average(cfg);
  b.peak_lb = lower_bound_peak(cfg);
  b.gap_avg_c = gap_ratio(upper.avg_ub_c, b.avg_lb, "avg_ub_c");
  b.gap_avg_d = gap_ratio(upper.avg_ub_d, b.avg_lb, "avg_ub_d");
  b.gap_peak_c = gap_ratio(upper.peak_ub_c, b.peak_lb, "peak_ub_c");
  b.gap_peak_d = gap_ratio(upper.peak_ub_d, b.peak_lb, "peak_ub_d");
  return b;
}

BoundPoint gaps(const SystemConfig& cfg) { return gaps(cfg, tradeoff_point(cfg)); }

}  // namespace cachepower
