#include "cachepower/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "cachepower/combinatorics.hpp"

namespace cachepower {

const char* scheme_name(Scheme s) {
  return s == Scheme::centralized ? "centralized" : "decentralized";
}

RateVector centralized_rates(const DemandClass& cls, const SystemConfig& cfg) {
  const int users = cfg.users;
  if (cls.users() != users)
    throw std::invalid_argument("centralized_rates: class does not match config");
  const double t = cfg.normalized_cache();
  const int lo = static_cast<int>(std::floor(t));

  struct Part {
    int t;
    double weight;
  };
  Part parts[2];
  int nparts;
  if (t == lo) {
    parts[0] = {lo, 1.0};
    nparts = 1;
  } else {
    parts[0] = {lo, lo + 1 - t};
    parts[1] = {lo + 1, t - lo};
    nparts = 2;
  }

  const std::uint32_t leader_bits = cls.leader_mask();
  RateVector rv{Scheme::centralized, std::vector<double>(users, 0.0)};
  for (int k = 1; k <= users; ++k) {
    const bool leads = (leader_bits >> (k - 1)) & 1u;
    const int ndk = cls.better_leaders[k - 1];
    double r = 0.0;
    for (int p = 0; p < nparts; ++p) {
      std::int64_t num = binom(users - k, parts[p].t);
      if (!leads) num -= binom(users - k - ndk, parts[p].t);
      const std::int64_t den = binom(users, parts[p].t);
      r += parts[p].weight * (static_cast<double>(num) / static_cast<double>(den)) * cfg.rate;
    }
    rv.rates[k - 1] = r;
  }
  return rv;
}

RateVector decentralized_rates(const DemandClass& cls, const SystemConfig& cfg) {
  const int users = cfg.users;
  if (cls.users() != users)
    throw std::invalid_argument("decentralized_rates: class does not match config");
  const double q = 1.0 - cfg.cache / cfg.files;

  const std::uint32_t leader_bits = cls.leader_mask();
  RateVector rv{Scheme::decentralized, std::vector<double>(users, 0.0)};
  for (int k = 1; k <= users; ++k) {
    const double qk = std::pow(q, k);
    if ((leader_bits >> (k - 1)) & 1u) {
      rv.rates[k - 1] = qk * cfg.rate;
    } else {
      const int ndk = cls.better_leaders[k - 1];
      rv.rates[k - 1] = qk * (1.0 - std::pow(q, ndk)) * cfg.rate;
    }
  }
  return rv;
}

RateVector scheme_rates(const DemandClass& cls, const SystemConfig& cfg, Scheme s) {
  return s == Scheme::centralized ? centralized_rates(cls, cfg)
                                  : decentralized_rates(cls, cfg);
}

RateVector worst_case_rates(const SystemConfig& cfg, Scheme s) {
  return scheme_rates(worst_case_class(cfg), cfg, s);
}

}  // namespace cachepower
