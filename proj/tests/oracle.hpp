#pragma once

// Test-only oracles. Everything here enumerates demand vectors directly so it
// stays independent of the class-enumeration production path it checks.

#include <cmath>
#include <map>
#include <vector>

#include "cachepower/model.hpp"
#include "cachepower/power.hpp"
#include "cachepower/rates.hpp"

namespace oracle {

using namespace cachepower;

inline std::vector<DemandVector> all_demands(int users, int files) {
  std::vector<DemandVector> out;
  DemandVector d;
  d.demands.assign(users, 1);
  while (true) {
    out.push_back(d);
    int k = 0;
    while (k < users && ++d.demands[k] > files) {
      d.demands[k] = 1;
      ++k;
    }
    if (k == users) break;
  }
  return out;
}

inline std::map<std::vector<int>, long long> class_counts_by_brute_force(int users,
                                                                         int files) {
  std::map<std::vector<int>, long long> counts;
  for (const DemandVector& d : all_demands(users, files)) ++counts[leader_set(d).leaders];
  return counts;
}

inline double average_power_by_brute_force(const SystemConfig& cfg, Scheme s) {
  double sum = 0.0;
  long long n = 0;
  for (const DemandVector& d : all_demands(cfg.users, cfg.files)) {
    sum += class_power(leader_set(d), cfg, s).total;
    ++n;
  }
  return sum / static_cast<double>(n);
}

inline double peak_power_by_brute_force(const SystemConfig& cfg, Scheme s) {
  double best = 0.0;
  for (const DemandVector& d : all_demands(cfg.users, cfg.files))
    best = std::max(best, class_power(leader_set(d), cfg, s).total);
  return best;
}

/// The channel profile used for the worked numbers: 1/h_k^2 = 2 - 0.2(k-1).
inline std::vector<double> worked_gains(int users) {
  std::vector<double> g(users);
  for (int k = 1; k <= users; ++k) g[k - 1] = 1.0 / (2.0 - 0.2 * (k - 1));
  return g;
}

/// Ascending gains valid for any K.
inline std::vector<double> synthetic_gains(int users) {
  std::vector<double> g(users);
  for (int k = 1; k <= users; ++k) g[k - 1] = 1.0 / (1.0 + 0.3 * (users - k));
  return g;
}

inline SystemConfig make_config(int users, int files, double rate, double cache,
                                std::vector<double> gains) {
  SystemConfig c;
  c.users = users;
  c.files = files;
  c.rate = rate;
  c.cache = cache;
  c.gains = std::move(gains);
  return validate_config(c);
}

/// Two-user minimum power by one-dimensional numeric search over the top
/// layer's power (the bottom layer is then pinned by its SINR constraint).
/// Independent route used to cross-check the closed allocation.
inline double min_power_two_user_numeric(double r1, double r2, double g1, double g2) {
  const auto total_for = [&](double p2) {
    const double need1 = (std::exp2(2.0 * r1) - 1.0) * (1.0 + g1 * p2) / g1;
    return p2 + need1;
  };
  const double p2_floor = (std::exp2(2.0 * r2) - 1.0) / g2;
  double lo = p2_floor, hi = p2_floor * 4.0 + 10.0;
  for (int i = 0; i < 200; ++i) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (total_for(a) < total_for(b))
      hi = b;
    else
      lo = a;
  }
  return total_for(0.5 * (lo + hi));
}

}  // namespace oracle
