#include "cachepower/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cachepower {

double snap_integer(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < 1e-9 ? r : x;
}

double SystemConfig::normalized_cache() const {
  return snap_integer(cache * users / files);
}

SystemConfig validate_config(SystemConfig raw) {
  if (raw.users < 1) throw std::invalid_argument("users: K must be >= 1");
  if (raw.files < 1) throw std::invalid_argument("files: N must be >= 1");
  if (!(raw.rate > 0.0)) throw std::invalid_argument("rate: R must be > 0");
  if (!(raw.cache >= 0.0 && raw.cache <= raw.files))
    throw std::invalid_argument("cache: M out of [0, N]");
  if (static_cast<int>(raw.gains.size()) != raw.users)
    throw std::invalid_argument("gains: expected exactly K entries");
  for (std::size_t i = 0; i < raw.gains.size(); ++i) {
    if (!(raw.gains[i] > 0.0))
      throw std::invalid_argument("gains: entries must be positive");
    if (i > 0 && raw.gains[i] < raw.gains[i - 1])
      throw std::invalid_argument("gains not non-decreasing");
  }
  return raw;
}

void validate_demand(const DemandVector& d, const SystemConfig& cfg) {
  if (d.users() != cfg.users)
    throw std::invalid_argument("demand vector: expected exactly K entries");
  for (int f : d.demands)
    if (f < 1 || f > cfg.files)
      throw std::invalid_argument("demand vector: file index out of [1, N]");
}

std::uint32_t DemandClass::leader_mask() const {
  std::uint32_t m = 0;
  for (int k : leaders) m |= 1u << (k - 1);
  return m;
}

bool DemandClass::is_leader(int user) const {
  return std::binary_search(leaders.begin(), leaders.end(), user);
}

namespace {

std::vector<int> better_leader_counts(const std::vector<int>& leaders, int users) {
  // N_{d,k} = number of leaders with index strictly greater than k
  std::vector<int> counts(users, 0);
  for (int k = users - 1; k >= 1; --k) {
    const bool leads = std::binary_search(leaders.begin(), leaders.end(), k + 1);
    counts[k - 1] = counts[k] + (leads ? 1 : 0);
  }
  return counts;
}

}  // namespace

DemandClass leader_set(const DemandVector& d) {
  const int users = d.users();
  if (users < 1) throw std::invalid_argument("demand vector is empty");
  DemandClass cls;
  for (int k = 1; k <= users; ++k) {
    bool seen = false;
    for (int m = 1; m < k && !seen; ++m) seen = d.demands[m - 1] == d.demands[k - 1];
    if (!seen) cls.leaders.push_back(k);
  }
  cls.better_leaders = better_leader_counts(cls.leaders, users);
  return cls;
}

DemandClass class_from_leaders(std::vector<int> leaders, int users) {
  if (users < 1) throw std::invalid_argument("class: K must be >= 1");
  if (leaders.empty() || leaders.front() != 1)
    throw std::invalid_argument("class: leader set must contain user 1");
  for (std::size_t i = 0; i < leaders.size(); ++i) {
    if (leaders[i] < 1 || leaders[i] > users)
      throw std::invalid_argument("class: leader index out of [1, K]");
    if (i > 0 && leaders[i] <= leaders[i - 1])
      throw std::invalid_argument("class: leaders must be strictly increasing");
  }
  DemandClass cls;
  cls.leaders = std::move(leaders);
  cls.better_leaders = better_leader_counts(cls.leaders, users);
  return cls;
}

DemandClass worst_case_class(const SystemConfig& cfg) {
  const int nd = std::min(cfg.files, cfg.users);
  std::vector<int> leaders(nd);
  for (int i = 0; i < nd; ++i) leaders[i] = i + 1;
  return class_from_leaders(std::move(leaders), cfg.users);
}

}  // namespace cachepower
