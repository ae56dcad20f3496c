#include "cachepower/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cachepower {

namespace {

constexpr auto kInt64Max =
    static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max());

std::int64_t checked_mul(unsigned __int128 a, unsigned __int128 b, const char* what) {
  const unsigned __int128 r = a * b;
  if (a != 0 && r / a != b) throw std::overflow_error(what);
  if (r > kInt64Max) throw std::overflow_error(what);
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t binom(int n, int k) {
  if (n < 0) throw std::invalid_argument("binom: n must be non-negative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // C(n-k+i, i) grows monotonically with i, so a per-step bound check never
  // rejects a representable result.
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= static_cast<unsigned>(n - k + i);
    r /= static_cast<unsigned>(i);
    if (r > kInt64Max)
      throw std::overflow_error("binom(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") exceeds 64 bits");
  }
  return static_cast<std::int64_t>(r);
}

double log_binom(int n, int k) {
  if (n < 0) throw std::invalid_argument("log_binom: n must be non-negative");
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::int64_t class_multiplicity(const DemandClass& cls, int files) {
  const int nd = cls.distinct();
  const int users = cls.users();
  if (nd > files) return 0;
  // N_d! folded into the gap product: prod_{j=1}^{N_d} j^(u_{j+1}-u_j-1+1)
  unsigned __int128 r = static_cast<unsigned __int128>(binom(files, nd));
  for (int j = 1; j <= nd; ++j) {
    const int next = j < nd ? cls.leaders[j] : users + 1;
    const int exponent = next - cls.leaders[j - 1] - 1 + 1;
    for (int e = 0; e < exponent; ++e)
      r = static_cast<unsigned __int128>(
          checked_mul(r, static_cast<unsigned>(j), "class_multiplicity exceeds 64 bits"));
  }
  return static_cast<std::int64_t>(r);
}

double log_class_multiplicity(const DemandClass& cls, int files) {
  const int nd = cls.distinct();
  const int users = cls.users();
  if (nd > files) return -std::numeric_limits<double>::infinity();
  double lg = log_binom(files, nd);
  for (int j = 1; j <= nd; ++j) {
    const int next = j < nd ? cls.leaders[j] : users + 1;
    lg += (next - cls.leaders[j - 1]) * std::log(static_cast<double>(j));
  }
  return lg;
}

namespace detail {

std::uint32_t class_space_size(int users) {
  if (users < 1) throw std::invalid_argument("class enumeration: K must be >= 1");
  if (users > 30)
    throw std::invalid_argument("class enumeration limited to K <= 30 (2^(K-1) classes)");
  return 1u << (users - 1);
}

bool class_weight_at(std::uint32_t index, int users, int files, WeightMode mode,
                     ClassWeight& out) {
  if (files < 1) throw std::invalid_argument("class enumeration: N must be >= 1");
  const int max_distinct = std::min(files, users);
  if (1 + std::popcount(index) > max_distinct) return false;

  std::vector<int> leaders;
  leaders.reserve(1 + std::popcount(index));
  leaders.push_back(1);
  for (int j = 0; j < users - 1; ++j)
    if (index & (1u << j)) leaders.push_back(j + 2);
  out.cls = class_from_leaders(std::move(leaders), users);

  if (mode == WeightMode::exact) {
    out.count = class_multiplicity(out.cls, files);
    long double total = 1.0L;
    for (int i = 0; i < users; ++i) total *= files;
    out.probability = static_cast<double>(static_cast<long double>(out.count) / total);
  } else {
    out.count = 0;
    out.probability =
        std::exp(log_class_multiplicity(out.cls, files) - users * std::log(files));
  }
  return true;
}

}  // namespace detail

void for_each_class(int users, int files, WeightMode mode,
                    const std::function<void(const ClassWeight&)>& fn) {
  const std::uint32_t space = detail::class_space_size(users);
  ClassWeight w;
  for (std::uint32_t index = 0; index < space; ++index)
    if (detail::class_weight_at(index, users, files, mode, w)) fn(w);
}

std::vector<ClassWeight> enumerate_classes(int users, int files, WeightMode mode) {
  std::vector<ClassWeight> out;
  for_each_class(users, files, mode, [&](const ClassWeight& w) { out.push_back(w); });
  return out;
}

}  // namespace cachepower
