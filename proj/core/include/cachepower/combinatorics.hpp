#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cachepower/model.hpp"

namespace cachepower {

/// C(n, k) as an exact 64-bit integer. Returns 0 when k > n or k < 0 (empty
/// sum convention). Throws std::overflow_error instead of wrapping.
std::int64_t binom(int n, int k);

/// Natural log of C(n, k); -infinity when the coefficient is 0.
double log_binom(int n, int k);

/// Number of demand vectors that reduce to `cls` over a library of `files`
/// files: C(N, N_d) * N_d! * prod_j j^(u_{j+1}-u_j-1), with u_{N_d+1} = K+1.
/// Zero when N_d > N. Throws std::overflow_error past 64 bits.
std::int64_t class_multiplicity(const DemandClass& cls, int files);

/// Natural log of class_multiplicity; -infinity when the count is 0.
double log_class_multiplicity(const DemandClass& cls, int files);

enum class WeightMode {
  exact,      ///< counts as exact 64-bit integers (throws on overflow)
  log_space,  ///< probabilities via log-factorials; counts left at 0
};

/// A demand class together with its weight under uniform random demands.
struct ClassWeight {
  DemandClass cls;
  std::int64_t count = 0;    ///< N_{U_d}; filled in exact mode only
  double probability = 0.0;  ///< count / N^K
};

/// Visit every demand class with N_d <= min{N, K}: subsets of [2..K] in
/// binary counting order, with user 1 always prepended. The order is fixed so
/// downstream output is reproducible. K above 30 is rejected (2^(K-1) class
/// explosion).
void for_each_class(int users, int files, WeightMode mode,
                    const std::function<void(const ClassWeight&)>& fn);

/// Materialized form of for_each_class, same order.
std::vector<ClassWeight> enumerate_classes(int users, int files,
                                           WeightMode mode = WeightMode::exact);

namespace detail {

/// Size of the class index space (2^(K-1) bitmasks over [2..K]).
std::uint32_t class_space_size(int users);

/// Class weight for one bitmask index; false when the class is skipped
/// (N_d > min{N, K}). Shared by the enumeration and the parallel reducers.
bool class_weight_at(std::uint32_t index, int users, int files, WeightMode mode,
                     ClassWeight& out);

}  // namespace detail

}  // namespace cachepower
