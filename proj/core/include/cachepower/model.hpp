#pragma once

#include <cstdint>
#include <vector>

namespace cachepower {

/// Parameters of one cache-aided broadcast setup.
///
/// Users are indexed 1..K from worst to best channel; `gains[k-1]` holds the
/// squared channel gain h_k^2 of user k. The non-decreasing ordering is an
/// input contract: it is validated, never re-established by sorting, because
/// user indices carry meaning everywhere else (leader sets, layer order).
struct SystemConfig {
  int users = 0;              ///< K, number of receivers
  int files = 0;              ///< N, library size
  double rate = 1.0;          ///< R, file rate in bits per channel use
  double cache = 0.0;         ///< M, per-user cache capacity in file units
  std::vector<double> gains;  ///< h_k^2, ascending, length K

  /// t = M*K/N, snapped to the nearest integer when within 1e-9.
  double normalized_cache() const;
};

/// Snap values within 1e-9 of an integer to that integer. Keeps floor(t)
/// classification immune to float noise in M*K/N.
double snap_integer(double x);

/// Returns the config unchanged if every invariant holds; throws
/// std::invalid_argument naming the violated field otherwise.
SystemConfig validate_config(SystemConfig raw);

/// One requested file index per user, 1-based.
struct DemandVector {
  std::vector<int> demands;

  int users() const { return static_cast<int>(demands.size()); }
};

/// Throws std::invalid_argument if d does not fit cfg (length K, entries in [1,N]).
void validate_demand(const DemandVector& d, const SystemConfig& cfg);

/// Leader structure of a demand vector: for every distinct requested file,
/// the lowest-index (worst-channel) user requesting it. All power and rate
/// quantities depend on a demand vector only through this class.
struct DemandClass {
  std::vector<int> leaders;         ///< U_d, strictly increasing, contains 1
  std::vector<int> better_leaders;  ///< entry k-1 = N_{d,k} = |{i in U_d : i > k}|

  int distinct() const { return static_cast<int>(leaders.size()); }
  int users() const { return static_cast<int>(better_leaders.size()); }
  std::uint32_t leader_mask() const;  ///< bit k-1 set iff user k leads
  bool is_leader(int user) const;
};

/// Reduce a demand vector to its class.
DemandClass leader_set(const DemandVector& d);

/// Build the class for an explicit leader set (ascending user indices,
/// 1 included). Throws std::invalid_argument on a malformed set.
DemandClass class_from_leaders(std::vector<int> leaders, int users);

/// The class of the worst demand combination: leaders = [1 .. min{N,K}].
DemandClass worst_case_class(const SystemConfig& cfg);

}  // namespace cachepower
