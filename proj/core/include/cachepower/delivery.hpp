#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cachepower/model.hpp"

namespace cachepower {

/// One bit per element, values 0/1. Wasteful but keeps XOR, slicing, and
/// bit-length bookkeeping trivial at the desk scales the simulator runs at.
using BitBlock = std::vector<std::uint8_t>;

void xor_into(BitBlock& acc, const BitBlock& other);
std::uint64_t bit_hash(const BitBlock& block);  ///< FNV-1a over the bit bytes

/// Subfile W_{file, holders}: the piece of `file` cached exactly by the users
/// in `holders` (bit k-1 of the mask <=> user k).
struct SubfileId {
  int file = 0;
  std::uint32_t holders = 0;

  friend bool operator==(const SubfileId&, const SubfileId&) = default;
  friend auto operator<=>(const SubfileId&, const SubfileId&) = default;
};

/// Centralized placement at integer t: every file split into C(K,t) equal
/// blocks indexed by the t-subsets of [K] in ascending-bitmask order (fixed
/// once, so packet identities are reproducible across runs).
struct Placement {
  int users = 0;
  int t = 0;
  int subfile_bits = 0;
  std::vector<std::uint32_t> holder_sets;       ///< C(K,t) masks, ascending
  std::vector<std::vector<BitBlock>> subfiles;  ///< [file-1][subset index]
  std::unordered_map<std::uint32_t, int> subset_index;

  const BitBlock& subfile(const SubfileId& id) const;
  /// Total bits user k holds after placement (= file_bits * N * t / K).
  std::int64_t cache_bits(int user) const;
};

/// Splits each file. Every file must have the same bit length, divisible by
/// C(K,t); a violation is reported with the required multiple.
Placement place_centralized(const SystemConfig& cfg, int t,
                            const std::vector<BitBlock>& files);

/// XOR packet for a (t+1)-subset: Q_C = xor over k in C of W_{d_k, C\{k}}.
/// Decodes at layer min(C): the worst user in C sets the power of the layer,
/// and everyone above it decodes by degradedness.
struct CodedPacket {
  std::uint32_t targets = 0;
  int layer = 0;
  BitBlock payload;
};

CodedPacket coded_packet(const Placement& placement, const DemandVector& d,
                         std::uint32_t target_mask);

/// Delivered packets only: the (t+1)-subsets meeting the leader set, in
/// ascending-bitmask order. Undelivered packets are recoverable from these.
std::vector<CodedPacket> generate_packets(const DemandVector& d, const Placement& placement);

using PacketIndex = std::unordered_map<std::uint32_t, const CodedPacket*>;
PacketIndex index_packets(const std::vector<CodedPacket>& packets);

/// The distinct-demand N_d-subsets of the users in b_mask (the G_B family of
/// the recovery identity). Includes the leader set itself when it lies in B.
std::vector<std::uint32_t> distinct_demand_subsets(std::uint32_t b_mask,
                                                   const DemandVector& d);

/// Rebuild the undelivered packet Q_S (S disjoint from the leader set) as the
/// XOR of delivered packets Q_{B\G}, G in G_B \ {U_d}, with B = S u U_d.
/// Throws std::runtime_error naming the offending G when a constituent is
/// missing from `delivered`.
CodedPacket reconstruct_packet(std::uint32_t s_mask, const PacketIndex& delivered,
                               const DemandVector& d);

struct UserReport {
  int user = 0;
  bool decoded_ok = false;
  std::uint64_t file_hash = 0;       ///< hash of the reconstructed file bits
  int packets_received = 0;          ///< delivered packets this user consumed
  int packets_reconstructed = 0;     ///< recovery-identity applications
  std::string error;                 ///< first missing subfile/packet, if any
};

struct DeliveryReport {
  std::uint64_t seed = 0;
  int t = 0;
  int subfile_bits = 0;
  bool all_ok = false;
  std::vector<UserReport> users;
  std::vector<int> layer_packet_counts;  ///< delivered packets per layer
  std::vector<double> layer_rates;       ///< counts * R / C(K,t)
  int total_packets = 0;
  int total_reconstructions = 0;
};

/// End-to-end bit-exact run at integer t: seeded random file bits, placement,
/// filtered delivery, per-user successive decoding with recovery of the
/// undelivered packets, and a bitwise compare of every reconstructed file.
DeliveryReport verify_delivery(const SystemConfig& cfg, const DemandVector& d, int t,
                               std::uint64_t seed, int subfile_bits = 16);

/// Non-integer t: the library splits into two independent integer-t
/// subsystems (floor(t), floor(t)+1) carrying file fractions floor(t)+1-t and
/// t-floor(t); both run sequentially and report separately.
struct MemorySharingReport {
  double t = 0.0;
  bool split = false;  ///< false when t was already integer (only low ran)
  DeliveryReport low;
  DeliveryReport high;
  bool all_ok = false;
};

MemorySharingReport verify_delivery_memory_sharing(const SystemConfig& cfg,
                                                   const DemandVector& d,
                                                   std::uint64_t seed);

/// Debug trace: one line per packet, "layer,targets,bits", targets joined
/// by '+' (e.g. "1,1+3,16").
std::string packet_trace(const std::vector<CodedPacket>& packets);

/// Decentralized packet in symbolic form: the XOR-term multiset reduced
/// mod 2. Two packets XOR by symmetric difference of their term sets.
struct SymbolicPacket {
  std::uint32_t targets = 0;
  int layer = 0;
  std::vector<SubfileId> terms;  ///< sorted, pairs cancelled
};

SymbolicPacket symbolic_packet(const DemandVector& d, std::uint32_t target_mask);

/// Canonical member of a class: leaders request files 1..N_d in order, every
/// non-leader repeats its nearest earlier leader's file.
DemandVector representative_demand(const DemandClass& cls, int files);

struct MassReport {
  bool ok = false;
  bool masses_ok = false;    ///< per-layer delivered mass matches the rate form
  bool coverage_ok = false;  ///< every needed subfile reachable (direct or rebuilt)
  double max_mass_error = 0.0;
  std::vector<double> layer_mass;  ///< delivered rate mass per layer
  std::vector<double> expected;    ///< closed-form rates per layer
  int direct_packets = 0;
  int reconstructions = 0;
  std::string error;
};

/// Exact fractional-mass model of the decentralized delivery for one class:
/// subfile W_{i,S} carries mass (M/N)^|S| (1-M/N)^{K-|S|}. Enumerates the
/// delivered packet sets, sums masses per layer, and checks both the rate
/// identity and the reachability of every needed subfile.
MassReport verify_decentralized_masses(const SystemConfig& cfg, const DemandClass& cls);

}  // namespace cachepower
