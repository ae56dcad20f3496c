#include "cachepower/delivery.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "cachepower/combinatorics.hpp"
#include "cachepower/rates.hpp"

namespace cachepower {

namespace {

int lowest_user(std::uint32_t mask) { return std::countr_zero(mask) + 1; }

std::vector<std::uint32_t> subsets_of_size(int users, int size) {
  std::vector<std::uint32_t> out;
  const std::uint32_t space = users >= 32 ? 0 : (1u << users);
  for (std::uint32_t m = 0; m < space; ++m)
    if (std::popcount(m) == size) out.push_back(m);
  return out;
}

std::string mask_to_string(std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (int k = 1; mask != 0; ++k, mask >>= 1)
    if (mask & 1u) {
      if (!first) s += ',';
      s += std::to_string(k);
      first = false;
    }
  s += '}';
  return s;
}

}  // namespace

void xor_into(BitBlock& acc, const BitBlock& other) {
  if (acc.size() != other.size())
    throw std::invalid_argument("xor_into: block lengths differ");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= other[i];
}

std::uint64_t bit_hash(const BitBlock& block) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : block) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

const BitBlock& Placement::subfile(const SubfileId& id) const {
  const auto it = subset_index.find(id.holders);
  if (it == subset_index.end())
    throw std::invalid_argument("placement: unknown holder set " + mask_to_string(id.holders));
  return subfiles.at(id.file - 1).at(it->second);
}

std::int64_t Placement::cache_bits(int user) const {
  std::int64_t bits = 0;
  for (const auto& per_file : subfiles)
    for (std::size_t l = 0; l < holder_sets.size(); ++l)
      if (holder_sets[l] & (1u << (user - 1))) bits += per_file[l].size();
  return bits;
}

Placement place_centralized(const SystemConfig& cfg, int t,
                            const std::vector<BitBlock>& files) {
  const SystemConfig c = validate_config(cfg);
  if (t < 0 || t > c.users)
    throw std::invalid_argument("place_centralized: t out of [0, K]");
  if (static_cast<int>(files.size()) != c.files)
    throw std::invalid_argument("place_centralized: expected N files");

  const std::int64_t pieces = binom(c.users, t);
  const std::size_t file_bits = files.empty() ? 0 : files[0].size();
  for (const auto& f : files)
    if (f.size() != file_bits)
      throw std::invalid_argument("place_centralized: files must have equal bit length");
  if (file_bits % pieces != 0)
    throw std::invalid_argument("place_centralized: file bit length " +
                                std::to_string(file_bits) + " not divisible by C(K,t) = " +
                                std::to_string(pieces) + "; pad to a multiple of " +
                                std::to_string(pieces));

  Placement p;
  p.users = c.users;
  p.t = t;
  p.subfile_bits = static_cast<int>(file_bits / pieces);
  p.holder_sets = subsets_of_size(c.users, t);
  for (std::size_t l = 0; l < p.holder_sets.size(); ++l)
    p.subset_index.emplace(p.holder_sets[l], static_cast<int>(l));

  p.subfiles.resize(c.files);
  for (int i = 0; i < c.files; ++i) {
    p.subfiles[i].reserve(p.holder_sets.size());
    for (std::size_t l = 0; l < p.holder_sets.size(); ++l) {
      const auto begin = files[i].begin() + static_cast<std::ptrdiff_t>(l * p.subfile_bits);
      p.subfiles[i].emplace_back(begin, begin + p.subfile_bits);
    }
  }
  return p;
}

CodedPacket coded_packet(const Placement& placement, const DemandVector& d,
                         std::uint32_t target_mask) {
  if (std::popcount(target_mask) != placement.t + 1)
    throw std::invalid_argument("coded_packet: target set must have t+1 users");
  CodedPacket q;
  q.targets = target_mask;
  q.layer = lowest_user(target_mask);
  q.payload.assign(placement.subfile_bits, 0);
  for (int k = 1; k <= placement.users; ++k) {
    const std::uint32_t bit = 1u << (k - 1);
    if (target_mask & bit)
      xor_into(q.payload, placement.subfile({d.demands[k - 1], target_mask & ~bit}));
  }
  return q;
}

std::vector<CodedPacket> generate_packets(const DemandVector& d, const Placement& placement) {
  const std::uint32_t leaders = leader_set(d).leader_mask();
  std::vector<CodedPacket> out;
  if (placement.t >= placement.users) return out;  // t = K: caches hold everything
  for (std::uint32_t mask : subsets_of_size(placement.users, placement.t + 1))
    if (mask & leaders) out.push_back(coded_packet(placement, d, mask));
  return out;
}

PacketIndex index_packets(const std::vector<CodedPacket>& packets) {
  PacketIndex index;
  index.reserve(packets.size());
  for (const auto& q : packets) index.emplace(q.targets, &q);
  return index;
}

std::vector<std::uint32_t> distinct_demand_subsets(std::uint32_t b_mask,
                                                   const DemandVector& d) {
  const DemandClass cls = leader_set(d);
  const int nd = cls.distinct();

  std::vector<int> members;
  for (int k = 1; k <= d.users(); ++k)
    if (b_mask & (1u << (k - 1))) members.push_back(k);

  std::vector<std::uint32_t> out;
  if (nd > static_cast<int>(members.size())) return out;

  std::vector<int> pick(nd);
  // lexicographic index combinations over `members`
  for (int i = 0; i < nd; ++i) pick[i] = i;
  while (true) {
    std::set<int> files;
    std::uint32_t mask = 0;
    for (int i : pick) {
      files.insert(d.demands[members[i] - 1]);
      mask |= 1u << (members[i] - 1);
    }
    if (static_cast<int>(files.size()) == nd) out.push_back(mask);

    int pos = nd - 1;
    while (pos >= 0 && pick[pos] == static_cast<int>(members.size()) - nd + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < nd; ++i) pick[i] = pick[i - 1] + 1;
  }
  return out;
}

CodedPacket reconstruct_packet(std::uint32_t s_mask, const PacketIndex& delivered,
                               const DemandVector& d) {
  const DemandClass cls = leader_set(d);
  const std::uint32_t leaders = cls.leader_mask();
  if (s_mask == 0) throw std::invalid_argument("reconstruct_packet: empty target set");
  if (s_mask & leaders)
    throw std::invalid_argument("reconstruct_packet: target set meets the leader set");

  const std::uint32_t b_mask = s_mask | leaders;
  CodedPacket q;
  q.targets = s_mask;
  q.layer = lowest_user(s_mask);
  bool sized = false;
  for (std::uint32_t g : distinct_demand_subsets(b_mask, d)) {
    if (g == leaders) continue;
    const std::uint32_t constituent = b_mask & ~g;
    const auto it = delivered.find(constituent);
    if (it == delivered.end())
      throw std::runtime_error("reconstruct_packet: missing constituent packet Q_" +
                               mask_to_string(constituent) + " for G = " + mask_to_string(g));
    if (!sized) {
      q.payload.assign(it->second->payload.size(), 0);
      sized = true;
    }
    xor_into(q.payload, it->second->payload);
  }
  if (!sized)
    throw std::runtime_error("reconstruct_packet: no constituents for S = " +
                             mask_to_string(s_mask));
  return q;
}

DeliveryReport verify_delivery(const SystemConfig& cfg, const DemandVector& d, int t,
                               std::uint64_t seed, int subfile_bits) {
  const SystemConfig c = validate_config(cfg);
  validate_demand(d, c);
  if (t < 0 || t > c.users)
    throw std::invalid_argument("verify_delivery: t out of [0, K]");
  if (subfile_bits < 1)
    throw std::invalid_argument("verify_delivery: subfile_bits must be >= 1");

  DeliveryReport report;
  report.seed = seed;
  report.t = t;
  report.subfile_bits = subfile_bits;

  // seeded random files so every run is replayable from the report
  std::mt19937_64 rng(seed);
  const std::int64_t pieces = binom(c.users, t);
  std::vector<BitBlock> files(c.files);
  for (auto& f : files) {
    f.resize(static_cast<std::size_t>(pieces) * subfile_bits);
    for (auto& bit : f) bit = static_cast<std::uint8_t>(rng() & 1u);
  }

  const Placement placement = place_centralized(c, t, files);
  const std::vector<CodedPacket> packets = generate_packets(d, placement);
  const PacketIndex delivered = index_packets(packets);
  const DemandClass cls = leader_set(d);
  const std::uint32_t leaders = cls.leader_mask();

  report.layer_packet_counts.assign(c.users, 0);
  for (const auto& q : packets) ++report.layer_packet_counts[q.layer - 1];
  report.layer_rates.assign(c.users, 0.0);
  for (int k = 0; k < c.users; ++k)
    report.layer_rates[k] =
        report.layer_packet_counts[k] * c.rate / static_cast<double>(pieces);
  report.total_packets = static_cast<int>(packets.size());

  std::unordered_map<std::uint32_t, CodedPacket> rebuilt;  // shared across users
  report.all_ok = true;
  for (int k = 1; k <= c.users; ++k) {
    UserReport ur;
    ur.user = k;
    const std::uint32_t user_bit = 1u << (k - 1);
    const int want = d.demands[k - 1];
    BitBlock assembled(files[want - 1].size(), 0);
    ur.decoded_ok = true;

    for (std::size_t l = 0; l < placement.holder_sets.size() && ur.decoded_ok; ++l) {
      const std::uint32_t holders = placement.holder_sets[l];
      BitBlock piece;
      if (holders & user_bit) {
        piece = placement.subfile({want, holders});  // cached locally
      } else {
        const std::uint32_t packet_mask = holders | user_bit;
        const CodedPacket* q = nullptr;
        if (packet_mask & leaders) {
          const auto it = delivered.find(packet_mask);
          if (it == delivered.end()) {
            ur.decoded_ok = false;
            ur.error = "delivered packet Q_" + mask_to_string(packet_mask) + " not found";
            break;
          }
          q = it->second;
          ++ur.packets_received;
        } else {
          // undelivered: rebuild via the recovery identity; every constituent
          // must sit at a layer this user decodes
          const std::uint32_t b_mask = packet_mask | leaders;
          bool reachable = true;
          for (std::uint32_t g : distinct_demand_subsets(b_mask, d)) {
            if (g == leaders) continue;
            const std::uint32_t constituent = b_mask & ~g;
            if (lowest_user(constituent) > k) {
              ur.decoded_ok = false;
              ur.error = "constituent Q_" + mask_to_string(constituent) +
                         " decodes above layer " + std::to_string(k);
              reachable = false;
              break;
            }
          }
          if (!reachable) break;
          auto it = rebuilt.find(packet_mask);
          if (it == rebuilt.end()) {
            try {
              it = rebuilt.emplace(packet_mask, reconstruct_packet(packet_mask, delivered, d))
                       .first;
            } catch (const std::exception& e) {
              ur.decoded_ok = false;
              ur.error = e.what();
              break;
            }
          }
          q = &it->second;
          ++ur.packets_reconstructed;
        }
        // peel the cached terms off the packet to expose W_{d_k, holders}
        piece = q->payload;
        for (int j = 1; j <= c.users; ++j) {
          const std::uint32_t j_bit = 1u << (j - 1);
          if (j != k && (packet_mask & j_bit))
            xor_into(piece, placement.subfile({d.demands[j - 1], packet_mask & ~j_bit}));
        }
      }
      std::copy(piece.begin(), piece.end(), assembled.begin() + l * placement.subfile_bits);
    }

    if (ur.decoded_ok && assembled != files[want - 1]) {
      ur.decoded_ok = false;
      ur.error = "reconstructed file " + std::to_string(want) + " differs from the original";
    }
    ur.file_hash = bit_hash(assembled);
    report.total_reconstructions += ur.packets_reconstructed;
    report.all_ok = report.all_ok && ur.decoded_ok;
    report.users.push_back(std::move(ur));
  }
  return report;
}

MemorySharingReport verify_delivery_memory_sharing(const SystemConfig& cfg,
                                                   const DemandVector& d,
                                                   std::uint64_t seed) {
  const SystemConfig c = validate_config(cfg);
  MemorySharingReport rep;
  const double t = c.normalized_cache();
  rep.t = t;
  const int lo = static_cast<int>(std::floor(t));
  if (t == lo) {
    rep.split = false;
    rep.low = verify_delivery(c, d, lo, seed);
    rep.all_ok = rep.low.all_ok;
    return rep;
  }
  // the two integer subsystems carry file fractions lo+1-t and t-lo; the
  // analytic rate split is exact, the simulated bit counts need not be
  rep.split = true;
  SystemConfig part = c;
  part.cache = static_cast<double>(lo) * c.files / c.users;
  rep.low = verify_delivery(part, d, lo, seed);
  part.cache = static_cast<double>(lo + 1) * c.files / c.users;
  rep.high = verify_delivery(part, d, lo + 1, seed + 1);
  rep.all_ok = rep.low.all_ok && rep.high.all_ok;
  return rep;
}

std::string packet_trace(const std::vector<CodedPacket>& packets) {
  std::string out;
  for (const auto& q : packets) {
    out += std::to_string(q.layer);
    out += ',';
    bool first = true;
    for (int k = 1; k <= 32; ++k)
      if (q.targets & (1u << (k - 1))) {
        if (!first) out += '+';
        out += std::to_string(k);
        first = false;
      }
    out += ',';
    out += std::to_string(q.payload.size());
    out += '\n';
  }
  return out;
}

SymbolicPacket symbolic_packet(const DemandVector& d, std::uint32_t target_mask) {
  if (target_mask == 0)
    throw std::invalid_argument("symbolic_packet: empty target set");
  SymbolicPacket p;
  p.targets = target_mask;
  p.layer = lowest_user(target_mask);
  for (int k = 1; k <= d.users(); ++k) {
    const std::uint32_t bit = 1u << (k - 1);
    if (target_mask & bit) p.terms.push_back({d.demands[k - 1], target_mask & ~bit});
  }
  std::sort(p.terms.begin(), p.terms.end());
  return p;
}

namespace {

// symmetric difference accumulate (XOR of symbolic payloads)
void toggle_terms(std::set<SubfileId>& acc, const std::vector<SubfileId>& terms) {
  for (const auto& term : terms) {
    const auto it = acc.find(term);
    if (it == acc.end())
      acc.insert(term);
    else
      acc.erase(it);
  }
}

}  // namespace

DemandVector representative_demand(const DemandClass& cls, int files) {
  if (cls.distinct() > files)
    throw std::invalid_argument("representative_demand: class needs more files than N");
  DemandVector d;
  d.demands.assign(cls.users(), 0);
  int next_file = 0;
  int last_leader_file = 0;
  const std::uint32_t leaders = cls.leader_mask();
  for (int k = 1; k <= cls.users(); ++k) {
    if (leaders & (1u << (k - 1))) last_leader_file = ++next_file;
    d.demands[k - 1] = last_leader_file;
  }
  return d;
}

MassReport verify_decentralized_masses(const SystemConfig& cfg, const DemandClass& cls) {
  const SystemConfig c = validate_config(cfg);
  if (cls.users() != c.users)
    throw std::invalid_argument("verify_decentralized_masses: class does not match config");
  if (c.users > 16)
    throw std::invalid_argument("verify_decentralized_masses: capped at K <= 16");

  MassReport rep;
  const int users = c.users;
  const double p_cached = c.cache / c.files;
  const double q_missed = 1.0 - p_cached;
  const std::uint32_t leaders = cls.leader_mask();
  const std::uint32_t space = 1u << users;

  // delivered mass per layer: packet for S has the mass of one of its
  // constituent subfiles, (M/N)^{|S|-1} (1-M/N)^{K-|S|+1} R
  rep.layer_mass.assign(users, 0.0);
  for (std::uint32_t s = 1; s < space; ++s) {
    if (!(s & leaders)) continue;
    const int size = std::popcount(s);
    rep.layer_mass[lowest_user(s) - 1] +=
        std::pow(p_cached, size - 1) * std::pow(q_missed, users - size + 1) * c.rate;
  }
  rep.expected = decentralized_rates(cls, c).rates;
  rep.masses_ok = true;
  for (int k = 0; k < users; ++k) {
    const double err = std::abs(rep.layer_mass[k] - rep.expected[k]);
    rep.max_mass_error = std::max(rep.max_mass_error, err);
    if (err > 1e-12 * std::max(1.0, c.rate)) rep.masses_ok = false;
  }
  if (!rep.masses_ok) rep.error = "layer mass mismatch";

  // coverage: every subfile W_{d_k, T} with k not in T must arrive directly
  // or through the recovery identity, at a layer user k decodes
  const DemandVector rep_d = representative_demand(cls, c.files);
  rep.coverage_ok = true;
  for (int k = 1; k <= users && rep.coverage_ok; ++k) {
    const std::uint32_t user_bit = 1u << (k - 1);
    for (std::uint32_t t_mask = 0; t_mask < space && rep.coverage_ok; ++t_mask) {
      if (t_mask & user_bit) continue;
      const std::uint32_t s = t_mask | user_bit;
      if (s & leaders) {
        ++rep.direct_packets;
        continue;
      }
      const std::uint32_t b_mask = s | leaders;
      std::set<SubfileId> acc;
      bool found_leader_subset = false;
      for (std::uint32_t g : distinct_demand_subsets(b_mask, rep_d)) {
        if (g == leaders) {
          found_leader_subset = true;
          continue;
        }
        const std::uint32_t constituent = b_mask & ~g;
        if (!(constituent & leaders)) {
          rep.coverage_ok = false;
          rep.error = "constituent " + std::to_string(constituent) + " not delivered";
          break;
        }
        if (lowest_user(constituent) > k) {
          rep.coverage_ok = false;
          rep.error = "constituent above layer " + std::to_string(k);
          break;
        }
        toggle_terms(acc, symbolic_packet(rep_d, constituent).terms);
      }
      if (!rep.coverage_ok) break;
      if (!found_leader_subset) {
        rep.coverage_ok = false;
        rep.error = "leader set missing from G_B";
        break;
      }
      const SymbolicPacket target = symbolic_packet(rep_d, s);
      const std::set<SubfileId> want(target.terms.begin(), target.terms.end());
      if (acc != want) {
        rep.coverage_ok = false;
        rep.error = "recovered terms differ for S = " + std::to_string(s);
        break;
      }
      ++rep.reconstructions;
    }
  }

  rep.ok = rep.masses_ok && rep.coverage_ok;
  return rep;
}

}  // namespace cachepower
