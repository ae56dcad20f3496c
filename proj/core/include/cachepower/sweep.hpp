#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cachepower/bounds.hpp"
#include "cachepower/model.hpp"
#include "cachepower/power.hpp"

namespace cachepower {

/// Ceilings for the exhaustive verification suites. Hard limits keep the
/// blow-up of N^K demand vectors and 2^(K-1) classes at desk scale.
struct VerifyCaps {
  int users = 6;  ///< max K (hard limit 6)
  int files = 6;  ///< max N (hard limit 6)
  int t = -1;     ///< max simulated t; -1 means up to K
};

/// Parsed run configuration. `base.cache` is unused; M comes from m_grid.
struct RunSpec {
  SystemConfig base;
  std::vector<double> m_grid;
  bool centralized = true;
  bool decentralized = true;
  bool compute_lb = true;
  bool verify = false;
  VerifyCaps caps;
  std::string output;  ///< empty = stdout
  std::uint64_t seed = 42;
};

/// Parse the key=value spec format (one key per line, '#' comments, lists
/// comma-separated, grids start:step:end). Errors carry the line number.
RunSpec parse_spec(const std::string& text);

/// One computed grid point; absent values render as NA.
struct SweepRow {
  double cache = 0.0;
  std::optional<double> avg_ub_c, peak_ub_c, avg_ub_d, peak_ub_d;
  std::optional<double> avg_lb, peak_lb;
  std::optional<double> gap_avg_c, gap_avg_d, gap_peak_c, gap_peak_d;
};

/// Grid points in m_grid order (computed concurrently, assembled in order).
std::vector<SweepRow> compute_sweep(const RunSpec& spec);

/// CSV with the fixed 11-column schema, 9 significant digits, NA for
/// undefined cells. Byte-identical across runs of the same spec. A self-audit
/// re-checks the bound ordering and monotonicity invariants on every row
/// before anything is emitted and throws std::runtime_error naming the
/// offending M on a violation.
std::string run_sweep(const RunSpec& spec);

struct VerifySummary {
  bool ok = false;
  long long vectors_tested = 0;
  long long t_values = 0;
  long long packets_generated = 0;
  long long reconstructions = 0;
  long long mass_classes = 0;
  long long mass_points = 0;
  long long failures = 0;
  std::string text;  ///< printable per-suite counts
};

/// Exhaustive bit-exact delivery over every demand vector and integer t plus
/// the decentralized mass checks over every class, within the caps. Refuses
/// (std::runtime_error naming the limit) when a cap exceeds its hard limit or
/// the config exceeds a cap.
VerifySummary run_verify(const RunSpec& spec);

}  // namespace cachepower
