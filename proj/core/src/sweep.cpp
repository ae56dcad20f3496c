#include "cachepower/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "cachepower/combinatorics.hpp"
#include "cachepower/delivery.hpp"
#include "cachepower/parallel.hpp"

namespace cachepower {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) fail_line(line, "malformed number for key " + key);
    return x;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail_line(line, "malformed number for key " + key);
  }
}

long long parse_int(const std::string& v, int line, const std::string& key) {
  const double x = parse_number(v, line, key);
  const long long i = static_cast<long long>(std::llround(x));
  if (x != static_cast<double>(i)) fail_line(line, "expected integer for key " + key);
  return i;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail_line(line, "expected boolean for key " + key);
}

std::string fmt9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt9(*v) : "NA"; }

}  // namespace

RunSpec parse_spec(const std::string& text) {
  RunSpec spec;
  bool has_users = false, has_files = false, has_gains = false, has_grid = false;
  bool gains_inverted = false;
  std::vector<double> gains_raw;
  int gains_line = 0, grid_line = 0;
  std::string grid_text;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail_line(line_no, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(line_no, "empty key");
    if (val.empty()) fail_line(line_no, "empty value for key " + key);

    if (key == "format") {
      if (val != "1") fail_line(line_no, "unsupported format version " + val);
    } else if (key == "K") {
      spec.base.users = static_cast<int>(parse_int(val, line_no, key));
      has_users = true;
    } else if (key == "N") {
      spec.base.files = static_cast<int>(parse_int(val, line_no, key));
      has_files = true;
    } else if (key == "R") {
      spec.base.rate = parse_number(val, line_no, key);
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int(val, line_no, key));
    } else if (key == "gains" || key == "gains_inv") {
      gains_raw.clear();
      for (const std::string& tok : split(val, ','))
        gains_raw.push_back(parse_number(tok, line_no, key));
      gains_inverted = key == "gains_inv";
      gains_line = line_no;
      has_gains = true;
    } else if (key == "m_grid") {
      grid_text = val;
      grid_line = line_no;
      has_grid = true;
    } else if (key == "schemes") {
      spec.centralized = spec.decentralized = false;
      for (const std::string& tok : split(val, ',')) {
        if (tok == "centralized")
          spec.centralized = true;
        else if (tok == "decentralized")
          spec.decentralized = true;
        else if (tok == "both")
          spec.centralized = spec.decentralized = true;
        else
          fail_line(line_no, "unknown scheme '" + tok + "'");
      }
    } else if (key == "compute_lb") {
      spec.compute_lb = parse_bool(val, line_no, key);
    } else if (key == "verify") {
      spec.verify = parse_bool(val, line_no, key);
    } else if (key == "verify_k_cap") {
      spec.caps.users = static_cast<int>(parse_int(val, line_no, key));
    } else if (key == "verify_n_cap") {
      spec.caps.files = static_cast<int>(parse_int(val, line_no, key));
    } else if (key == "verify_t_cap") {
      spec.caps.t = static_cast<int>(parse_int(val, line_no, key));
    } else if (key == "output") {
      spec.output = val;
    } else {
      fail_line(line_no, "unknown key '" + key + "'");
    }
  }

  if (!has_users) throw std::runtime_error("missing required key K");
  if (!has_files) throw std::runtime_error("missing required key N");
  if (!has_gains) throw std::runtime_error("missing required key gains (or gains_inv)");
  if (!has_grid) throw std::runtime_error("missing required key m_grid");

  spec.base.gains.clear();
  for (double g : gains_raw) {
    if (!(g > 0.0)) fail_line(gains_line, "gains entries must be positive");
    spec.base.gains.push_back(gains_inverted ? 1.0 / g : g);
  }

  if (grid_text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(grid_text, ':');
    if (parts.size() != 3) fail_line(grid_line, "m_grid range must be start:step:end");
    const double start = parse_number(parts[0], grid_line, "m_grid");
    const double step = parse_number(parts[1], grid_line, "m_grid");
    const double end = parse_number(parts[2], grid_line, "m_grid");
    if (!(step > 0.0)) fail_line(grid_line, "m_grid step must be positive");
    if (end < start) fail_line(grid_line, "m_grid end precedes start");
    const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) {
      double v = start + i * step;
      if (std::abs(v - end) < 1e-9) v = end;  // absorb accumulated step noise
      spec.m_grid.push_back(v);
    }
  } else {
    for (const std::string& tok : split(grid_text, ','))
      spec.m_grid.push_back(parse_number(tok, grid_line, "m_grid"));
  }
  if (spec.m_grid.empty()) fail_line(grid_line, "m_grid is empty");
  for (std::size_t i = 0; i < spec.m_grid.size(); ++i) {
    if (spec.m_grid[i] < 0.0) fail_line(grid_line, "M negative");
    if (spec.m_grid[i] > spec.base.files) fail_line(grid_line, "M exceeds N");
    if (i > 0 && spec.m_grid[i] <= spec.m_grid[i - 1])
      fail_line(grid_line, "m_grid not strictly increasing");
  }

  spec.base.cache = 0.0;
  (void)validate_config(spec.base);  // surfaces gains/K/N/R problems up front
  return spec;
}

std::vector<SweepRow> compute_sweep(const RunSpec& spec) {
  SystemConfig base = spec.base;
  base.cache = 0.0;
  (void)validate_config(base);
  const PeakMethod method =
      spec.base.users <= 20 ? PeakMethod::enumerate : PeakMethod::closed_form;

  std::vector<SweepRow> rows(spec.m_grid.size());
  parallel_for_index(rows.size(), [&](std::size_t i) {
    SystemConfig cfg = spec.base;
    cfg.cache = spec.m_grid[i];
    SweepRow row;
    row.cache = cfg.cache;
    try {
      if (spec.centralized) {
        row.avg_ub_c = average_power(cfg, Scheme::centralized);
        row.peak_ub_c = peak_power(cfg, Scheme::centralized, method);
      }
      if (spec.decentralized) {
        row.avg_ub_d = average_power(cfg, Scheme::decentralized);
        row.peak_ub_d = peak_power(cfg, Scheme::decentralized, method);
      }
      if (spec.compute_lb) {
        row.avg_lb = lower_bound_average(cfg);
        row.peak_lb = lower_bound_peak(cfg);
        const auto gap = [](const std::optional<double>& ub,
                            double lb) -> std::optional<double> {
          if (!ub || lb <= 0.0) return std::nullopt;
          return *ub / lb;
        };
        row.gap_avg_c = gap(row.avg_ub_c, *row.avg_lb);
        row.gap_avg_d = gap(row.avg_ub_d, *row.avg_lb);
        row.gap_peak_c = gap(row.peak_ub_c, *row.peak_lb);
        row.gap_peak_d = gap(row.peak_ub_d, *row.peak_lb);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("at M = " + fmt9(cfg.cache) + ": " + e.what());
    }
    rows[i] = row;
  });
  return rows;
}

namespace {

// a <= b up to the relative noise floor used throughout
bool leq(double a, double b) { return a <= b * (1.0 + 1e-9) + 1e-12; }

void audit_pair(const std::optional<double>& lo, const std::optional<double>& hi,
                double cache, const char* what) {
  if (lo && hi && !leq(*lo, *hi))
    throw std::runtime_error("self-audit failed at M = " + fmt9(cache) + ": " + what);
}

void audit_rows(const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows) {
    audit_pair(r.avg_lb, r.avg_ub_c, r.cache, "avg_lb > avg_ub_c");
    audit_pair(r.avg_lb, r.avg_ub_d, r.cache, "avg_lb > avg_ub_d");
    audit_pair(r.avg_ub_c, r.avg_ub_d, r.cache, "avg_ub_c > avg_ub_d");
    audit_pair(r.peak_lb, r.peak_ub_c, r.cache, "peak_lb > peak_ub_c");
    audit_pair(r.peak_lb, r.peak_ub_d, r.cache, "peak_lb > peak_ub_d");
    audit_pair(r.peak_ub_c, r.peak_ub_d, r.cache, "peak_ub_c > peak_ub_d");
    audit_pair(r.avg_ub_c, r.peak_ub_c, r.cache, "avg_ub_c > peak_ub_c");
    audit_pair(r.avg_ub_d, r.peak_ub_d, r.cache, "avg_ub_d > peak_ub_d");
    audit_pair(r.avg_lb, r.peak_lb, r.cache, "avg_lb > peak_lb");
  }
  const auto series = {&SweepRow::avg_ub_c, &SweepRow::peak_ub_c, &SweepRow::avg_ub_d,
                       &SweepRow::peak_ub_d, &SweepRow::avg_lb,   &SweepRow::peak_lb};
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (auto field : series)
      audit_pair(rows[i].*field, rows[i - 1].*field, rows[i].cache,
                 "series increases with M");
}

}  // namespace

std::string run_sweep(const RunSpec& spec) {
  const std::vector<SweepRow> rows = compute_sweep(spec);
  audit_rows(rows);

  std::string csv =
      "M,avg_ub_c,peak_ub_c,avg_ub_d,peak_ub_d,avg_lb,peak_lb,"
      "gap_avg_c,gap_avg_d,gap_peak_c,gap_peak_d\n";
  for (const SweepRow& r : rows) {
    csv += fmt9(r.cache);
    for (const auto& v : {r.avg_ub_c, r.peak_ub_c, r.avg_ub_d, r.peak_ub_d, r.avg_lb,
                          r.peak_lb, r.gap_avg_c, r.gap_avg_d, r.gap_peak_c, r.gap_peak_d}) {
      csv += ',';
      csv += cell(v);
    }
    csv += '\n';
  }
  return csv;
}

namespace {

DemandVector demand_at(long long index, int users, int files) {
  DemandVector d;
  d.demands.assign(users, 1);
  for (int k = 0; k < users; ++k) {
    d.demands[k] = 1 + static_cast<int>(index % files);
    index /= files;
  }
  return d;
}

}  // namespace

VerifySummary run_verify(const RunSpec& spec) {
  constexpr int kHardUsers = 6;
  constexpr int kHardFiles = 6;
  if (spec.caps.users > kHardUsers)
    throw std::runtime_error("verify cap K=" + std::to_string(spec.caps.users) +
                             " exceeds hard limit " + std::to_string(kHardUsers));
  if (spec.caps.files > kHardFiles)
    throw std::runtime_error("verify cap N=" + std::to_string(spec.caps.files) +
                             " exceeds hard limit " + std::to_string(kHardFiles));
  SystemConfig base = spec.base;
  base.cache = 0.0;
  (void)validate_config(base);
  if (base.users > spec.caps.users)
    throw std::runtime_error("K=" + std::to_string(base.users) + " exceeds verify cap " +
                             std::to_string(spec.caps.users));
  if (base.files > spec.caps.files)
    throw std::runtime_error("N=" + std::to_string(base.files) + " exceeds verify cap " +
                             std::to_string(spec.caps.files));

  const int t_max = spec.caps.t < 0 ? base.users : std::min(spec.caps.t, base.users);
  long long vectors = 1;
  for (int k = 0; k < base.users; ++k) vectors *= base.files;

  VerifySummary sum;
  sum.t_values = t_max + 1;
  sum.vectors_tested = vectors;

  std::atomic<long long> packets{0}, reconstructions{0}, delivery_failures{0};
  for (int t = 0; t <= t_max; ++t) {
    SystemConfig cfg = base;
    cfg.cache = static_cast<double>(t) * base.files / base.users;
    parallel_for_index(static_cast<std::size_t>(vectors), [&](std::size_t i) {
      const DemandVector d = demand_at(static_cast<long long>(i), base.users, base.files);
      const std::uint64_t run_seed =
          spec.seed + static_cast<std::uint64_t>(t) * vectors + i;
      const DeliveryReport rep = verify_delivery(cfg, d, t, run_seed);
      packets += rep.total_packets;
      reconstructions += rep.total_reconstructions;
      if (!rep.all_ok) ++delivery_failures;
    });
  }
  sum.packets_generated = packets;
  sum.reconstructions = reconstructions;

  const std::vector<ClassWeight> classes = enumerate_classes(base.users, base.files);
  const double n = base.files;
  const double mass_grid[] = {0.0, n / 4, n / 2, 3 * n / 4, n};
  sum.mass_classes = static_cast<long long>(classes.size());
  sum.mass_points = 5;
  long long mass_failures = 0;
  for (const ClassWeight& w : classes)
    for (double m : mass_grid) {
      SystemConfig cfg = base;
      cfg.cache = m;
      if (!verify_decentralized_masses(cfg, w.cls).ok) ++mass_failures;
    }

  sum.failures = delivery_failures + mass_failures;
  sum.ok = sum.failures == 0;
  sum.text = "delivery: " + std::to_string(sum.vectors_tested) + "x" +
             std::to_string(sum.t_values) + " demand runs, " +
             std::to_string(delivery_failures.load()) + " failures\n" +
             "packets generated: " + std::to_string(sum.packets_generated) +
             ", reconstructions: " + std::to_string(sum.reconstructions) + "\n" +
             "mass model: " + std::to_string(sum.mass_classes) + " classes x " +
             std::to_string(sum.mass_points) + " cache points, " +
             std::to_string(mass_failures) + " failures\n";
  return sum;
}

}  // namespace cachepower
