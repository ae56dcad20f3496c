// Batch front end: sweep a cache-size grid into CSV, or run the exhaustive
// delivery verifier. Exit codes: 0 success, 1 validation error,
// 2 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cachepower/sweep.hpp"
#include "cachepower/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open spec file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int do_sweep(const std::string& spec_path, const std::string& output_override) {
  const cachepower::RunSpec spec = cachepower::parse_spec(read_file(spec_path));
  const std::string csv = cachepower::run_sweep(spec);
  const std::string out = !output_override.empty() ? output_override : spec.output;
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + out);
    file << csv;
  }
  return 0;
}

int do_verify(const std::string& spec_path) {
  const cachepower::RunSpec spec = cachepower::parse_spec(read_file(spec_path));
  const cachepower::VerifySummary summary = cachepower::run_verify(spec);
  std::cout << summary.text;
  return summary.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power bounds for cache-aided Gaussian broadcast delivery"};
  app.set_version_flag("--version", cachepower::kVersion);
  app.require_subcommand(1);

  std::string spec_path;
  std::string output_override;

  CLI::App* sweep = app.add_subcommand("sweep", "compute the cache-size sweep as CSV");
  sweep->add_option("spec", spec_path, "run spec file (key=value)")->required();
  sweep->add_option("-o,--output", output_override,
                    "output CSV path (default: spec's output key, else stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the exhaustive delivery verifier");
  verify->add_option("spec", spec_path, "run spec file (key=value)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return do_sweep(spec_path, output_override);
    if (verify->parsed()) return do_verify(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
